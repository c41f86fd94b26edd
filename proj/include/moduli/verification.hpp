#pragma once

// Cross-check suites over parameter grids, with a stable JSON report:
// {suite, grid, results[], summary}. Individual point failures are recorded
// in the report rather than thrown.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "moduli/arith.hpp"

namespace moduli {

enum class Suite { corollary13, kstar_pin, niebur_coeffs, algebraicity, inner_products, golden };

std::string to_string(Suite s);
/// Throws InvalidArgument for unknown names.
Suite parse_suite(const std::string& name);
const std::vector<Suite>& all_suites();

struct GridPoint {
  i64 d;
  i64 D;
  i64 N;
  i64 n;
};

struct VerificationConfig {
  int prec = 256;
  /// Truncation of the sinh series; the trend check reruns at 2 * a_max.
  i64 a_max = 100000;
  /// Truncation for c_N(n, m), m != 0; the improvement check reruns at 4 * c_max.
  i64 c_max = 10000;
  /// Truncation for c_N(n, 0).
  i64 c_max_constant = 100000;
  std::vector<std::pair<i64, i64>> splits = {{-3, 1}, {-4, 1}, {-7, 1}, {-8, 1},
                                             {-11, 1}, {-4, 5}, {-3, 13}, {-7, 17}};
  std::vector<i64> levels = {1, 2, 3};
  std::vector<i64> ns = {1, 2, 3};
  /// Levels for the algebraicity sweep.
  std::vector<i64> algebraicity_levels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  /// Omit timings so reports are byte-identical across runs.
  bool deterministic = false;
  /// Worker threads; 0 reads MODULI_TRACES_THREADS (default 1).
  unsigned threads = 0;
};

/// Reads overrides from a grid file; unknown keys are rejected.
VerificationConfig config_from_json(const nlohmann::json& j, VerificationConfig base = {});
nlohmann::json to_json(const VerificationConfig& c);

/// Admissible (d, D, N, n) from the configured splits, levels and ns, in grid order.
std::vector<GridPoint> grid_points(const VerificationConfig& c, const std::vector<i64>& levels);

struct Report {
  std::string suite;
  nlohmann::json grid;
  nlohmann::json results = nlohmann::json::array();
  nlohmann::json summary = nlohmann::json::object();

  long long failures() const;
  bool ok() const { return failures() == 0; }
  nlohmann::json to_json() const;
  /// Validates the schema (any suite name is accepted, so CLI command
  /// outputs read back too); throws InvalidArgument on malformed input.
  static Report from_json(const nlohmann::json& j);
};

Report run_suite(Suite s, const VerificationConfig& c = {});

/// Worker count from MODULI_TRACES_THREADS, default 1.
unsigned worker_threads(unsigned requested = 0);

/// Pinned regression values (computed once at 512 bits, checked at two precisions).
namespace golden {
inline constexpr const char* kInnerProductMinus4 = "0.4578093597220434034678952";
inline constexpr const char* kInnerProductMinus3 = "0.2189045022702967244481331";
inline constexpr const char* kInnerProductMinus7 = "1.768433329004205423819943";
}  // namespace golden

}  // namespace moduli
