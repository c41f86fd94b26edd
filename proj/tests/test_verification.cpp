#include <cstdlib>

#include "doctest.h"
#include "moduli/errors.hpp"
#include "moduli/verification.hpp"

using namespace moduli;
using nlohmann::json;

TEST_CASE("suite names round trip") {
  for (Suite s : all_suites()) CHECK(parse_suite(to_string(s)) == s);
  CHECK_THROWS_AS(parse_suite("nope"), InvalidArgument);
}

TEST_CASE("default grid has at least 12 admissible points in fixed order") {
  const VerificationConfig c;
  const auto pts = grid_points(c, c.levels);
  CHECK(pts.size() >= 12);
  for (const auto& p : pts) CHECK(DiscriminantSplit::admissible(p.d, p.D, p.N));
  CHECK(pts.front().d == -3);
  CHECK(pts.front().N == 1);
  CHECK(pts.front().n == 1);
}

TEST_CASE("grid configuration from JSON") {
  const auto c = config_from_json(json{{"a_max", 5000}, {"splits", json::array({json::array({-4, 5})})}, {"ns", {1}}});
  CHECK(c.a_max == 5000);
  REQUIRE(c.splits.size() == 1);
  CHECK(c.splits[0].second == 5);
  CHECK_THROWS_AS(config_from_json(json{{"amax", 5}}), InvalidArgument);
  CHECK_THROWS_AS(config_from_json(json{{"prec", -1}}), InvalidArgument);
  CHECK_THROWS_AS(config_from_json(json::array()), InvalidArgument);
}

TEST_CASE("golden suite passes, is deterministic and round-trips through the reader") {
  VerificationConfig c;
  c.deterministic = true;
  const Report a = run_suite(Suite::golden, c);
  CHECK(a.ok());
  c.threads = 3;
  const Report b = run_suite(Suite::golden, c);
  CHECK(a.to_json().dump() == b.to_json().dump());
  const Report back = Report::from_json(json::parse(a.to_json().dump()));
  CHECK(back.to_json() == a.to_json());
  CHECK(back.failures() == 0);
  CHECK_THROWS_AS(Report::from_json(json{{"suite", "golden"}}), InvalidArgument);
  CHECK_THROWS_AS(Report::from_json(json{{"suite", "golden"}, {"grid", {}}, {"results", 1}, {"summary", {{"failures", 0}}}}),
                  InvalidArgument);
}

TEST_CASE("kstar and inner product suites pass") {
  VerificationConfig c;
  c.deterministic = true;
  CHECK(run_suite(Suite::kstar_pin, c).ok());
  CHECK(run_suite(Suite::inner_products, c).ok());
}

TEST_CASE("corollary13 on a small grid reports every point") {
  VerificationConfig c;
  c.deterministic = true;
  c.a_max = 5000;
  c.splits = {{-3, 1}, {-4, 5}};
  c.levels = {1};
  c.ns = {1};
  const Report r = run_suite(Suite::corollary13, c);
  CHECK(r.results.size() == 2);
  for (const auto& row : r.results) {
    CHECK(row.contains("cm"));
    CHECK(row.contains("series"));
    CHECK(row["pass"].get<bool>());
  }
  CHECK(r.summary.contains("trend"));
}

TEST_CASE("worker threads from the environment") {
  CHECK(worker_threads(4) == 4);
  setenv("MODULI_TRACES_THREADS", "2", 1);
  CHECK(worker_threads() == 2);
  setenv("MODULI_TRACES_THREADS", "junk", 1);
  CHECK(worker_threads() == 1);
  unsetenv("MODULI_TRACES_THREADS");
}
