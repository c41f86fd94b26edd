#pragma once

// Twisted traces of singular moduli, twisted Hurwitz class numbers, the
// exponential sums S_{d,D}(a, n) and the sinh series for the traces, and the
// Fourier coefficients of f*_{d,D,N} and f_d.

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moduli/arith.hpp"
#include "moduli/bigfloat.hpp"
#include "moduli/quadratic_forms.hpp"

namespace moduli {

/// S_{d,D}(a, n) = sum over b mod 2a, b^2 = dD mod 4a, of chi_D([a, b, c]) e(nb / 2a).
BigReal exp_sum(const DiscriminantSplit& split, i64 a, i64 n, int prec = kDefaultPrecision);

/// The same sum through half-integral weight Kloosterman sums:
/// (1 - i)/4 sum_{r | (a, n)} (D/r) sqrt(r/a) (1 + (4/(a/r))) K*(d, n^2 D / r^2, 4a/r).
BigReal exp_sum_via_kstar(const DiscriminantSplit& split, i64 a, i64 n, int prec = kDefaultPrecision);

enum class TraceMethod { cm_evaluation, sinh_series };
std::string to_string(TraceMethod m);

struct TraceReport {
  BigReal value;
  TraceMethod method = TraceMethod::cm_evaluation;
  /// Rigorous bound for cm_evaluation; block spread (heuristic) for sinh_series.
  double err = 0;
  int precision = kDefaultPrecision;
  // cm_evaluation
  std::size_t classes = 0;
  double imaginary_part = 0;
  // sinh_series
  i64 a_max = 0;
  int blocks = 0;
  long double partial_sum = 0;  // plain partial sum minus the head, for diagnostics
};

/// A function evaluated at a class: receives the representative, its CM point and the precision.
using ClassFunction = std::function<BigComplex(const HeegnerClass&, int)>;

/// sum over classes of chi_D(Q) / w_Q g(z_Q).
TraceReport twisted_trace_cm(const DiscriminantSplit& split, const ClassFunction& g, int prec = kDefaultPrecision);

/// tr_{d,D,N}(j_{N,n}) by CM evaluation (genus zero N).
TraceReport twisted_trace_cm(const DiscriminantSplit& split, i64 n, int prec = kDefaultPrecision);

/// H(d, D, N) = sum chi_D(Q) / w_Q, exact.
mpq_class class_number(const DiscriminantSplit& split);

struct SeriesOptions {
  i64 a_max = 100000;
  int blocks = 4;
  int prec = kDefaultPrecision;
  /// Terms with a <= head_a (or with a sinh argument above 1) are summed in BigReal.
  i64 head_a = 1000;
};

/// 2 sum_{N | a, a <= a_max} S(a, n) sinh(pi n sqrt|dD| / a), reported as
/// head + mean of `blocks` sub-block averages of the running partial sums
/// over (a_max/2, a_max]; err = spread of those averages.
TraceReport twisted_trace_series(const DiscriminantSplit& split, i64 n, const SeriesOptions& opts = {});

/// One pass for several n and several truncations: result[i][j] is
/// n = ns[i] at a_max = checkpoints[j]. Summation is strictly ascending in a.
std::vector<std::vector<TraceReport>> twisted_trace_series_multi(const DiscriminantSplit& split,
                                                                 const std::vector<i64>& ns,
                                                                 const std::vector<i64>& checkpoints,
                                                                 const SeriesOptions& opts = {});

/// Fourier coefficient of f*_{d,D,N}. For n >= 1 the holomorphic coefficient
/// -tr_{d,D,N}(j_{N,n}); for n = 0 the 1/v coefficient -3H/(pi [SL2:Gamma0(N)])
/// and holomorphic constant 0.
struct FstarCoefficient {
  i64 n = 0;
  bool nonholomorphic = false;
  BigReal value;                    // n >= 1
  BigReal inv_v_coefficient;        // n = 0
  mpq_class constant = 0;           // n = 0
  double err = 0;
  std::optional<TraceReport> series;  // second route when requested
};

enum class FourierRoute { cm, series, both };
FstarCoefficient fstar_coefficient(const DiscriminantSplit& split, i64 n, FourierRoute route = FourierRoute::cm,
                                   const SeriesOptions& series_opts = {}, int prec = kDefaultPrecision);

/// Coefficient of q^n in f_d = f*_{d,1,1} - H(d,1,1) E2*: -H(d,1,1) for n = 0,
/// -tr_{d,1,1}(j_{1,n}) + 24 H(d,1,1) sigma(n) for n >= 1.
struct FdCoefficient {
  i64 n = 0;
  BigReal value;
  std::optional<mpq_class> exact;
  double err = 0;
};
FdCoefficient fd_coefficient(i64 d, i64 n, int prec = kDefaultPrecision);

}  // namespace moduli
