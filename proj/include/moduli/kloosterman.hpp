#pragma once

// Kloosterman sums (classical and the half-integral weight twist), first
// order Bessel functions, and the Fourier coefficients c_N(n, m) of the
// weight 0 Niebur-Poincare series.

#include <gmpxx.h>

#include <vector>

#include "moduli/arith.hpp"
#include "moduli/bigfloat.hpp"

namespace moduli {

/// K(m, n; c) = sum over a, d mod c with ad = 1 of e((m d + n a) / c), summed
/// directly at the given precision.
BigReal kloosterman(i64 m, i64 n, i64 c, int prec = kDefaultPrecision);

/// K(m, n; c) in long double via twisted multiplicativity over the prime
/// power factors of c. Intended for the long series sums.
long double kloosterman_fast(i64 m, i64 n, i64 c);
long double kloosterman_fast(i64 m, i64 n, i64 c, const std::vector<std::pair<i64, int>>& factors);

/// K*(m, n; c) = sum_{d mod c, gcd(d, c) = 1} (c/d) eps_d^-3 e((n a + m d) / c),
/// a d = 1 mod c, with eps_d = 1 for d = 1 mod 4 and i for d = 3 mod 4.
/// Requires 4 | c.
BigComplex half_integral_kloosterman(i64 m, i64 n, i64 c, int prec = kDefaultPrecision);

/// I_1 and J_1 for x >= 0: power series for x <= 20, Hankel asymptotics with
/// a remainder bound beyond.
BigReal bessel_I1(const BigReal& x);
BigReal bessel_J1(const BigReal& x);

/// Exact c_N(n, 0) = 24 n sum_{d | n} mu(M) / (d M^2 prod_{p | M} (1 - p^-2)), M = N / gcd(N, d).
mpq_class niebur_constant(i64 N, i64 n);

struct NieburCoefficient {
  i64 N = 1;
  i64 n = 1;
  i64 m = 0;
  i64 c_max = 0;
  /// Reported value: the plain partial sum for m = 0, the sub-block Cesaro
  /// mean over the upper half of the range for m != 0.
  long double value = 0;
  long double partial_sum = 0;
  /// Heuristic: sum of |terms| over (c_max/2, c_max] for m = 0, spread of
  /// the sub-block averages for m != 0.
  long double tail_indicator = 0;
};

/// Truncated series for c_N(n, m) over c <= c_max, N | c.
NieburCoefficient niebur_coefficient(i64 N, i64 n, i64 m, i64 c_max, int blocks = 4);

/// Several (N, n, m) at one truncation, sharing the Kloosterman work.
struct NieburRequest {
  i64 N;
  i64 n;
  i64 m;
};
std::vector<NieburCoefficient> niebur_coefficients(const std::vector<NieburRequest>& requests, i64 c_max,
                                                   int blocks = 4);

}  // namespace moduli
