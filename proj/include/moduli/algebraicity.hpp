#pragma once

// Recognition of numerical values as algebraic integers (p + q sqrt D) / 2
// of a real quadratic field, or as rational integers.

#include <gmpxx.h>

#include <optional>

#include "moduli/arith.hpp"
#include "moduli/bigfloat.hpp"

namespace moduli {

struct Recognition {
  mpz_class p;
  mpz_class q;
  /// |2x - p - q sqrt D| at the working precision.
  double residual = 0;
};

/// Finds (p, q) with p = qD (mod 2) and |2x - q sqrt D - p| < tol.
///
/// Without a conjugate, q runs over 0, +-1, +-2, ... up to q_cap and the
/// smallest |q| is returned; if q and -q both fit the call throws
/// AmbiguousRecognition. With the value of the Galois conjugate supplied,
/// p and q are read off from x + x' and (x - x') / sqrt D directly.
/// Requires D > 1 fundamental and x.error() <= tol / 4 (PrecisionLoss otherwise).
std::optional<Recognition> recognize(const BigReal& x, i64 D, double tol = 1e-8, i64 q_cap = 1000000,
                                     const BigReal* conjugate = nullptr);

/// Nearest integer to x if within tol. Requires x.error() <= tol / 4.
std::optional<mpz_class> recognize_rational_integer(const BigReal& x, double tol = 1e-8);

}  // namespace moduli
