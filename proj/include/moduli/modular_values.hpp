#pragma once

// Values of modular functions at points of the upper half-plane: Dedekind
// eta via SL2(Z) reduction, Hauptmoduln as eta quotients, the weight 0
// Niebur-Poincare series j_{N,n} for genus zero N, and J with its
// derivatives from cached q-series.

#include <memory>

#include "moduli/bigfloat.hpp"
#include "moduli/qseries.hpp"

namespace moduli {

/// Translates and inverts z into |Re z| <= 1/2, |z| >= 1 (decisions in double precision).
BigComplex reduce_to_fundamental_domain(const BigComplex& z);

/// Dedekind eta(z) = e(z/24) prod (1 - e(nz)).
BigComplex dedekind_eta(const BigComplex& z, int prec = kDefaultPrecision);

/// Hauptmodul J_N(z) (constant term 0 normalization); N = 1 gives J.
BigComplex hauptmodul_value(i64 N, const BigComplex& z, int prec = kDefaultPrecision);

/// J(z) through the q-expansion at the SL2(Z)-reduced point.
BigComplex J_value(const BigComplex& z, int prec = kDefaultPrecision);

/// d^k/dz^k J at z itself (no reduction; the result is not invariant).
BigComplex J_derivative_value(const BigComplex& z, int k, int prec = kDefaultPrecision);

/// j_{N,n}(z) for genus zero N. N = 1 evaluates the q-expansion at the
/// reduced point; N > 1 evaluates the Faber polynomial at the eta-quotient
/// value of the Hauptmodul.
BigComplex niebur_value(i64 N, i64 n, const BigComplex& z, int prec = kDefaultPrecision);

/// Evaluates a series produced by `make(order)`, doubling the order (from a
/// process-wide cache keyed by `key`) until the tail bound is met.
SeriesValue evaluate_cached(const std::string& key, QSeries (*make)(i64), const BigComplex& z, int prec,
                            int derivative_order = 0);

}  // namespace moduli
