#pragma once

#include <vector>

#include "moduli/arith.hpp"
#include "moduli/quadratic_forms.hpp"

namespace moduli {

/// Genus character chi_D on forms of discriminant dD with N | a.
///
/// Zero when gcd(a/N, b, c, D) > 1. Otherwise (D/n) for an integer n coprime
/// to D represented by one of the forms [(a/N) N1, b, c N2], N1 N2 = N.
/// The form itself (N1 = N) is tried first, starting with n = a, then n = c,
/// then square shells |x|, |y| <= S with S doubling.
int chi(const QuadraticForm& q, const DiscriminantSplit& split);

/// Up to `count` distinct positive values Q(x, y) coprime to D, in shell order.
std::vector<i64> represented_coprime_values(const QuadraticForm& q, i64 D, std::size_t count, i64 max_shell = 64);

}  // namespace moduli
