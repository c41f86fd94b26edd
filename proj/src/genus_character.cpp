#include "moduli/genus_character.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "moduli/errors.hpp"

namespace moduli {

namespace {

constexpr i64 kShellCap = 1 << 12;

i64 gcd_abs(i64 x, i64 y) { return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y); }

// Visits Q(x, y) for max(|x|, |y|) in (inner, outer], in a fixed order.
template <class F>
bool visit_shell(const QuadraticForm& q, i64 inner, i64 outer, F&& f) {
  for (i64 x = -outer; x <= outer; ++x) {
    for (i64 y = -outer; y <= outer; ++y) {
      const i64 ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
      if (std::max(ax, ay) <= inner) continue;
      if (f(q(x, y))) return true;
    }
  }
  return false;
}

std::optional<i64> coprime_value(const QuadraticForm& q, i64 D, i64 cap) {
  auto good = [D](i64 n) { return n != 0 && gcd_abs(n, D) == 1; };
  if (good(q.a)) return q.a;
  if (good(q.c)) return q.c;
  i64 inner = 0;
  std::optional<i64> hit;
  for (i64 s = 1; s <= cap; s *= 2) {
    visit_shell(q, inner, s, [&](i64 n) {
      if (good(n)) hit = n;
      return hit.has_value();
    });
    if (hit) return hit;
    inner = s;
  }
  return std::nullopt;
}

}  // namespace

int chi(const QuadraticForm& q, const DiscriminantSplit& split) {
  if (q.discriminant() != split.discriminant()) throw InvalidArgument("chi: discriminant of form differs from dD");
  if (q.a % split.N != 0) throw InvalidArgument("chi: leading coefficient must be divisible by N");
  const i64 D = split.D;
  if (D == 1) return 1;
  const i64 a0 = q.a / split.N;
  if (gcd_abs(gcd_abs(gcd_abs(a0, q.b), q.c), D) > 1) return 0;

  std::vector<i64> n1s = divisors(split.N);
  std::reverse(n1s.begin(), n1s.end());  // N1 = N first: the form itself
  for (i64 cap = 1; cap <= kShellCap; cap *= 4) {
    for (i64 n1 : n1s) {
      const QuadraticForm f{a0 * n1, q.b, q.c * (split.N / n1)};
      if (auto n = coprime_value(f, D, cap)) return kronecker(D, *n);
    }
  }
  throw SearchExhausted("chi: no represented value coprime to D found");
}

std::vector<i64> represented_coprime_values(const QuadraticForm& q, i64 D, std::size_t count, i64 max_shell) {
  std::set<i64> seen;
  std::vector<i64> out;
  for (i64 s = 1; s <= max_shell && out.size() < count; ++s) {
    visit_shell(q, s - 1, s, [&](i64 n) {
      if (n > 0 && gcd_abs(n, D) == 1 && seen.insert(n).second) out.push_back(n);
      return out.size() >= count;
    });
  }
  return out;
}

}  // namespace moduli
