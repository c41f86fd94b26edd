#include <numeric>
#include <random>

#include "doctest.h"
#include "moduli/genus_character.hpp"
#include "moduli/traces.hpp"

using namespace moduli;

namespace {

UnimodularMatrix random_gamma0(std::mt19937_64& rng, i64 N) {
  std::uniform_int_distribution<i64> u(-5, 5);
  for (;;) {
    const i64 g = N * u(rng), d = u(rng);
    if (g == 0 || std::gcd(g, d) != 1) continue;
    for (i64 a = -40; a <= 40; ++a)
      if ((a * d - 1) % g == 0) return {a, (a * d - 1) / g, g, d};
  }
}

// chi_D through a brute-force search for any represented prime coprime to D.
int chi_brute(const QuadraticForm& q, i64 D) {
  if (std::gcd(std::gcd(q.a, q.b), std::gcd(q.c, D)) > 1) return 0;
  for (i64 x = -30; x <= 30; ++x)
    for (i64 y = -30; y <= 30; ++y) {
      const i64 v = q(x, y);
      if (v <= 1 || std::gcd(v, D) != 1) continue;
      bool prime = true;
      for (i64 k = 2; k * k <= v; ++k)
        if (v % k == 0) prime = false;
      if (prime) return kronecker(D, v);
    }
  return 2;  // not found
}

}  // namespace

TEST_CASE("chi is trivial for D = 1") {
  const auto split = DiscriminantSplit::make(-7, 1, 2);
  for (const auto& c : enumerate_class_forms(-7, 2)) CHECK(chi(c.rep, split) == 1);
}

TEST_CASE("chi on the classes of discriminant -20") {
  const auto split = DiscriminantSplit::make(-4, 5, 1);
  CHECK(chi({1, 0, 5}, split) == 1);
  CHECK(chi({2, 2, 3}, split) == -1);
  CHECK(class_number(split) == 0);
}

TEST_CASE("chi agrees with a prime-value oracle at level 1") {
  for (auto [d, D] : std::vector<std::pair<i64, i64>>{{-4, 5}, {-3, 13}, {-7, 17}, {-3, 5}, {-4, 13}, {-8, 5}}) {
    const auto split = DiscriminantSplit::make(d, D, 1);
    for (const auto& c : enumerate_class_forms(d * D, 1)) CHECK(chi(c.rep, split) == chi_brute(c.rep, D));
  }
}

TEST_CASE("chi is invariant under Gamma0(N)") {
  std::mt19937_64 rng(7);
  for (auto [d, D, N] : std::vector<std::tuple<i64, i64, i64>>{
           {-4, 5, 1}, {-3, 13, 1}, {-3, 13, 3}, {-7, 17, 1}, {-7, 17, 2}, {-4, 5, 2}, {-3, 5, 3}}) {
    if (!DiscriminantSplit::admissible(d, D, N)) continue;
    const auto split = DiscriminantSplit::make(d, D, N);
    for (const auto& c : enumerate_class_forms(d * D, N)) {
      const int x = chi(c.rep, split);
      for (int t = 0; t < 6; ++t) CHECK(chi(act(c.rep, random_gamma0(rng, N)), split) == x);
    }
  }
}

TEST_CASE("chi is well defined: every represented value coprime to D gives the same symbol") {
  for (auto [d, D] : std::vector<std::pair<i64, i64>>{{-4, 5}, {-3, 13}, {-7, 17}}) {
    for (const auto& c : enumerate_class_forms(d * D, 1)) {
      const auto vals = represented_coprime_values(c.rep, D, 12);
      REQUIRE(!vals.empty());
      const int first = kronecker(D, vals.front());
      for (i64 v : vals) CHECK(kronecker(D, v) == first);
    }
  }
}

TEST_CASE("twisted class numbers vanish for D > 1 across the grid") {
  for (auto [d, D] : std::vector<std::pair<i64, i64>>{{-4, 5}, {-3, 13}, {-7, 17}})
    for (i64 N : {1, 2, 3, 4, 5, 6})
      if (DiscriminantSplit::admissible(d, D, N)) CHECK(class_number(DiscriminantSplit::make(d, D, N)) == 0);
}
