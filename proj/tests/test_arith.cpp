#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "moduli/arith.hpp"
#include "moduli/errors.hpp"

using namespace moduli;

namespace {

i64 sigma_brute(i64 n) {
  i64 s = 0;
  for (i64 d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}

// Legendre symbol by Euler's criterion.
int legendre_euler(i64 a, i64 p) {
  const i64 r = powmod(mod(a, p), (p - 1) / 2, p);
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

bool prime_brute(i64 n) {
  if (n < 2) return false;
  for (i64 k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("sigma against brute force and multiplicativity") {
  for (i64 n = 1; n <= 300; ++n) CHECK(sigma(n) == sigma_brute(n));
  for (i64 m = 1; m <= 40; ++m)
    for (i64 n = 1; n <= 40; ++n)
      if (std::gcd(m, n) == 1) CHECK(sigma(m * n) == sigma(m) * sigma(n));
}

TEST_CASE("kronecker symbol: Euler criterion, reciprocity, special values") {
  for (i64 p = 3; p < 200; ++p) {
    if (!prime_brute(p)) continue;
    for (i64 a = -50; a <= 50; ++a) CHECK(kronecker(a, p) == legendre_euler(a, p));
  }
  for (i64 m = 1; m < 80; m += 2)
    for (i64 n = 1; n < 80; n += 2) {
      if (std::gcd(m, n) != 1) continue;
      const int sign = ((m - 1) / 2 * ((n - 1) / 2)) % 2 == 0 ? 1 : -1;
      CHECK(kronecker(m, n) * kronecker(n, m) == sign);
    }
  // (a/2) depends on a mod 8.
  CHECK(kronecker(1, 2) == 1);
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(3, 2) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(4, 2) == 0);
  CHECK(kronecker(-4, 5) == 1);
  CHECK(kronecker(5, -1) == 1);
  CHECK(kronecker(-3, -1) == -1);
}

TEST_CASE("discriminants and fundamental discriminants") {
  for (i64 D : {1, 5, 8, 12, 13, 17, -3, -4, -7, -8, -11, -15, -20, -24}) CHECK(is_fundamental(D));
  for (i64 D : {4, 9, 16, 20, 45, -12, -16, -27, -28, 2, 3, 0}) CHECK_FALSE(is_fundamental(D));
  CHECK(is_discriminant(-3));
  CHECK(is_discriminant(-4));
  CHECK_FALSE(is_discriminant(-5));
  CHECK_FALSE(is_discriminant(-2));
}

TEST_CASE("mobius and squarefree") {
  for (i64 n = 1; n <= 200; ++n) {
    i64 m = n, k = 0;
    bool sq = false;
    for (i64 p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        int e = 0;
        while (m % p == 0) m /= p, ++e;
        if (e > 1) sq = true;
        ++k;
      }
    if (m > 1) ++k;
    CHECK(is_squarefree(n) == !sq);
    CHECK(mobius(n) == (sq ? 0 : (k % 2 ? -1 : 1)));
  }
}

TEST_CASE("factorize, divisors and the prime sieve agree") {
  PrimeSieve sieve(5000);
  for (i64 n = 2; n <= 5000; ++n) {
    const auto f = factorize(n);
    CHECK(f == sieve.factorize(n));
    i64 prod = 1;
    for (auto [p, e] : f) {
      CHECK(prime_brute(p));
      for (int i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
    CHECK(sieve.is_prime(n) == prime_brute(n));
  }
  const auto d = divisors(60);
  CHECK(d == std::vector<i64>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60});
}

TEST_CASE("square roots modulo m against brute force") {
  for (i64 m : {4, 8, 12, 20, 28, 36, 52, 68, 100, 120, 4 * 17 * 7}) {
    for (i64 delta : {-3, -4, -7, -20, -119, -39, 1, 5}) {
      std::vector<i64> brute;
      for (i64 b = 0; b < m; ++b)
        if (mod(b * b - delta, m) == 0) brute.push_back(b);
      auto got = square_roots_mod(delta, m);
      std::sort(got.begin(), got.end());
      CHECK(got == brute);
      CHECK(is_square_mod(delta, m) == !brute.empty());
    }
  }
}

TEST_CASE("ramanujan sums against the cosine sum") {
  for (i64 c = 1; c <= 30; ++c)
    for (i64 n = 0; n <= 12; ++n) {
      double s = 0;
      for (i64 h = 1; h <= c; ++h)
        if (std::gcd(h, c) == 1) s += std::cos(2 * M_PI * static_cast<double>(h * n) / static_cast<double>(c));
      CHECK(static_cast<double>(ramanujan_sum(c, n)) == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("modular inverse and index of Gamma0(N)") {
  for (i64 m = 2; m < 60; ++m)
    for (i64 a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) CHECK(mod(a * invmod(a, m), m) == 1);
  CHECK(index_gamma0(1) == 1);
  CHECK(index_gamma0(2) == 3);
  CHECK(index_gamma0(4) == 6);
  CHECK(index_gamma0(6) == 12);
  CHECK(index_gamma0(9) == 12);
  CHECK(index_gamma0(25) == 30);
}

TEST_CASE("admissible splits") {
  CHECK(DiscriminantSplit::admissible(-3, 1, 1));
  CHECK(DiscriminantSplit::admissible(-4, 5, 1));
  CHECK(DiscriminantSplit::admissible(-7, 17, 2));
  CHECK_FALSE(DiscriminantSplit::admissible(-3, 1, 2));  // -3 is 5 mod 8
  CHECK_FALSE(DiscriminantSplit::admissible(-4, 4, 1));  // D not fundamental
  CHECK_FALSE(DiscriminantSplit::admissible(-4, -3, 1));  // dD > 0
  CHECK_THROWS_AS(DiscriminantSplit::make(-3, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(DiscriminantSplit::make(-5, 1, 1), InvalidArgument);
}
