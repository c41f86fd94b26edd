#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "moduli/errors.hpp"
#include "moduli/kloosterman.hpp"
#include "moduli/modular_values.hpp"
#include "moduli/qseries.hpp"
#include "moduli/quadratic_forms.hpp"

using namespace moduli;

namespace {

BigComplex point(double x, double y, int prec = 200) {
  return {BigReal(static_cast<long double>(x), prec), BigReal(static_cast<long double>(y), prec)};
}

UnimodularMatrix random_gamma0(std::mt19937_64& rng, i64 N) {
  std::uniform_int_distribution<i64> u(-3, 3);
  for (;;) {
    const i64 g = N * u(rng), d = u(rng);
    if (g == 0 || std::gcd(g, d) != 1) continue;
    for (i64 a = -30; a <= 30; ++a)
      if ((a * d - 1) % g == 0) return {a, (a * d - 1) / g, g, d};
  }
}

// Ramanujan tau by the product q prod (1 - q^n)^24, computed in plain integers.
std::vector<long long> tau_brute(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int r = 0; r < 24; ++r)
      for (int i = n; i >= k; --i) p[i] -= p[i - k];
  std::vector<long long> t(n + 1, 0);
  for (int i = 1; i <= n; ++i) t[i] = p[i - 1];
  return t;
}

}  // namespace

TEST_CASE("j, E4 and Delta coefficients") {
  const QSeries j = j_series(5);
  CHECK(j.coeff(-1) == 1);
  CHECK(j.coeff(0) == 744);
  CHECK(j.coeff(1) == 196884);
  CHECK(j.coeff(2) == 21493760);
  CHECK(j.coeff(3) == 864299970);
  CHECK(J_series(3).coeff(0) == 0);
  const QSeries e4 = e4_series(30);
  for (i64 n = 1; n <= 30; ++n) {
    i64 s3 = 0;
    for (i64 k = 1; k <= n; ++k)
      if (n % k == 0) s3 += k * k * k;
    CHECK(e4.coeff(n) == 240 * s3);
  }
  const auto tau = tau_brute(30);
  const QSeries delta = delta_series(30);
  for (int n = 1; n <= 30; ++n) CHECK(delta.coeff(n) == static_cast<long>(tau[n]));
  const QSeries e2 = e2_series(20);
  for (i64 n = 1; n <= 20; ++n) CHECK(e2.coeff(n) == -24 * sigma(n));
}

TEST_CASE("every Hauptmodul has a simple pole at infinity and no other poles") {
  for (i64 N : genus_zero_levels()) {
    if (N == 1) continue;
    const auto& ex = hauptmodul_eta_exponents(N);
    CHECK(eta_quotient_cusp_order(ex, N, N) == -1);
    for (i64 c : divisors(N))
      if (c != N) CHECK(eta_quotient_cusp_order(ex, N, c) >= 0);
    const QSeries h = hauptmodul(N, 10);
    CHECK(h.leading() == -1);
    CHECK(h.coeff(-1) == 1);
    CHECK(h.coeff(0) == 0);
    CHECK(h.is_integral());
  }
}

TEST_CASE("J at CM points at two truncation orders") {
  for (i64 order : {200, 400}) {
    const QSeries J = J_series(order);
    CHECK(std::fabs(evaluate(J, point(0, 1)).real().to_double() - 984) < 1e-20);
    CHECK(std::fabs(evaluate(J, point(0, 2)).real().to_double() - 286752) < 1e-15);
  }
  const BigReal half = BigReal(1LL, 200) / BigReal(2LL, 200);
  const BigComplex rho(-half, sqrt(BigReal(3LL, 200)) * half);
  const BigComplex v = J_value(rho, 200);
  CHECK(std::fabs(v.real().to_double() + 744) < 1e-30);
  CHECK(std::fabs(v.imag().to_double()) < 1e-30);
}

TEST_CASE("modular invariance probe for J and the Hauptmoduln") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.9, 1.4);
  for (i64 N : genus_zero_levels()) {
    for (int t = 0; t < 3; ++t) {
      const BigComplex z = point(ux(rng), uy(rng) / static_cast<double>(N > 1 ? 2 : 1));
      const UnimodularMatrix m = random_gamma0(rng, N);
      const BigComplex a = hauptmodul_value(N, z, 200);
      const BigComplex b = hauptmodul_value(N, mobius(m, z), 200);
      CHECK((a - b).abs().to_double() < 1e-30 * std::max(1.0, a.abs().to_double()));
    }
  }
}

TEST_CASE("E2* quasi-modularity at random points") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.7, 1.5);
  const QSeries e2 = e2_series(600);
  const int prec = 200;
  auto e2star = [&](const BigComplex& z) {
    const BigComplex v = evaluate(e2, z, prec);
    const BigReal corr = BigReal(3LL, prec) / (BigReal::pi(prec) * z.imag());
    return BigComplex(v.real() - corr, v.imag());
  };
  for (int t = 0; t < 10; ++t) {
    const BigComplex z = point(ux(rng), uy(rng));
    const UnimodularMatrix m = random_gamma0(rng, 1);
    const BigComplex gz = mobius(m, z);
    if (gz.imag().to_double() < 0.2) continue;
    BigComplex cz(BigReal(static_cast<long long>(m.gamma), prec), BigReal(prec));
    cz = cz * z + BigComplex(BigReal(static_cast<long long>(m.delta), prec), BigReal(prec));
    const BigComplex lhs = e2star(gz);
    const BigComplex rhs = cz * cz * e2star(z);
    CHECK((lhs - rhs).abs().to_double() < 1e-25);
  }
}

TEST_CASE("Faber consistency: pole q^-n, zero constant, agreement with the Niebur expansion") {
  for (i64 N : {1, 2, 3, 5, 6, 7, 10, 13}) {
    for (i64 n = 1; n <= 4; ++n) {
      const auto p = faber_polynomial(N, n);
      REQUIRE(p.size() == static_cast<std::size_t>(n + 1));
      CHECK(p[static_cast<std::size_t>(n)] == 1);
      const QSeries h = hauptmodul(N, 16);
      QSeries f = QSeries::constant(p[0], 16);
      QSeries hp = QSeries::constant(1, 16);
      for (i64 k = 1; k <= n; ++k) {
        hp = hp * h;
        f += hp * p[static_cast<std::size_t>(k)];
      }
      CHECK(f.coeff(-n) == 1);
      for (i64 m = -n + 1; m <= 0; ++m) CHECK(f.coeff(m) == 0);
      const QSeries nb = niebur_qexp(N, n, 10);
      CHECK(nb.coeff(0) == niebur_constant(N, n));
      REQUIRE(f.order() >= 10);
      for (i64 m = 1; m <= 10; ++m) CHECK(nb.coeff(m) == f.coeff(m));
    }
  }
}

TEST_CASE("level one Niebur expansions are Hecke images of J") {
  // j_{1,n} = n T_n J + 24 sigma(n): coefficient of q^m for m >= 1 is
  // sum_{k | (m, n)} (n / k) c(mn / k^2).
  const QSeries J = J_series(60);
  for (i64 n = 1; n <= 4; ++n) {
    const QSeries jn = niebur_qexp(1, n, 12);
    CHECK(jn.coeff(0) == 24 * sigma(n));
    for (i64 m = 1; m <= 12; ++m) {
      mpq_class s = 0;
      for (i64 k = 1; k <= std::min(m, n); ++k)
        if (m % k == 0 && n % k == 0) s += mpq_class(n / k) * J.coeff(m * n / (k * k));
      CHECK(jn.coeff(m) == s);
    }
  }
  CHECK(niebur_qexp(2, 1, 1).coeff(0) == -8);
  CHECK(niebur_qexp(2, 1, 1).coeff(1) == 276);
  CHECK(niebur_qexp(3, 1, 0).coeff(0) == -3);
}

TEST_CASE("series algebra") {
  const QSeries e = QSeries::euler_product(40);
  const QSeries inv = e.inverse();
  const QSeries one = (e * inv).truncated(40);
  CHECK(one.coeff(0) == 1);
  for (i64 m = 1; m <= 40; ++m) CHECK(one.coeff(m) == 0);
  // 1/prod(1 - q^n) counts partitions.
  const std::vector<long> partitions = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (std::size_t m = 0; m < partitions.size(); ++m) CHECK(inv.coeff(static_cast<i64>(m)) == partitions[m]);
  CHECK(e.pow(3).truncated(40).coeff(1) == -3);
  CHECK_THROWS_AS(j_series(3).coeff(4), InvalidArgument);
}

TEST_CASE("Dedekind eta transformation") {
  const BigComplex z = point(0.13, 0.8);
  // eta(-1/z) = sqrt(-i z) eta(z)
  const BigComplex minus_inv = BigComplex(BigReal(-1LL, 200), BigReal(200)) / z;
  const BigComplex lhs = dedekind_eta(minus_inv, 200);
  const BigComplex miz(z.imag(), -z.real());
  const BigComplex rhs = sqrt(miz) * dedekind_eta(z, 200);
  CHECK((lhs - rhs).abs().to_double() < 1e-40);
}
