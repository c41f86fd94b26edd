#include <cmath>
#include <numeric>

#include "doctest.h"
#include "moduli/kloosterman.hpp"
#include "moduli/qseries.hpp"

using namespace moduli;

namespace {

double kloosterman_brute(i64 m, i64 n, i64 c) {
  double s = 0;
  for (i64 d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    i64 dbar = 1;
    while ((d * dbar) % c != 1 % c) ++dbar;
    s += std::cos(2 * M_PI * static_cast<double>(mod(m * dbar + n * d, c)) / static_cast<double>(c));
  }
  return s;
}

}  // namespace

TEST_CASE("Kloosterman sums: direct, fast and brute force agree") {
  for (i64 c = 1; c <= 60; ++c)
    for (i64 m : {-3, -1, 0, 1, 2, 5})
      for (i64 n : {-2, 0, 1, 3}) {
        const double b = kloosterman_brute(m, n, c);
        CHECK(kloosterman(m, n, c, 128).to_double() == doctest::Approx(b).epsilon(1e-9).scale(1.0));
        CHECK(static_cast<double>(kloosterman_fast(m, n, c)) == doctest::Approx(b).epsilon(1e-9).scale(1.0));
      }
  for (i64 c : {1024, 3 * 3 * 3 * 7 * 11, 9973, 2 * 9973})
    CHECK(static_cast<double>(kloosterman_fast(3, -5, c)) ==
          doctest::Approx(kloosterman(3, -5, c, 128).to_double()).epsilon(1e-9).scale(1.0));
}

TEST_CASE("Weil bound and symmetry") {
  for (i64 p : {3, 5, 7, 11, 13, 101, 997, 7919})
    for (i64 m : {1, 2, 3})
      for (i64 n : {1, -1, 4}) {
        const long double k = kloosterman_fast(m, n, p);
        CHECK(std::fabs(static_cast<double>(k)) <= 2 * std::sqrt(static_cast<double>(p)) + 1e-9);
        CHECK(static_cast<double>(kloosterman_fast(n, m, p)) == doctest::Approx(static_cast<double>(k)));
      }
  // Ramanujan sums as the n = 0 case.
  for (i64 c = 1; c <= 40; ++c)
    CHECK(static_cast<double>(kloosterman_fast(5, 0, c)) == doctest::Approx(static_cast<double>(ramanujan_sum(c, 5))).scale(1.0));
}

TEST_CASE("half-integral weight Kloosterman sum") {
  const BigComplex k = half_integral_kloosterman(0, 0, 4, 128);
  CHECK(k.real().to_double() == doctest::Approx(1.0));
  CHECK(k.imag().to_double() == doctest::Approx(1.0));
  // |K*(m, n; 4c)| is at most the number of terms.
  for (i64 c : {4, 8, 12, 20})
    CHECK(half_integral_kloosterman(-3, 5, c, 128).abs().to_double() <= static_cast<double>(c) / 2 + 1e-9);
}

TEST_CASE("Bessel functions against the standard library") {
  for (double x : {0.01, 0.5, 1.0, 7.5, 19.5, 20.5, 25.0, 60.0, 150.0, 400.0}) {
    const BigReal bx(static_cast<long double>(x), 256);
    const double i1 = bessel_I1(bx).to_double(), j1 = bessel_J1(bx).to_double();
    CHECK(i1 == doctest::Approx(std::cyl_bessel_i(1.0, x)).epsilon(1e-13));
    CHECK(j1 == doctest::Approx(std::cyl_bessel_j(1.0, x)).epsilon(1e-10).scale(1e-3));
  }
  // Two precisions agree within the reported bounds.
  for (long long k : {3LL, 45LL, 90LL}) {
    const BigReal a = bessel_I1(BigReal(k, 200)), b = bessel_I1(BigReal(k, 400));
    CHECK((a - b).magnitude() <= a.error() + b.error());
    const BigReal c = bessel_J1(BigReal(k, 200)), d = bessel_J1(BigReal(k, 400));
    CHECK((c - d).magnitude() <= c.error() + d.error());
  }
}

TEST_CASE("Niebur constant terms") {
  for (i64 n = 1; n <= 10; ++n) CHECK(niebur_constant(1, n) == 24 * sigma(n));
  // Prime level: -24 / (p^2 - 1) (sigma(n) - p^2 sigma(n / p)).
  for (i64 p : {2, 3, 5, 7, 13})
    for (i64 n = 1; n <= 6; ++n) {
      const mpq_class inner = mpq_class(sigma(n)) - (n % p == 0 ? mpq_class(p * p * sigma(n / p)) : mpq_class(0));
      CHECK(niebur_constant(p, n) == mpq_class(-24) / (p * p - 1) * inner);
    }
  CHECK(niebur_constant(2, 1) == -8);
  CHECK(niebur_constant(3, 1) == -3);
}

TEST_CASE("Kloosterman-Bessel series for c_N(n, m)") {
  const auto c = niebur_coefficients({{1, 1, 0}, {1, 1, 1}, {2, 1, 1}, {3, 1, 0}}, 2000);
  CHECK(static_cast<double>(c[0].value) == doctest::Approx(24).epsilon(1e-3));
  CHECK(static_cast<double>(c[1].value) == doctest::Approx(196884).epsilon(1e-3));
  CHECK(static_cast<double>(c[2].value) == doctest::Approx(276).epsilon(1e-2));
  CHECK(static_cast<double>(c[3].value) == doctest::Approx(-3).epsilon(1e-2));
  const auto one = niebur_coefficient(1, 2, 1, 2000);
  CHECK(static_cast<double>(one.value) == doctest::Approx(niebur_qexp(1, 2, 1).coeff(1).get_d()).epsilon(1e-3));
}
