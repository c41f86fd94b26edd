#include <cmath>

#include "doctest.h"
#include "moduli/errors.hpp"
#include "moduli/inner_products.hpp"
#include "moduli/quadratic_forms.hpp"

using namespace moduli;

namespace {

BigComplex rho(int prec) {
  const BigReal half = BigReal(1LL, prec) / BigReal(2LL, prec);
  return {-half, sqrt(BigReal(3LL, prec)) * half};
}

BigComplex at(long long x, long long y, int prec) { return {BigReal(x, prec), BigReal(y, prec)}; }

}  // namespace

TEST_CASE("green_log examples") {
  const int prec = 256;
  CHECK(green_log(rho(prec), at(0, 1, prec), prec).to_double() == doctest::Approx(std::log(1728.0)));
  CHECK(green_log(rho(prec), at(0, 2, prec), prec).to_double() == doctest::Approx(std::log(744.0 + 286752.0)));
  CHECK_THROWS_AS(green_log(at(0, 1, prec), at(1, 1, prec), prec), NearCoincidence);
}

TEST_CASE("case dispatch and rejected parameters") {
  CHECK(classify_inner_product(-3, -4) == InnerProductCase::distinct);
  CHECK(classify_inner_product(-4, -3) == InnerProductCase::distinct);
  CHECK(classify_inner_product(-7, -7) == InnerProductCase::diagonal);
  CHECK(classify_inner_product(-3, -3) == InnerProductCase::elliptic);
  CHECK(classify_inner_product(-4, -4) == InnerProductCase::elliptic);
  CHECK_THROWS_AS(classify_inner_product(-4, -16), InvalidArgument);  // ratio is a square
  CHECK_THROWS_AS(classify_inner_product(-3, -12), InvalidArgument);
  CHECK_THROWS_AS(classify_inner_product(-12, -12), InvalidArgument);  // 12/3 = 4
  CHECK_THROWS_AS(classify_inner_product(-16, -16), InvalidArgument);  // 16/4 = 4
  CHECK_THROWS_AS(classify_inner_product(-27, -27), InvalidArgument);  // 27/3 = 9
  CHECK_THROWS_AS(classify_inner_product(4, -3), InvalidArgument);
  CHECK_THROWS_AS(classify_inner_product(-5, -3), InvalidArgument);
}

TEST_CASE("<f_-3, f_-4> = log(1728) / (12 pi)") {
  const auto ip = inner_product(-3, -4, 256);
  CHECK(ip.kind == InnerProductCase::distinct);
  const BigReal expected = log(BigReal(1728LL, 256)) / (BigReal(12LL, 256) * BigReal::pi(256));
  CHECK((ip.value - expected).magnitude() < 1e-60);
  CHECK((inner_product(-4, -3, 256).value - ip.value).magnitude() <= 2 * ip.err);
}

TEST_CASE("elliptic and diagonal cases agree across precisions") {
  for (auto [d, delta] : std::vector<std::pair<i64, i64>>{{-3, -3}, {-4, -4}, {-7, -7}, {-8, -8}, {-15, -15}, {-7, -8}}) {
    const auto a = inner_product(d, delta, 200), b = inner_product(d, delta, 400);
    CHECK((a.value - b.value).magnitude() <= a.err + b.err);
    CHECK(a.err < 1e-40);
  }
  // Diagonal case for d = -7 has the single class [1, 1, 2].
  const BigReal direct = diagonal_summand({1, 1, 2}, 256) / (BigReal(2LL, 256) * BigReal::pi(256));
  CHECK((inner_product(-7, -7, 256).value - direct).magnitude() < 1e-60);
}

TEST_CASE("diagonal summand does not depend on the class representative") {
  const QuadraticForm base{1, 1, 2};
  const BigReal ref = diagonal_summand(base, 256);
  int checked = 0;
  for (i64 a = -3; a <= 3; ++a)
    for (i64 b = -3; b <= 3; ++b)
      for (i64 c = -3; c <= 3; ++c)
        for (i64 d = -3; d <= 3; ++d) {
          if (a * d - b * c != 1) continue;
          const QuadraticForm q = act(base, UnimodularMatrix{a, b, c, d});
          CHECK((diagonal_summand(q, 256) - ref).magnitude() < 1e-10);
          ++checked;
        }
  CHECK(checked > 20);
}
