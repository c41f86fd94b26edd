#include <cmath>

#include "doctest.h"
#include "moduli/errors.hpp"
#include "moduli/modular_values.hpp"
#include "moduli/genus_character.hpp"
#include "moduli/traces.hpp"

using namespace moduli;

namespace {

// S_{d,D}(a, n) with chi evaluated through the reduced class of each form,
// as a complex sum, so that reality is a genuine check.
std::pair<double, double> exp_sum_complex(i64 d, i64 D, i64 a, i64 n) {
  const auto split = DiscriminantSplit::make(d, D, 1);
  double re = 0, im = 0;
  for (i64 b = 0; b < 2 * a; ++b) {
    const i64 num = b * b - d * D;
    if (num % (4 * a) != 0) continue;
    const int x = chi({a, b, num / (4 * a)}, split);
    const double t = M_PI * static_cast<double>(n * b) / static_cast<double>(a);
    re += x * std::cos(t);
    im += x * std::sin(t);
  }
  return {re, im};
}

}  // namespace

TEST_CASE("exponential sums are real and match the K* identity") {
  for (auto [d, D] : std::vector<std::pair<i64, i64>>{{-3, 1}, {-4, 1}, {-7, 1}, {-4, 5}, {-3, 13}, {-7, 17}}) {
    const auto split = DiscriminantSplit::make(d, D, 1);
    for (i64 a = 1; a <= 30; ++a)
      for (i64 n = 1; n <= 4; ++n) {
        const auto [re, im] = exp_sum_complex(d, D, a, n);
        CHECK(std::fabs(im) < 1e-9);
        const BigReal s = exp_sum(split, a, n, 128);
        CHECK(s.to_double() == doctest::Approx(re).scale(1.0));
        CHECK(std::fabs((s - exp_sum_via_kstar(split, a, n, 128)).to_double()) < 1e-20);
      }
  }
}

TEST_CASE("CM traces: known values") {
  CHECK(std::fabs(twisted_trace_cm(DiscriminantSplit::make(-3, 1, 1), 1).value.to_double() + 240) < 1e-30);
  CHECK(std::fabs(twisted_trace_cm(DiscriminantSplit::make(-4, 1, 1), 1).value.to_double() - 504) < 1e-30);
  CHECK(std::fabs(twisted_trace_cm(DiscriminantSplit::make(-4, 1, 2), 1).value.to_double() + 24) < 1e-30);
  CHECK(std::fabs(twisted_trace_cm(DiscriminantSplit::make(-3, 1, 3), 2).value.to_double() - 36) < 1e-30);
  // 565760 sqrt 5 for (-4, 5, 1)
  CHECK(twisted_trace_cm(DiscriminantSplit::make(-4, 5, 1), 1).value.to_double() ==
        doctest::Approx(565760 * std::sqrt(5.0)).epsilon(1e-14));
  auto J = [](const HeegnerClass& h, int prec) { return J_value(h.z, prec); };
  CHECK(std::fabs(twisted_trace_cm(DiscriminantSplit::make(-3, 1, 1), J).value.to_double() + 248) < 1e-30);
  CHECK(std::fabs(twisted_trace_cm(DiscriminantSplit::make(-4, 1, 1), J).value.to_double() - 492) < 1e-30);
}

TEST_CASE("CM traces agree at two precisions") {
  for (auto [d, D, N] : std::vector<std::tuple<i64, i64, i64>>{{-7, 1, 2}, {-3, 13, 3}, {-7, 17, 2}}) {
    const auto split = DiscriminantSplit::make(d, D, N);
    const auto a = twisted_trace_cm(split, 2, 256), b = twisted_trace_cm(split, 2, 512);
    CHECK((a.value - b.value).magnitude() <= a.err + b.err);
  }
}

TEST_CASE("sinh series approaches the CM value") {
  SeriesOptions o;
  o.a_max = 20000;
  for (auto [d, D, N, n] : std::vector<std::tuple<i64, i64, i64, i64>>{{-3, 1, 1, 1}, {-4, 5, 1, 1}, {-7, 1, 2, 2}}) {
    const auto split = DiscriminantSplit::make(d, D, N);
    const double cm = twisted_trace_cm(split, n).value.to_double();
    const auto s = twisted_trace_series(split, n, o);
    CHECK(s.method == TraceMethod::sinh_series);
    CHECK(std::fabs(s.value.to_double() - cm) <= std::max(0.05 * std::fabs(cm), s.err));
  }
}

TEST_CASE("Fourier coefficients of f* and f_d") {
  const auto split = DiscriminantSplit::make(-4, 5, 1);
  CHECK(class_number(split) == 0);
  const auto f0 = fstar_coefficient(DiscriminantSplit::make(-3, 1, 1), 0);
  CHECK(f0.nonholomorphic);
  CHECK(f0.inv_v_coefficient.to_double() == doctest::Approx(-1.0 / M_PI));
  CHECK(fstar_coefficient(DiscriminantSplit::make(-3, 1, 1), 1).value.to_double() == doctest::Approx(240));
  const auto fd1 = fd_coefficient(-3, 1);
  REQUIRE(fd1.exact.has_value());
  CHECK(*fd1.exact == 248);
  CHECK(*fd_coefficient(-3, 0).exact == mpq_class(-1, 3));
  CHECK_THROWS_AS(fd_coefficient(5, 1), InvalidArgument);
  CHECK_THROWS_AS(twisted_trace_cm(DiscriminantSplit::make(-3, 1, 1), 0), InvalidArgument);
}
