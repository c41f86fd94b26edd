#include <cmath>

#include "doctest.h"
#include "moduli/bigfloat.hpp"
#include "moduli/errors.hpp"

using namespace moduli;

namespace {

// |x - ref| <= x.error(), with ref computed at much higher precision.
bool encloses(const BigReal& x, const BigReal& ref) {
  const BigReal diff = x - ref.with_precision(x.precision() + 200);
  return diff.magnitude() <= x.error() + ref.error();
}

}  // namespace

TEST_CASE("error bounds enclose high-precision references") {
  for (int prec : {64, 128, 256}) {
    const int hp = prec + 300;
    for (long long k : {1LL, 2LL, 7LL, 123LL}) {
      const BigReal x = BigReal(k, prec) / BigReal(3LL, prec);
      const BigReal xr = BigReal(k, hp) / BigReal(3LL, hp);
      CHECK(encloses(exp(x), exp(xr)));
      CHECK(encloses(log(x), log(xr)));
      CHECK(encloses(sqrt(x), sqrt(xr)));
      CHECK(encloses(sin(x), sin(xr)));
      CHECK(encloses(cos(x), cos(xr)));
      CHECK(encloses(sinh(x), sinh(xr)));
      CHECK(encloses(x * x - x / BigReal(5LL, prec), xr * xr - xr / BigReal(5LL, hp)));
    }
  }
}

TEST_CASE("pi and simple identities") {
  const BigReal pi = BigReal::pi(256);
  CHECK(std::fabs(pi.to_double() - M_PI) < 1e-15);
  CHECK(pi.to_string(30).substr(0, 25) == "3.14159265358979323846264");
  const BigReal one = sin(pi / BigReal(2LL, 256));
  CHECK(certainly_within(one, 1.0L, 1e-60));
  CHECK(certainly_within(exp(log(BigReal(10LL, 256))), 10.0L, 1e-60));
}

TEST_CASE("log of a non-positive ball is refused") {
  CHECK_THROWS_AS(log(BigReal(0LL, 128)), PrecisionLoss);
  CHECK_THROWS_AS(log(BigReal(-1LL, 128)), PrecisionLoss);
}

TEST_CASE("complex arithmetic") {
  const BigComplex z(BigReal(3LL, 128), BigReal(4LL, 128));
  CHECK(certainly_within(z.abs(), 5.0L, 1e-30));
  const BigComplex w = z / z;
  CHECK(certainly_within(w.real(), 1.0L, 1e-30));
  CHECK(certainly_within(w.imag(), 0.0L, 1e-30));
  // e(1/4) = i
  const BigComplex e = expi2pi(BigComplex(BigReal(1LL, 128) / BigReal(4LL, 128), BigReal(128)));
  CHECK(certainly_within(e.real(), 0.0L, 1e-30));
  CHECK(certainly_within(e.imag(), 1.0L, 1e-30));
}

TEST_CASE("rounding and parsing") {
  CHECK(BigReal::from_string("-248.0000000001", 200).round() == -248);
  CHECK(BigReal::from_string("2.6", 64).round() == 3);
  const BigReal x = BigReal::from_string("0.1", 200);
  CHECK(x.error() > 0);
  CHECK(x.error() < 1e-55);
}
