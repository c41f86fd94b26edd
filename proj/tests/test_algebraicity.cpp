#include <random>

#include "doctest.h"
#include "moduli/algebraicity.hpp"
#include "moduli/errors.hpp"
#include "moduli/traces.hpp"

using namespace moduli;

TEST_CASE("recognize: documented examples") {
  const int prec = 200;
  auto r = recognize(BigReal(3LL, prec), 5);
  REQUIRE(r);
  CHECK(r->p == 6);
  CHECK(r->q == 0);
  const BigReal golden = (BigReal(1LL, prec) + sqrt(BigReal(5LL, prec))) / BigReal(2LL, prec);
  r = recognize(golden, 5);
  REQUIRE(r);
  CHECK(r->p == 1);
  CHECK(r->q == 1);
  CHECK_FALSE(recognize(sqrt(BigReal(2LL, prec)), 5, 1e-12));
}

TEST_CASE("recognize: random round trips") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> u(-5000, 5000);
  for (i64 D : {5, 8, 12, 13, 17}) {
    const BigReal root = sqrt(BigReal(static_cast<long long>(D), 200));
    for (int t = 0; t < 20; ++t) {
      const long q = u(rng) / 10;
      long p = u(rng);
      if ((p - q * D) % 2 != 0) ++p;
      const BigReal x = (BigReal(mpz_class(p), 200) + BigReal(mpz_class(q), 200) * root) / BigReal(2LL, 200);
      const auto r = recognize(x, D, 1e-20);
      REQUIRE(r);
      CHECK(r->p == p);
      CHECK(r->q == q);
      // Galois conjugate (p - q sqrt D) / 2 is integral by the same parity condition.
      CHECK(mpz_even_p(mpz_class(r->p - r->q * D).get_mpz_t()));
    }
  }
}

TEST_CASE("recognize: conjugate mode") {
  const BigReal root = sqrt(BigReal(17LL, 256));
  const BigReal x = BigReal(mpz_class(371017500331478L), 256) * root / BigReal(2LL, 256);
  const BigReal xc = -x;
  const auto r = recognize(x, 17, 1e-8, 1000000, &xc);
  REQUIRE(r);
  CHECK(r->p == 0);
  CHECK(r->q == 371017500331478L);
}

TEST_CASE("recognize: preconditions and ambiguity") {
  CHECK_THROWS_AS(recognize(BigReal(1LL, 200), 1), InvalidArgument);
  CHECK_THROWS_AS(recognize(BigReal(1LL, 200), 20), InvalidArgument);
  CHECK_THROWS_AS(recognize(BigReal(1LL, 200).widened(1e-3), 5, 1e-8), PrecisionLoss);
  // 2x = 1: q = 0 violates parity, q = 1 and q = -1 both sit 0.236 away.
  CHECK_THROWS_AS(recognize(BigReal::from_string("0.5", 200), 5, 0.3), AmbiguousRecognition);
}

TEST_CASE("recognize_rational_integer") {
  const auto a = recognize_rational_integer(BigReal::from_string("-248.0000000001", 200), 1e-6);
  REQUIRE(a);
  CHECK(*a == -248);
  CHECK_FALSE(recognize_rational_integer(BigReal::from_string("0.5", 200), 1e-6));
  CHECK_THROWS_AS(recognize_rational_integer(BigReal(1LL, 200).widened(1.0), 1e-6), PrecisionLoss);
}

TEST_CASE("traces at level one are recognized") {
  for (i64 n = 1; n <= 3; ++n) {
    const BigReal x = -twisted_trace_cm(DiscriminantSplit::make(-7, 1, 1), n).value;
    CHECK(recognize_rational_integer(x, 1e-8).has_value());
    const BigReal y = -twisted_trace_cm(DiscriminantSplit::make(-4, 5, 1), n).value;
    const BigReal yc = -y;
    const auto r = recognize(y, 5, 1e-8, 1000000, &yc);
    REQUIRE(r);
    CHECK(r->p == 0);
  }
}
