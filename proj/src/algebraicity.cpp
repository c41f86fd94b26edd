#include "moduli/algebraicity.hpp"

#include <cmath>
#include <string>

#include "moduli/errors.hpp"

namespace moduli {

namespace {

void require_precision(const BigReal& x, double tol, const char* what) {
  if (!(tol > 0)) throw InvalidArgument(std::string(what) + ": tolerance must be positive");
  if (x.error() > tol / 4)
    throw PrecisionLoss(std::string(what) + ": input error bound exceeds tol/4; raise the precision");
}

bool parity_ok(const mpz_class& p, const mpz_class& q, i64 D) {
  const mpz_class t = p - q * D;
  return mpz_even_p(t.get_mpz_t()) != 0;
}

// Candidate check at full precision: residual of 2x - q sqrt D - p with p the nearest integer.
std::optional<Recognition> check(const BigReal& two_x, const BigReal& root, const mpz_class& q, i64 D, double tol) {
  const int prec = two_x.precision();
  const BigReal y = two_x - BigReal(q, prec) * root;
  const mpz_class p = y.round();
  const BigReal r = abs(y - BigReal(p, prec));
  const double res = r.to_double();
  if (!(res + r.error() < tol) || !parity_ok(p, q, D)) return std::nullopt;
  return Recognition{p, q, res};
}

}  // namespace

std::optional<Recognition> recognize(const BigReal& x, i64 D, double tol, i64 q_cap, const BigReal* conjugate) {
  if (D <= 1 || !is_fundamental(D)) throw InvalidArgument("recognize: D must be a fundamental discriminant > 1");
  if (q_cap < 0) throw InvalidArgument("recognize: q_cap must be >= 0");
  require_precision(x, tol, "recognize");
  const int prec = x.precision();
  const BigReal root = sqrt(BigReal(static_cast<long long>(D), prec));
  const BigReal two_x = x * BigReal(2LL, prec);

  if (conjugate != nullptr) {
    require_precision(*conjugate, tol, "recognize");
    const BigReal s = x + *conjugate;
    const BigReal t = (x - *conjugate) / root;
    const mpz_class p = s.round();
    const mpz_class q = t.round();
    const BigReal r = abs(two_x - BigReal(p, prec) - BigReal(q, prec) * root);
    const double res = r.to_double();
    if (!(res + r.error() < tol) || !parity_ok(p, q, D)) return std::nullopt;
    if (!(abs(s - BigReal(p, prec)).upper_abs() < tol)) return std::nullopt;
    return Recognition{p, q, res};
  }

  // Screen with fractional parts in long double, confirm at full precision.
  const BigReal f0 = two_x - BigReal(two_x.round(), prec);
  const long double frac_x = f0.to_long_double();
  const long double frac_root = (root - BigReal(root.round(), prec)).to_long_double();
  const long double screen = std::max<long double>(10 * tol, 1e-12L);
  auto near_integer = [&](i64 q) {
    long double v = frac_x - static_cast<long double>(q) * frac_root;
    v -= std::round(v);
    return std::fabs(v) < screen;
  };
  for (i64 k = 0; k <= q_cap; ++k) {
    std::optional<Recognition> plus, minus;
    if (near_integer(k)) plus = check(two_x, root, mpz_class(static_cast<long>(k)), D, tol);
    if (k > 0 && near_integer(-k)) minus = check(two_x, root, mpz_class(static_cast<long>(-k)), D, tol);
    if (plus && minus)
      throw AmbiguousRecognition("recognize: both q = " + std::to_string(k) + " and q = -" + std::to_string(k) +
                                 " fit");
    if (plus) return plus;
    if (minus) return minus;
  }
  return std::nullopt;
}

std::optional<mpz_class> recognize_rational_integer(const BigReal& x, double tol) {
  require_precision(x, tol, "recognize_rational_integer");
  const mpz_class n = x.round();
  const BigReal r = abs(x - BigReal(n, x.precision()));
  if (r.to_double() + r.error() < tol) return n;
  return std::nullopt;
}

}  // namespace moduli
