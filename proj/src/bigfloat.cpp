#include "moduli/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "moduli/errors.hpp"

namespace moduli {

namespace {

// Rounds a nonnegative double bound upward by a relative margin covering the
// double arithmetic used to form it.
double up(double x) {
  if (x == 0.0) return 0.0;
  return x * (1.0 + 0x1p-48) + std::numeric_limits<double>::denorm_min();
}

double down(double x) { return x * (1.0 - 0x1p-48); }

double abs_upper(mpfr_srcptr v) {
  return mpfr_sgn(v) < 0 ? -mpfr_get_d(v, MPFR_RNDD) : mpfr_get_d(v, MPFR_RNDU);
}

double abs_lower(mpfr_srcptr v) {
  return mpfr_sgn(v) < 0 ? -mpfr_get_d(v, MPFR_RNDU) : mpfr_get_d(v, MPFR_RNDD);
}

// Bound on the rounding error of a correctly rounded result.
double ulp_bound(mpfr_srcptr v, int ternary) {
  if (ternary == 0 || mpfr_zero_p(v)) return 0.0;
  const long e = mpfr_get_exp(v);
  const double u = std::ldexp(1.0, static_cast<int>(e - static_cast<long>(mpfr_get_prec(v))));
  return u > 0.0 ? u : std::numeric_limits<double>::denorm_min();
}

}  // namespace

BigReal::BigReal() : BigReal(kDefaultPrecision) {}

BigReal::BigReal(int prec) {
  mpfr_init2(v_, std::max(prec, 2));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long double v, int prec) : BigReal(prec) {
  const int t = mpfr_set_ld(v_, v, MPFR_RNDN);
  err_ = ulp_bound(v_, t);
}

BigReal::BigReal(long long v, int prec) : BigReal(prec) {
  const int t = mpfr_set_sj(v_, v, MPFR_RNDN);
  err_ = ulp_bound(v_, t);
}

BigReal::BigReal(const mpz_class& v, int prec) : BigReal(prec) {
  const int t = mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
  err_ = ulp_bound(v_, t);
}

BigReal::BigReal(const mpq_class& v, int prec) : BigReal(prec) {
  const int t = mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
  err_ = ulp_bound(v_, t);
}

BigReal::BigReal(const BigReal& other) : err_(other.err_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : err_(other.err_) {
  mpfr_init2(v_, 2);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    err_ = other.err_;
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  err_ = other.err_;
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_string(const std::string& s, int prec) {
  BigReal r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw InvalidArgument("cannot parse number: " + s);
  // mpfr_set_str reports success, not exactness; always charge one ulp.
  r.err_ = ulp_bound(r.v_, 1);
  return r;
}

BigReal BigReal::pi(int prec) {
  BigReal r(prec);
  const int t = mpfr_const_pi(r.v_, MPFR_RNDN);
  r.err_ = ulp_bound(r.v_, t);
  return r;
}

BigReal BigReal::widened(double extra) const {
  BigReal r(*this);
  r.err_ = up(r.err_ + extra);
  return r;
}

BigReal BigReal::midpoint() const {
  BigReal r(*this);
  r.err_ = 0.0;
  return r;
}

BigReal BigReal::with_precision(int prec) const {
  BigReal r(prec);
  const int t = mpfr_set(r.v_, v_, MPFR_RNDN);
  r.err_ = up(err_ + ulp_bound(r.v_, t));
  return r;
}

double BigReal::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
long double BigReal::to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
double BigReal::magnitude() const { return abs_upper(v_); }
double BigReal::upper_abs() const { return up(abs_upper(v_) + err_); }

mpz_class BigReal::round() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

std::string BigReal::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigReal& BigReal::operator+=(const BigReal& b) {
  const double eb = b.err_;
  if (mpfr_get_prec(b.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(b.v_), MPFR_RNDN);
  const int t = mpfr_add(v_, v_, b.v_, MPFR_RNDN);
  err_ = up(err_ + eb + ulp_bound(v_, t));
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& b) {
  const double eb = b.err_;
  if (mpfr_get_prec(b.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(b.v_), MPFR_RNDN);
  const int t = mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
  err_ = up(err_ + eb + ulp_bound(v_, t));
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& b) {
  const double ma = abs_upper(v_), mb = abs_upper(b.v_);
  const double ea = err_, eb = b.err_;
  if (mpfr_get_prec(b.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(b.v_), MPFR_RNDN);
  const int t = mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
  err_ = up(ma * eb + mb * ea + ea * eb + ulp_bound(v_, t));
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& b) {
  const double ma = abs_upper(v_), mb = abs_upper(b.v_), mb_lo = down(abs_lower(b.v_));
  const double ea = err_, eb = b.err_;
  if (!(mb_lo > eb)) throw PrecisionLoss("division by a value indistinguishable from zero");
  if (mpfr_get_prec(b.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(b.v_), MPFR_RNDN);
  const int t = mpfr_div(v_, v_, b.v_, MPFR_RNDN);
  const double denom = down(mb_lo * down(mb_lo - eb));
  err_ = up((ma * eb + mb * ea) / denom + ulp_bound(v_, t));
  return *this;
}

BigReal exp(const BigReal& x) {
  BigReal r(x.precision());
  const int t = mpfr_exp(r.v_, x.v_, MPFR_RNDN);
  r.err_ = up(abs_upper(r.v_) * up(std::expm1(x.err_)) + ulp_bound(r.v_, t));
  return r;
}

BigReal log(const BigReal& x) {
  const double lo = down(abs_lower(x.v_));
  if (x.sign() <= 0 || !(lo > x.err_)) throw PrecisionLoss("log of a value not certainly positive");
  BigReal r(x.precision());
  const int t = mpfr_log(r.v_, x.v_, MPFR_RNDN);
  r.err_ = up(-std::log1p(-x.err_ / lo) + ulp_bound(r.v_, t));
  return r;
}

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0 && abs_upper(x.v_) > x.err_) throw PrecisionLoss("sqrt of a negative value");
  BigReal r(x.precision());
  if (x.sign() < 0) {
    mpfr_set_zero(r.v_, 1);
    r.err_ = up(std::sqrt(up(2.0 * x.err_)));
    return r;
  }
  const int t = mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
  const double lo = down(abs_lower(x.v_));
  double e;
  if (lo > x.err_)
    e = x.err_ / down(std::sqrt(down(lo - x.err_)) + std::sqrt(lo));
  else
    e = std::sqrt(up(abs_upper(x.v_) + x.err_));
  r.err_ = up(e + ulp_bound(r.v_, t));
  return r;
}

BigReal sin(const BigReal& x) {
  BigReal r(x.precision());
  const int t = mpfr_sin(r.v_, x.v_, MPFR_RNDN);
  r.err_ = up(std::min(x.err_, 2.0) + ulp_bound(r.v_, t));
  return r;
}

BigReal cos(const BigReal& x) {
  BigReal r(x.precision());
  const int t = mpfr_cos(r.v_, x.v_, MPFR_RNDN);
  r.err_ = up(std::min(x.err_, 2.0) + ulp_bound(r.v_, t));
  return r;
}

BigReal sinh(const BigReal& x) {
  BigReal r(x.precision());
  const int t = mpfr_sinh(r.v_, x.v_, MPFR_RNDN);
  const double slope = std::cosh(up(abs_upper(x.v_) + x.err_));
  r.err_ = up(slope * x.err_ + ulp_bound(r.v_, t));
  return r;
}

BigReal cosh(const BigReal& x) {
  BigReal r(x.precision());
  const int t = mpfr_cosh(r.v_, x.v_, MPFR_RNDN);
  const double slope = std::cosh(up(abs_upper(x.v_) + x.err_));
  r.err_ = up(slope * x.err_ + ulp_bound(r.v_, t));
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r(x);
  mpfr_abs(r.v_, r.v_, MPFR_RNDN);
  return r;
}

bool certainly_within(const BigReal& x, const BigReal& target, double tol) {
  if (x.error() > tol / 2) return false;
  const BigReal diff = x - target;
  return diff.magnitude() < tol;
}

bool certainly_within(const BigReal& x, long double target, double tol) {
  return certainly_within(x, BigReal(target, std::max(x.precision(), 64)), tol);
}

int BigComplex::precision() const { return std::max(re_.precision(), im_.precision()); }

double BigComplex::error() const { return std::max(re_.error(), im_.error()); }

BigComplex& BigComplex::operator+=(const BigComplex& b) {
  re_ += b.re_;
  im_ += b.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& b) {
  re_ -= b.re_;
  im_ -= b.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& b) {
  BigReal re = re_ * b.re_ - im_ * b.im_;
  BigReal im = re_ * b.im_ + im_ * b.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& b) {
  re_ *= b;
  im_ *= b;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& b) {
  const BigReal n = b.norm();
  BigReal re = (re_ * b.re_ + im_ * b.im_) / n;
  BigReal im = (im_ * b.re_ - re_ * b.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

BigReal BigComplex::norm() const { return re_ * re_ + im_ * im_; }

BigReal BigComplex::abs() const { return sqrt(norm()); }

BigComplex exp(const BigComplex& z) {
  const BigReal m = exp(z.real());
  return {m * cos(z.imag()), m * sin(z.imag())};
}

BigComplex sqrt(const BigComplex& z) {
  const BigReal r = z.abs();
  const BigReal two(2LL, z.precision());
  if (z.real().sign() >= 0) {
    const BigReal s = sqrt((r + z.real()) / two);
    return {s, z.imag() / (two * s)};
  }
  const BigReal t = sqrt((r - z.real()) / two);
  BigReal re = abs(z.imag()) / (two * t);
  return {std::move(re), z.imag().sign() < 0 ? -t : t};
}

BigComplex expi2pi(const BigComplex& z) {
  const BigReal twopi = BigReal::pi(z.precision()) * BigReal(2LL, z.precision());
  const BigReal m = exp(-(twopi * z.imag()));
  const BigReal arg = twopi * z.real();
  return {m * cos(arg), m * sin(arg)};
}

}  // namespace moduli
