#pragma once

// Configurable-precision real and complex numbers carrying an absolute error
// bound. Values are MPFR floats; the bound is a single double per value,
// propagated conservatively through every operation (coarse interval
// arithmetic, not ball arithmetic).

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace moduli {

inline constexpr int kDefaultPrecision = 256;

class BigReal {
 public:
  BigReal();
  explicit BigReal(int prec);
  BigReal(long double v, int prec);
  BigReal(long long v, int prec);
  BigReal(int v, int prec) : BigReal(static_cast<long long>(v), prec) {}
  BigReal(const mpz_class& v, int prec);
  BigReal(const mpq_class& v, int prec);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  /// Parses a decimal string; the parse rounding is included in the error.
  static BigReal from_string(const std::string& s, int prec);
  static BigReal pi(int prec);

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  /// Absolute error bound.
  double error() const { return err_; }
  /// Copy with `extra` added to the error bound.
  BigReal widened(double extra) const;
  /// Same value with the error bound dropped; callers must supply their own bound.
  BigReal midpoint() const;
  /// Copy rounded to a new precision (rounding error is accounted for).
  BigReal with_precision(int prec) const;

  double to_double() const;
  long double to_long_double() const;
  /// |value| rounded up, as a double.
  double magnitude() const;
  /// |value| + error, rounded up.
  double upper_abs() const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  /// Nearest integer to the value.
  mpz_class round() const;
  std::string to_string(int digits = 20) const;

  mpfr_srcptr raw() const { return v_; }

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& b);
  BigReal& operator-=(const BigReal& b);
  BigReal& operator*=(const BigReal& b);
  BigReal& operator/=(const BigReal& b);

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }

  friend BigReal exp(const BigReal& x);
  friend BigReal log(const BigReal& x);
  friend BigReal sqrt(const BigReal& x);
  friend BigReal sin(const BigReal& x);
  friend BigReal cos(const BigReal& x);
  friend BigReal sinh(const BigReal& x);
  friend BigReal cosh(const BigReal& x);
  friend BigReal abs(const BigReal& x);

 private:
  mpfr_t v_;
  double err_ = 0.0;
};

/// True when |x - target| < tol is certain: the value is within tol of the
/// target and the error bound is at most tol / 2.
bool certainly_within(const BigReal& x, const BigReal& target, double tol);
bool certainly_within(const BigReal& x, long double target, double tol);

class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(int prec) : re_(prec), im_(prec) {}
  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {}

  const BigReal& real() const { return re_; }
  const BigReal& imag() const { return im_; }
  int precision() const;
  /// Largest of the component error bounds.
  double error() const;

  BigComplex conj() const { return {re_, -im_}; }
  BigComplex operator-() const { return {-re_, -im_}; }
  BigComplex& operator+=(const BigComplex& b);
  BigComplex& operator-=(const BigComplex& b);
  BigComplex& operator*=(const BigComplex& b);
  BigComplex& operator*=(const BigReal& b);
  BigComplex& operator/=(const BigComplex& b);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

  BigReal norm() const;  // |z|^2
  BigReal abs() const;

 private:
  BigReal re_;
  BigReal im_;
};

BigComplex exp(const BigComplex& z);
/// Principal square root; requires Re(z) > 0 or a nonzero imaginary part.
BigComplex sqrt(const BigComplex& z);
/// e(z) = exp(2 pi i z).
BigComplex expi2pi(const BigComplex& z);

}  // namespace moduli
