#pragma once

// Exact Laurent q-expansions with rational coefficients, truncated at a
// known order, plus numerical evaluation at points of the upper half-plane
// with a tail bound.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "moduli/arith.hpp"
#include "moduli/bigfloat.hpp"

namespace moduli {

class QSeries {
 public:
  QSeries() = default;
  /// Coefficients of q^n0, q^(n0+1), ..., known exactly through q^(n0 + size - 1).
  QSeries(i64 n0, std::vector<mpq_class> coeffs, std::optional<int> weight_tag = std::nullopt);
  /// The constant c, known through q^order.
  static QSeries constant(const mpq_class& c, i64 order);
  /// Pentagonal-number expansion of prod_{k >= 1} (1 - q^k) through q^order.
  static QSeries euler_product(i64 order);

  i64 leading() const { return n0_; }
  /// Highest exponent with a known coefficient.
  i64 order() const { return n0_ + static_cast<i64>(c_.size()) - 1; }
  std::optional<int> weight_tag() const { return weight_; }
  void set_weight_tag(std::optional<int> w) { weight_ = w; }

  /// Coefficient of q^m: zero below the leading exponent, throws above the order.
  mpq_class coeff(i64 m) const;
  const std::vector<mpq_class>& coefficients() const { return c_; }
  bool is_zero() const;
  bool is_integral() const;

  /// Drops coefficients beyond q^order.
  QSeries truncated(i64 order) const;
  /// Multiplies by q^k.
  QSeries shifted(i64 k) const;
  /// Substitutes q -> q^m.
  QSeries dilated(i64 m) const;
  /// Strips vanishing leading coefficients.
  QSeries normalized() const;

  QSeries& operator+=(const QSeries& b);
  QSeries& operator-=(const QSeries& b);
  QSeries& operator*=(const mpq_class& s);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const mpq_class& s) { return a *= s; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries operator-() const;

  /// Multiplicative inverse; the leading coefficient must be nonzero.
  QSeries inverse() const;
  /// Integer power (negative exponents go through the inverse).
  QSeries pow(i64 e) const;

 private:
  i64 n0_ = 0;
  std::vector<mpq_class> c_;
  std::optional<int> weight_;
};

/// prod_m eta(m tau)^(r_m) through q^order; the leading exponent
/// sum m r_m / 24 must be an integer.
QSeries eta_quotient(const std::map<i64, i64>& exponents, i64 order);

/// E4 = 1 + 240 sum sigma_3(m) q^m.
QSeries e4_series(i64 order);
/// E2 = 1 - 24 sum sigma(m) q^m.
QSeries e2_series(i64 order);
/// Delta = eta^24.
QSeries delta_series(i64 order);
/// j = E4^3 / Delta.
QSeries j_series(i64 order);
/// J = j - 744.
QSeries J_series(i64 order);

bool is_genus_zero_level(i64 N);
const std::vector<i64>& genus_zero_levels();
/// Eta-quotient exponents of the Hauptmodul table (empty map for N = 1).
const std::map<i64, i64>& hauptmodul_eta_exponents(i64 N);
/// Constant term of the raw eta quotient (the Hauptmodul is the quotient minus this).
mpq_class hauptmodul_shift(i64 N);
/// Order of the eta quotient at the cusp 1/c (c | N) in the local uniformizer.
mpq_class eta_quotient_cusp_order(const std::map<i64, i64>& exponents, i64 N, i64 c);

/// Hauptmodul for Gamma0(N) normalized to q^-1 + 0 + O(q).
QSeries hauptmodul(i64 N, i64 order);

/// Coefficients p_0..p_n of the monic degree-n polynomial P with
/// P(hauptmodul) = q^-n + O(q).
std::vector<mpq_class> faber_polynomial(i64 N, i64 n);

/// j_{N,n}: the Faber polynomial in the Hauptmodul plus the constant c_N(n, 0).
QSeries niebur_qexp(i64 N, i64 n, i64 order);

/// (q d/dq)^k: the coefficient of q^m is multiplied by m^k.
QSeries derivative(const QSeries& s, int k);

struct SeriesValue {
  BigComplex value;
  i64 terms_used = 0;
  double tail_bound = 0;
};

/// sum c_m e(m z) over the known coefficients, with the tail past the
/// truncation bounded by C g(m) |q|^m, C fitted (factor 10) on the last 20
/// coefficients, g(m) = m^w exp(4 pi sqrt(p m)) for a pole of order p and
/// weight tag w. `derivative_order` k multiplies the result by (2 pi i)^k.
/// Throws InsufficientTruncation when the tail exceeds 2^-prec max(1, |value|).
SeriesValue evaluate_series(const QSeries& s, const BigComplex& z, int prec, int derivative_order = 0);
BigComplex evaluate(const QSeries& s, const BigComplex& z, int prec = kDefaultPrecision, int derivative_order = 0);

/// Upper bound for the tail beyond the given exponent (long double, may be +inf).
long double series_tail_bound(const QSeries& s, long double abs_q, i64 last_exponent);

}  // namespace moduli
