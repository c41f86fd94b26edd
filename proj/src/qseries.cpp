#include "moduli/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "moduli/errors.hpp"
#include "moduli/kloosterman.hpp"

namespace moduli {

namespace {

using ZVec = std::vector<mpz_class>;

bool all_integral(const std::vector<mpq_class>& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

ZVec numerators(const std::vector<mpq_class>& v) {
  ZVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num();
  return out;
}

std::vector<mpq_class> to_rational(const ZVec& v) {
  std::vector<mpq_class> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mpq_class(v[i]);
  return out;
}

// First `len` coefficients of the product of two coefficient vectors.
std::vector<mpq_class> convolve(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, std::size_t len) {
  if (all_integral(a) && all_integral(b)) {
    const ZVec za = numerators(a), zb = numerators(b);
    ZVec out(len);
    for (std::size_t i = 0; i < std::min(len, za.size()); ++i) {
      if (za[i] == 0) continue;
      const std::size_t jmax = std::min(zb.size(), len - i);
      for (std::size_t j = 0; j < jmax; ++j) mpz_addmul(out[i + j].get_mpz_t(), za[i].get_mpz_t(), zb[j].get_mpz_t());
    }
    return to_rational(out);
  }
  std::vector<mpq_class> out(len);
  for (std::size_t i = 0; i < std::min(len, a.size()); ++i) {
    if (a[i] == 0) continue;
    const std::size_t jmax = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Coefficients of (sum a_i q^i)^e for a_0 != 0 (J.C.P. Miller recurrence).
std::vector<mpq_class> power_recurrence(const std::vector<mpq_class>& a, i64 e) {
  const std::size_t len = a.size();
  if (len == 0) return {};
  if (all_integral(a) && (a[0] == 1 || a[0] == -1)) {
    const ZVec za = numerators(a);
    ZVec b(len);
    const bool neg = za[0] < 0;
    b[0] = (neg && (e % 2 != 0)) ? -1 : 1;
    mpz_class acc, t;
    for (std::size_t k = 1; k < len; ++k) {
      acc = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (za[j] == 0) continue;
        t = za[j] * b[k - j];
        const i64 w = (e + 1) * static_cast<i64>(j) - static_cast<i64>(k);
        if (w == 0) continue;
        mpz_mul_si(t.get_mpz_t(), t.get_mpz_t(), w);
        acc += t;
      }
      mpz_divexact_ui(b[k].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(k));
      if (neg) b[k] = -b[k];
    }
    return to_rational(b);
  }
  std::vector<mpq_class> b(len);
  mpq_class a0 = a[0];
  b[0] = 1;
  {
    mpq_class base = e >= 0 ? a0 : mpq_class(1) / a0;
    for (i64 i = 0; i < (e >= 0 ? e : -e); ++i) b[0] *= base;
  }
  for (std::size_t k = 1; k < len; ++k) {
    mpq_class acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      const i64 w = (e + 1) * static_cast<i64>(j) - static_cast<i64>(k);
      if (w == 0 || a[j] == 0) continue;
      acc += mpq_class(w) * a[j] * b[k - j];
    }
    b[k] = acc / (mpq_class(static_cast<long>(k)) * a0);
  }
  return b;
}

std::vector<i64> divisor_power_sums(i64 order, int k) {
  std::vector<i64> s(static_cast<std::size_t>(std::max<i64>(order, 0) + 1), 0);
  for (i64 d = 1; d <= order; ++d) {
    i64 p = 1;
    for (int i = 0; i < k; ++i) p *= d;
    for (i64 m = d; m <= order; m += d) s[m] += p;
  }
  return s;
}

}  // namespace

QSeries::QSeries(i64 n0, std::vector<mpq_class> coeffs, std::optional<int> weight_tag)
    : n0_(n0), c_(std::move(coeffs)), weight_(weight_tag) {}

QSeries QSeries::constant(const mpq_class& c, i64 order) {
  if (order < 0) throw InvalidArgument("QSeries::constant: order must be >= 0");
  std::vector<mpq_class> v(static_cast<std::size_t>(order + 1));
  v[0] = c;
  return QSeries(0, std::move(v), 0);
}

QSeries QSeries::euler_product(i64 order) {
  if (order < 0) throw InvalidArgument("euler_product: order must be >= 0");
  std::vector<mpq_class> v(static_cast<std::size_t>(order + 1));
  for (i64 k = 0;; ++k) {
    const i64 e1 = k * (3 * k - 1) / 2;
    const i64 e2 = k * (3 * k + 1) / 2;
    if (e1 > order) break;
    const int s = (k % 2 == 0) ? 1 : -1;
    v[e1] = s;
    if (k > 0 && e2 <= order) v[e2] = s;
  }
  return QSeries(0, std::move(v));
}

mpq_class QSeries::coeff(i64 m) const {
  if (m < n0_) return 0;
  if (m > order()) throw InvalidArgument("QSeries::coeff: exponent " + std::to_string(m) + " beyond truncation order");
  return c_[static_cast<std::size_t>(m - n0_)];
}

bool QSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

bool QSeries::is_integral() const { return all_integral(c_); }

QSeries QSeries::truncated(i64 order) const {
  QSeries r = *this;
  const i64 len = std::max<i64>(0, order - n0_ + 1);
  if (len < static_cast<i64>(r.c_.size())) r.c_.resize(static_cast<std::size_t>(len));
  return r;
}

QSeries QSeries::shifted(i64 k) const {
  QSeries r = *this;
  r.n0_ += k;
  return r;
}

QSeries QSeries::dilated(i64 m) const {
  if (m < 1) throw InvalidArgument("QSeries::dilated: factor must be positive");
  if (c_.empty()) return QSeries(n0_ * m, {}, weight_);
  std::vector<mpq_class> v(static_cast<std::size_t>((static_cast<i64>(c_.size()) - 1) * m + 1));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * static_cast<std::size_t>(m)] = c_[i];
  return QSeries(n0_ * m, std::move(v), weight_);
}

QSeries QSeries::normalized() const {
  std::size_t k = 0;
  while (k + 1 < c_.size() && c_[k] == 0) ++k;
  return QSeries(n0_ + static_cast<i64>(k), std::vector<mpq_class>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()),
                 weight_);
}

QSeries& QSeries::operator+=(const QSeries& b) {
  const i64 lo = std::min(n0_, b.n0_);
  const i64 hi = std::min(order(), b.order());
  std::vector<mpq_class> v(static_cast<std::size_t>(std::max<i64>(0, hi - lo + 1)));
  for (i64 m = lo; m <= hi; ++m) v[m - lo] = coeff(m) + b.coeff(m);
  n0_ = lo;
  c_ = std::move(v);
  if (weight_ != b.weight_) weight_ = (weight_ && b.weight_) ? std::optional<int>(std::max(*weight_, *b.weight_)) : std::nullopt;
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& b) { return *this += -b; }

QSeries& QSeries::operator*=(const mpq_class& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

QSeries QSeries::operator-() const {
  QSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  if (a.c_.empty() || b.c_.empty()) return QSeries(a.n0_ + b.n0_, {});
  const i64 n0 = a.n0_ + b.n0_;
  const i64 ord = std::min(a.order() + b.n0_, b.order() + a.n0_);
  const std::size_t len = static_cast<std::size_t>(ord - n0 + 1);
  std::optional<int> w;
  if (a.weight_ && b.weight_) w = *a.weight_ + *b.weight_;
  return QSeries(n0, convolve(a.c_, b.c_, len), w);
}

QSeries QSeries::inverse() const {
  if (c_.empty() || c_[0] == 0) throw InvalidArgument("QSeries::inverse: leading coefficient is zero");
  return pow(-1);
}

QSeries QSeries::pow(i64 e) const {
  if (e == 0) return constant(1, std::max<i64>(static_cast<i64>(c_.size()) - 1, 0));
  if (c_.empty() || c_[0] == 0) throw InvalidArgument("QSeries::pow: leading coefficient is zero");
  std::optional<int> w;
  if (weight_) w = static_cast<int>(*weight_ * e);
  QSeries r(n0_ * e, power_recurrence(c_, e), w);
  return r;
}

QSeries eta_quotient(const std::map<i64, i64>& exponents, i64 order) {
  i64 s = 0, wsum = 0;
  for (const auto& [m, r] : exponents) {
    if (m < 1) throw InvalidArgument("eta_quotient: levels must be positive");
    s += m * r;
    wsum += r;
  }
  if (s % 24 != 0) throw InvalidArgument("eta_quotient: leading exponent is not an integer");
  const i64 n0 = s / 24;
  if (order < n0) throw InvalidArgument("eta_quotient: order below leading exponent");
  const i64 len = order - n0 + 1;
  QSeries prod = QSeries::constant(1, len - 1);
  for (const auto& [m, r] : exponents) {
    if (r == 0) continue;
    const QSeries e = QSeries::euler_product((len - 1) / m + 1).dilated(m).truncated(len - 1);
    prod = (prod * e.pow(r)).truncated(len - 1);
  }
  prod = prod.shifted(n0);
  prod.set_weight_tag(static_cast<int>(std::max<i64>(0, (wsum + 1) / 2)));
  return prod;
}

QSeries e4_series(i64 order) {
  const auto s3 = divisor_power_sums(order, 3);
  std::vector<mpq_class> v(static_cast<std::size_t>(order + 1));
  v[0] = 1;
  for (i64 m = 1; m <= order; ++m) v[m] = mpq_class(mpz_class(240) * mpz_class(static_cast<long>(s3[m])));
  return QSeries(0, std::move(v), 4);
}

QSeries e2_series(i64 order) {
  if (order < 0) throw InvalidArgument("e2_series: order must be >= 0");
  const auto s1 = divisor_power_sums(order, 1);
  std::vector<mpq_class> v(static_cast<std::size_t>(order + 1));
  v[0] = 1;
  for (i64 m = 1; m <= order; ++m) v[m] = mpq_class(-24 * s1[m]);
  return QSeries(0, std::move(v), 2);
}

QSeries delta_series(i64 order) {
  QSeries d = eta_quotient({{1, 24}}, order);
  d.set_weight_tag(12);
  return d;
}

QSeries j_series(i64 order) {
  if (order < -1) throw InvalidArgument("j_series: order must be >= -1");
  const i64 t = order + 1;
  const QSeries e4 = e4_series(t);
  const QSeries inv_eta24 = QSeries::euler_product(t).pow(-24);
  QSeries j = (e4 * e4 * e4 * inv_eta24).truncated(t).shifted(-1);
  j.set_weight_tag(0);
  return j;
}

QSeries J_series(i64 order) {
  QSeries j = j_series(order);
  return j - QSeries::constant(744, std::max<i64>(order, 0));
}

const std::vector<i64>& genus_zero_levels() {
  static const std::vector<i64> levels{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25};
  return levels;
}

bool is_genus_zero_level(i64 N) {
  const auto& l = genus_zero_levels();
  return std::find(l.begin(), l.end(), N) != l.end();
}

const std::map<i64, i64>& hauptmodul_eta_exponents(i64 N) {
  static const std::map<i64, std::map<i64, i64>> table{
      {1, {}},
      {2, {{1, 24}, {2, -24}}},
      {3, {{1, 12}, {3, -12}}},
      {4, {{1, 8}, {4, -8}}},
      {5, {{1, 6}, {5, -6}}},
      {6, {{1, 5}, {2, -1}, {3, 1}, {6, -5}}},
      {7, {{1, 4}, {7, -4}}},
      {8, {{1, 4}, {2, -2}, {4, 2}, {8, -4}}},
      {9, {{1, 3}, {9, -3}}},
      {10, {{1, 3}, {2, -1}, {5, 1}, {10, -3}}},
      {12, {{2, -2}, {4, 4}, {6, 2}, {12, -4}}},
      {13, {{1, 2}, {13, -2}}},
      {16, {{1, 2}, {2, -1}, {8, 1}, {16, -2}}},
      {18, {{1, 2}, {2, -1}, {3, -1}, {6, 1}, {9, 1}, {18, -2}}},
      {25, {{1, 1}, {25, -1}}},
  };
  const auto it = table.find(N);
  if (it == table.end())
    throw InvalidArgument("level " + std::to_string(N) + " is not a genus zero level for Gamma0(N)");
  return it->second;
}

mpq_class hauptmodul_shift(i64 N) {
  if (N == 1) return 0;
  return eta_quotient(hauptmodul_eta_exponents(N), 0).coeff(0);
}

mpq_class eta_quotient_cusp_order(const std::map<i64, i64>& exponents, i64 N, i64 c) {
  if (c < 1 || N % c != 0) throw InvalidArgument("eta_quotient_cusp_order: c must divide N");
  mpq_class s = 0;
  for (const auto& [delta, r] : exponents) {
    const i64 g = std::gcd(c, delta);
    mpq_class term(g * g * r, delta);
    term.canonicalize();
    s += term;
  }
  mpq_class scale(N, 24 * std::gcd(c, N / c) * c);
  scale.canonicalize();
  return s * scale;
}

QSeries hauptmodul(i64 N, i64 order) {
  if (N == 1) {
    QSeries J = J_series(order);
    J.set_weight_tag(0);
    return J;
  }
  const auto& ex = hauptmodul_eta_exponents(N);
  QSeries f = eta_quotient(ex, order);
  f -= QSeries::constant(f.coeff(0), std::max<i64>(order, 0));
  f.set_weight_tag(0);
  return f;
}

std::vector<mpq_class> faber_polynomial(i64 N, i64 n) {
  if (n < 1) throw InvalidArgument("faber_polynomial: n must be >= 1");
  const QSeries f = hauptmodul(N, n);
  std::vector<QSeries> powers{QSeries::constant(1, n)};
  for (i64 k = 1; k <= n; ++k) powers.push_back(powers.back() * f);
  std::vector<mpq_class> p(static_cast<std::size_t>(n + 1));
  p[n] = 1;
  QSeries g = powers[n];
  for (i64 e = -n + 1; e <= 0; ++e) {
    const mpq_class c = g.coeff(e);
    if (c == 0) continue;
    p[-e] -= c;
    g -= powers[-e] * c;
  }
  return p;
}

QSeries niebur_qexp(i64 N, i64 n, i64 order) {
  if (n < 1) throw InvalidArgument("niebur_qexp: n must be >= 1");
  if (!is_genus_zero_level(N))
    throw InvalidArgument("niebur_qexp: level " + std::to_string(N) + " is not genus zero");
  const std::vector<mpq_class> p = faber_polynomial(N, n);
  const i64 t = std::max<i64>(order, 0);
  const QSeries f = hauptmodul(N, t + n);
  QSeries acc = QSeries::constant(p[0] + niebur_constant(N, n), t);
  QSeries fk = QSeries::constant(1, t + n);
  for (i64 k = 1; k <= n; ++k) {
    fk = fk * f;
    if (p[k] != 0) acc += (fk * p[k]).truncated(t);
  }
  acc = acc.normalized().truncated(t);
  acc.set_weight_tag(0);
  return acc;
}

QSeries derivative(const QSeries& s, int k) {
  if (k < 1) throw InvalidArgument("derivative: order must be >= 1");
  std::vector<mpq_class> v = s.coefficients();
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_class m = s.leading() + static_cast<i64>(i);
    mpz_class mk = 1;
    for (int j = 0; j < k; ++j) mk *= m;
    v[i] *= mk;
  }
  return QSeries(s.leading(), std::move(v), s.weight_tag().value_or(0) + 2 * k);
}

namespace {

struct Majorant {
  long double log_c = -std::numeric_limits<long double>::infinity();
  long double pole = 0;
  long double w = 0;

  long double log_g(long double m) const { return w * std::log(m) + 4 * M_PIl * std::sqrt(pole * m); }
};

long double log_abs(const mpq_class& x) {
  if (x == 0) return -std::numeric_limits<long double>::infinity();
  long en, ed;
  const double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(std::fabs(static_cast<long double>(mn) / md)) + static_cast<long double>(en - ed) * M_LN2l;
}

Majorant fit_majorant(const QSeries& s) {
  Majorant mj;
  mj.pole = static_cast<long double>(std::max<i64>(0, -s.leading()));
  mj.w = static_cast<long double>(std::max(0, s.weight_tag().value_or(0)));
  const i64 hi = s.order();
  const i64 lo = std::max<i64>({1, s.leading(), hi - 19});
  for (i64 m = lo; m <= hi; ++m) {
    const long double l = log_abs(s.coefficients()[static_cast<std::size_t>(m - s.leading())]);
    mj.log_c = std::max(mj.log_c, l - mj.log_g(static_cast<long double>(m)));
  }
  mj.log_c += std::log(10.0L);
  return mj;
}

// log of the tail sum over exponents > t.
long double log_tail(const Majorant& mj, long double log_q, i64 t) {
  if (std::isinf(mj.log_c) && mj.log_c < 0) return mj.log_c;
  const i64 m1 = std::max<i64>(t + 1, 1);
  const long double a = mj.log_g(m1), b = mj.log_g(m1 + 1);
  const long double rho = std::exp(b - a + log_q);
  if (!(rho < 1)) return std::numeric_limits<long double>::infinity();
  return mj.log_c + a + static_cast<long double>(m1) * log_q - std::log1p(-rho);
}

}  // namespace

long double series_tail_bound(const QSeries& s, long double abs_q, i64 last_exponent) {
  if (!(abs_q > 0 && abs_q < 1)) return std::numeric_limits<long double>::infinity();
  return std::exp(log_tail(fit_majorant(s), std::log(abs_q), last_exponent));
}

SeriesValue evaluate_series(const QSeries& s, const BigComplex& z, int prec, int derivative_order) {
  if (!(z.imag().sign() > 0) || z.imag().magnitude() <= z.imag().error())
    throw InvalidArgument("evaluate: point must lie in the upper half-plane");
  const long double y = z.imag().to_long_double();
  const long double log_q = -2 * M_PIl * y;
  const Majorant mj = fit_majorant(s);
  const auto& c = s.coefficients();
  const i64 n0 = s.leading();

  // Largest term and an estimate of the value's size.
  long double log_max = -std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i)
    log_max = std::max(log_max, log_abs(c[i]) + static_cast<long double>(n0 + static_cast<i64>(i)) * log_q);
  const long double log_target = -static_cast<long double>(prec) * M_LN2l + std::max(0.0L, log_max);

  i64 t = s.order();
  if (!(log_tail(mj, log_q, t) <= log_target))
    throw InsufficientTruncation("evaluate: tail bound exceeds tolerance at truncation order " +
                                 std::to_string(s.order()) + " for Im z = " + std::to_string(static_cast<double>(y)));
  // Shortest truncation meeting the target.
  i64 lo = std::max<i64>(n0, 0), hi = t;
  while (lo < hi) {
    const i64 mid = lo + (hi - lo) / 2;
    if (log_tail(mj, log_q, mid) <= log_target)
      hi = mid;
    else
      lo = mid + 1;
  }
  t = lo;
  const long double tail = std::exp(log_tail(mj, log_q, t));

  const int guard = 32 + static_cast<int>(std::max(0.0L, log_max / M_LN2l));
  const int wp = prec + guard;
  BigComplex zz(z.real().with_precision(wp), z.imag().with_precision(wp));
  const BigComplex q_ball = expi2pi(zz);
  // Horner on midpoints; componentwise error propagation through t complex
  // products overestimates badly, so the bound is formed directly below.
  const BigComplex q(q_ball.real().midpoint(), q_ball.imag().midpoint());
  BigComplex acc(wp);
  for (i64 m = t; m >= n0; --m) {
    acc *= q;
    const mpq_class& cm = c[static_cast<std::size_t>(m - n0)];
    if (cm != 0) acc += BigComplex(BigReal(cm, wp).midpoint(), BigReal(wp));
  }
  if (n0 < 0) {
    const BigComplex qinv = expi2pi(-zz);
    const BigComplex qinv_mid(qinv.real().midpoint(), qinv.imag().midpoint());
    for (i64 k = 0; k < -n0; ++k) acc *= qinv_mid;
  } else {
    for (i64 k = 0; k < n0; ++k) acc *= q;
  }
  // Rounding: each step is a few correctly rounded operations on terms
  // bounded by sum |c_k| r^k. Input error: |q - q_ball| <= delta moves the
  // value by at most sum |k| |c_k| r^(k-1) delta on the annulus.
  const long double abs_q = q.abs().to_long_double();
  const long double delta = std::sqrt(2.0L) * static_cast<long double>(q_ball.error());
  const long double log_hi = std::log(abs_q + delta), log_lo = std::log(std::max(abs_q - delta, abs_q / 2));
  long double mass = 0, slope = 0;
  for (i64 m = n0; m <= t; ++m) {
    const mpq_class& cm = c[static_cast<std::size_t>(m - n0)];
    if (cm == 0) continue;
    const long double lc = log_abs(cm);
    mass += std::exp(lc + static_cast<long double>(m) * (m >= 0 ? log_hi : log_lo));
    if (m != 0)
      slope += std::exp(lc + std::log(static_cast<long double>(m < 0 ? -m : m)) +
                        static_cast<long double>(m - 1) * (m >= 1 ? log_hi : log_lo));
  }
  const long double rounding = std::ldexp(mass * static_cast<long double>(8 * (t - n0 + 4)), -wp);
  const double tb = static_cast<double>(std::min<long double>(tail, std::numeric_limits<double>::max()));
  const double eb = static_cast<double>(
      std::min<long double>(tail + rounding + slope * delta, std::numeric_limits<double>::max()));
  acc = BigComplex(acc.real().midpoint().widened(eb), acc.imag().midpoint().widened(eb));
  if (derivative_order > 0) {
    const BigReal twopi = BigReal::pi(wp) * BigReal(2LL, wp);
    BigReal f(1LL, wp);
    for (int k = 0; k < derivative_order; ++k) f *= twopi;
    acc *= f;
    for (int k = 0; k < derivative_order % 4; ++k) acc = BigComplex(-acc.imag(), acc.real());
  }
  return {std::move(acc), t - n0 + 1, tb};
}

BigComplex evaluate(const QSeries& s, const BigComplex& z, int prec, int derivative_order) {
  return evaluate_series(s, z, prec, derivative_order).value;
}

}  // namespace moduli
