#include "moduli/modular_values.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "moduli/errors.hpp"
#include "moduli/kloosterman.hpp"

namespace moduli {

namespace {

constexpr i64 kInitialOrder = 64;
constexpr i64 kMaxOrder = 1 << 13;

struct CacheEntry {
  std::shared_ptr<const QSeries> series;
};

std::mutex g_cache_mutex;
std::map<std::string, CacheEntry>& cache() {
  static std::map<std::string, CacheEntry> c;
  return c;
}

std::shared_ptr<const QSeries> cached_series(const std::string& key, QSeries (*make)(i64), i64 min_order) {
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end() && it->second.series->order() >= min_order) return it->second.series;
  }
  auto s = std::make_shared<const QSeries>(make(min_order));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto& slot = cache()[key];
  if (!slot.series || slot.series->order() < s->order()) slot.series = s;
  return slot.series;
}

BigComplex cplx(long long re, long long im, int prec) { return {BigReal(re, prec), BigReal(im, prec)}; }

// e(k/24) for integer k.
BigComplex root24(i64 k, int prec) {
  const BigReal arg = BigReal::pi(prec) * BigReal(static_cast<long long>(mod(k, 24)), prec) / BigReal(12LL, prec);
  return {cos(arg), sin(arg)};
}

QSeries J_make(i64 order) { return J_series(order); }

template <int K>
QSeries J_derivative_make(i64 order) {
  return derivative(J_series(order), K);
}

QSeries niebur_make_1(i64 order) { return niebur_qexp(1, 1, order); }
QSeries niebur_make_2(i64 order) { return niebur_qexp(1, 2, order); }
QSeries niebur_make_3(i64 order) { return niebur_qexp(1, 3, order); }

}  // namespace

SeriesValue evaluate_cached(const std::string& key, QSeries (*make)(i64), const BigComplex& z, int prec,
                            int derivative_order) {
  for (i64 order = kInitialOrder;; order *= 2) {
    const auto s = cached_series(key, make, order);
    try {
      return evaluate_series(*s, z, prec, derivative_order);
    } catch (const InsufficientTruncation&) {
      if (order >= kMaxOrder) throw;
      order = std::max(order, s->order());
    }
  }
}

BigComplex reduce_to_fundamental_domain(const BigComplex& z) {
  BigComplex w = z;
  const int prec = z.precision();
  for (int iter = 0; iter < 10000; ++iter) {
    const long long k = std::llround(w.real().to_double());
    if (k != 0) w -= cplx(k, 0, prec);
    const double x = w.real().to_double(), y = w.imag().to_double();
    if (x * x + y * y >= 1 - 1e-12) return w;
    w = -(cplx(1, 0, prec) / w);
  }
  throw ComputationError("reduce_to_fundamental_domain: no convergence");
}

BigComplex dedekind_eta(const BigComplex& z, int prec) {
  if (!(z.imag().sign() > 0)) throw InvalidArgument("dedekind_eta: point must lie in the upper half-plane");
  const int wp = prec + 32;
  BigComplex w(z.real().with_precision(wp), z.imag().with_precision(wp));
  BigComplex factor = cplx(1, 0, wp);
  const BigComplex minus_i = cplx(0, -1, wp);
  for (int iter = 0;; ++iter) {
    if (iter > 10000) throw ComputationError("dedekind_eta: reduction did not converge");
    const long long k = std::llround(w.real().to_double());
    if (k != 0) {
      // eta(w) = e(k/24) eta(w - k)
      w -= cplx(k, 0, wp);
      factor *= root24(k, wp);
    }
    const double x = w.real().to_double(), y = w.imag().to_double();
    if (x * x + y * y >= 1 - 1e-12) break;
    // eta(w) = eta(-1/w) / sqrt(-i w)
    factor /= sqrt(minus_i * w);
    w = -(cplx(1, 0, wp) / w);
  }
  // Pentagonal series at the reduced point, |q| <= exp(-pi sqrt 3).
  const BigComplex q = expi2pi(w);
  const long double abs_q = std::exp(-2 * M_PIl * w.imag().to_long_double());
  const long double log_target = -static_cast<long double>(wp) * M_LN2l;
  BigComplex sum = cplx(1, 0, wp);
  double tail = 0;
  for (i64 k = 1;; ++k) {
    const i64 e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    const long double log_next = static_cast<long double>(e1) * std::log(abs_q);
    if (log_next < log_target) {
      tail = static_cast<double>(std::exp(log_next) / (1 - abs_q));
      break;
    }
    BigComplex t1 = cplx(1, 0, wp), t2;
    // q^e1 and q^e2 by repeated squaring.
    auto power = [&](i64 e) {
      BigComplex r = cplx(1, 0, wp), b = q;
      while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
      }
      return r;
    };
    t1 = power(e1);
    t2 = power(e2);
    if (k % 2 == 0)
      sum += t1 + t2;
    else
      sum -= t1 + t2;
  }
  sum = BigComplex(sum.real().widened(tail), sum.imag().widened(tail));
  const BigComplex pre = expi2pi(BigComplex(w.real() / BigReal(24LL, wp), w.imag() / BigReal(24LL, wp)));
  const BigComplex r = factor * pre * sum;
  return {r.real().with_precision(prec), r.imag().with_precision(prec)};
}

BigComplex hauptmodul_value(i64 N, const BigComplex& z, int prec) {
  if (N == 1) return J_value(z, prec);
  const auto& ex = hauptmodul_eta_exponents(N);
  const int wp = prec + 32;
  BigComplex v = cplx(1, 0, wp);
  for (const auto& [delta, r] : ex) {
    const BigComplex dz = z * BigReal(static_cast<long long>(delta), wp);
    const BigComplex e = dedekind_eta(dz, wp);
    for (i64 i = 0; i < (r < 0 ? -r : r); ++i) {
      if (r > 0)
        v *= e;
      else
        v /= e;
    }
  }
  v -= BigComplex(BigReal(hauptmodul_shift(N), wp), BigReal(wp));
  return {v.real().with_precision(prec), v.imag().with_precision(prec)};
}

BigComplex J_value(const BigComplex& z, int prec) {
  const BigComplex w = reduce_to_fundamental_domain(z);
  return evaluate_cached("J", &J_make, w, prec).value;
}

BigComplex J_derivative_value(const BigComplex& z, int k, int prec) {
  switch (k) {
    case 0:
      return evaluate_cached("J", &J_make, z, prec).value;
    case 1:
      return evaluate_cached("J'", &J_derivative_make<1>, z, prec, 1).value;
    case 2:
      return evaluate_cached("J''", &J_derivative_make<2>, z, prec, 2).value;
    case 3:
      return evaluate_cached("J'''", &J_derivative_make<3>, z, prec, 3).value;
    default:
      throw InvalidArgument("J_derivative_value: derivative order must be 0..3");
  }
}

BigComplex niebur_value(i64 N, i64 n, const BigComplex& z, int prec) {
  if (n < 1) throw InvalidArgument("niebur_value: n must be >= 1");
  if (!is_genus_zero_level(N)) throw InvalidArgument("niebur_value: level " + std::to_string(N) + " is not genus zero");
  if (N == 1 && n <= 3) {
    static QSeries (*const makers[])(i64) = {&niebur_make_1, &niebur_make_2, &niebur_make_3};
    const BigComplex w = reduce_to_fundamental_domain(z);
    return evaluate_cached("j_1," + std::to_string(n), makers[n - 1], w, prec).value;
  }
  const int wp = prec + 32;
  const BigComplex f = hauptmodul_value(N, z, wp);
  const std::vector<mpq_class> p = faber_polynomial(N, n);
  BigComplex acc(BigReal(p[static_cast<std::size_t>(n)], wp), BigReal(wp));
  for (i64 k = n - 1; k >= 0; --k) {
    acc *= f;
    acc += BigComplex(BigReal(p[static_cast<std::size_t>(k)], wp), BigReal(wp));
  }
  acc += BigComplex(BigReal(niebur_constant(N, n), wp), BigReal(wp));
  return {acc.real().with_precision(prec), acc.imag().with_precision(prec)};
}

}  // namespace moduli
