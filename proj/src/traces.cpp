#include "moduli/traces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "moduli/errors.hpp"
#include "moduli/genus_character.hpp"
#include "moduli/kloosterman.hpp"
#include "moduli/modular_values.hpp"
#include "moduli/qseries.hpp"

namespace moduli {

namespace {

void require_multiple(const DiscriminantSplit& split, i64 a, const char* what) {
  if (a <= 0 || a % split.N != 0)
    throw InvalidArgument(std::string(what) + ": a must be a positive multiple of N");
}

// b in [0, 2a) with b^2 = disc mod 4a.
std::vector<i64> half_roots(i64 disc, i64 a, const std::vector<std::pair<i64, int>>& factors_4a) {
  std::vector<i64> r = square_roots_mod(disc, 4 * a, factors_4a);
  r.erase(std::remove_if(r.begin(), r.end(), [a](i64 b) { return b >= 2 * a; }), r.end());
  return r;
}

std::vector<std::pair<i64, int>> times_four(std::vector<std::pair<i64, int>> f) {
  if (!f.empty() && f.front().first == 2)
    f.front().second += 2;
  else
    f.insert(f.begin(), {2, 2});
  return f;
}

BigReal big(long long v, int prec) { return BigReal(v, prec); }

}  // namespace

std::string to_string(TraceMethod m) { return m == TraceMethod::cm_evaluation ? "cm_evaluation" : "sinh_series"; }

BigReal exp_sum(const DiscriminantSplit& split, i64 a, i64 n, int prec) {
  require_multiple(split, a, "exp_sum");
  const i64 disc = split.discriminant();
  const int wp = prec + 16;
  const BigReal pi = BigReal::pi(wp);
  BigReal re(wp), im(wp);
  for (i64 b : half_roots(disc, a, times_four(factorize(a)))) {
    const int x = chi(QuadraticForm{a, b, (b * b - disc) / (4 * a)}, split);
    if (x == 0) continue;
    // e(nb / 2a) = exp(pi i n b / a), argument reduced mod 2a.
    const i64 k = mod(mulmod(n, b, 2 * a), 2 * a);
    const BigReal arg = pi * big(k, wp) / big(a, wp);
    if (x > 0) {
      re += cos(arg);
      im += sin(arg);
    } else {
      re -= cos(arg);
      im -= sin(arg);
    }
  }
  if (im.upper_abs() > std::ldexp(1.0, -prec / 2))
    throw ComputationError("exp_sum: imaginary part does not vanish");
  return re.with_precision(prec);
}

BigReal exp_sum_via_kstar(const DiscriminantSplit& split, i64 a, i64 n, int prec) {
  require_multiple(split, a, "exp_sum_via_kstar");
  if (n < 1) throw InvalidArgument("exp_sum_via_kstar: n must be positive");
  const int wp = prec + 16;
  BigReal re(wp), im(wp);
  for (i64 r : divisors(std::gcd(a, n))) {
    const int dr = kronecker(split.D, r);
    const int four = 1 + kronecker(4, a / r);
    if (dr == 0 || four == 0) continue;
    const i64 nn = (n / r) * (n / r) * split.D;
    const BigComplex k = half_integral_kloosterman(split.d, nn, 4 * a / r, wp);
    const BigReal scale = sqrt(big(r, wp) / big(a, wp)) * big(dr * four, wp);
    re += k.real() * scale;
    im += k.imag() * scale;
  }
  // (1 - i)/4 (re + i im) = ((re + im) + i (im - re)) / 4
  const BigReal four(4LL, wp);
  BigReal out_re = (re + im) / four;
  const BigReal out_im = (im - re) / four;
  if (out_im.upper_abs() > std::ldexp(1.0, -prec / 2))
    throw ComputationError("exp_sum_via_kstar: imaginary part does not vanish");
  return out_re.with_precision(prec);
}

TraceReport twisted_trace_cm(const DiscriminantSplit& split, const ClassFunction& g, int prec) {
  const auto classes = enumerate_classes(split, prec);
  const int wp = prec + 16;
  BigComplex sum(wp);
  for (const HeegnerClass& c : classes) {
    const int x = chi(c.rep, split);
    if (x == 0) continue;
    BigComplex v = g(c, wp);
    v *= big(x, wp) / big(c.w, wp);
    sum += v;
  }
  TraceReport r;
  r.method = TraceMethod::cm_evaluation;
  r.precision = prec;
  r.classes = classes.size();
  r.value = sum.real().with_precision(prec);
  r.err = r.value.error();
  r.imaginary_part = sum.imag().to_double();
  if (sum.imag().magnitude() > std::max(1e3 * sum.imag().error(), 1e-30 * std::max(1.0, sum.real().magnitude())))
    throw ComputationError("twisted_trace_cm: imaginary part does not vanish");
  return r;
}

TraceReport twisted_trace_cm(const DiscriminantSplit& split, i64 n, int prec) {
  if (n < 1) throw InvalidArgument("twisted_trace_cm: n must be positive");
  if (!is_genus_zero_level(split.N))
    throw InvalidArgument("twisted_trace_cm: CM evaluation needs a genus zero level");
  const i64 N = split.N;
  return twisted_trace_cm(
      split,
      [N, n](const HeegnerClass& c, int p) {
        if (N == 1) return niebur_value(1, n, heegner_point(reduce(c.rep).form, p), p);
        return niebur_value(N, n, c.z, p);
      },
      prec);
}

mpq_class class_number(const DiscriminantSplit& split) {
  mpq_class h = 0;
  for (const ClassForm& c : enumerate_class_forms(split.discriminant(), split.N)) {
    const int x = chi(c.rep, split);
    if (x != 0) h += mpq_class(x, c.w);
  }
  h.canonicalize();
  return h;
}

std::vector<std::vector<TraceReport>> twisted_trace_series_multi(const DiscriminantSplit& split,
                                                                 const std::vector<i64>& ns,
                                                                 const std::vector<i64>& checkpoints,
                                                                 const SeriesOptions& opts) {
  if (ns.empty() || checkpoints.empty()) throw InvalidArgument("twisted_trace_series: nothing requested");
  for (i64 n : ns)
    if (n < 1) throw InvalidArgument("twisted_trace_series: n must be positive");
  for (i64 A : checkpoints)
    if (A < 1) throw InvalidArgument("twisted_trace_series: A_max must be positive");
  if (opts.blocks < 1) throw InvalidArgument("twisted_trace_series: blocks must be positive");

  const i64 disc = split.discriminant();
  const i64 N = split.N;
  const i64 a_top = *std::max_element(checkpoints.begin(), checkpoints.end());
  const int prec = opts.prec;
  const int blocks = opts.blocks;
  const PrimeSieve sieve(a_top);
  const long double root_disc = std::sqrt(static_cast<long double>(-disc));
  const BigReal big_pi = BigReal::pi(prec + 64);
  const BigReal big_root = sqrt(big(-disc, prec + 64));

  struct Window {
    std::vector<BigReal> head_sum;
    std::vector<long double> tail_sum;
    std::vector<i64> count;
  };
  const std::size_t nn = ns.size(), nc = checkpoints.size();
  std::vector<BigReal> head(nn, BigReal(prec));
  std::vector<long double> tail(nn, 0);
  std::vector<std::vector<Window>> win(nn, std::vector<Window>(nc));
  for (auto& row : win)
    for (auto& w : row) {
      w.head_sum.assign(static_cast<std::size_t>(blocks), BigReal(prec));
      w.tail_sum.assign(static_cast<std::size_t>(blocks), 0);
      w.count.assign(static_cast<std::size_t>(blocks), 0);
    }
  std::vector<std::vector<TraceReport>> out(nn, std::vector<TraceReport>(nc));

  std::vector<std::pair<i64, int>> chis;
  for (i64 a = N; a <= a_top; a += N) {
    chis.clear();
    for (i64 b : half_roots(disc, a, times_four(sieve.factorize(a)))) {
      const int x = split.D == 1 ? 1 : chi(QuadraticForm{a, b, (b * b - disc) / (4 * a)}, split);
      if (x != 0) chis.emplace_back(b, x);
    }
    for (std::size_t i = 0; i < nn; ++i) {
      const i64 n = ns[i];
      if (!chis.empty()) {
        const long double xarg = M_PIl * static_cast<long double>(n) * root_disc / static_cast<long double>(a);
        if (a <= opts.head_a || xarg > 1) {
          // sinh can be huge here; raise the precision so the absolute error stays small.
          const int wp = prec + 32 + static_cast<int>(xarg / M_LN2l);
          const BigReal pi = big_pi.with_precision(wp);
          BigReal s(wp);
          for (const auto& [b, x] : chis) {
            const i64 k = mod(mulmod(n, b, 2 * a), 2 * a);
            const BigReal c = cos(pi * big(k, wp) / big(a, wp));
            if (x > 0)
              s += c;
            else
              s -= c;
          }
          const BigReal arg = pi * big(n, wp) * big_root.with_precision(wp) / big(a, wp);
          head[i] += big(2, wp) * s * sinh(arg);
        } else {
          long double s = 0;
          for (const auto& [b, x] : chis) {
            const i64 k = mod(mulmod(n, b, 2 * a), 2 * a);
            s += x * std::cos(M_PIl * static_cast<long double>(k) / static_cast<long double>(a));
          }
          tail[i] += 2 * s * std::sinh(xarg);
        }
      }
      for (std::size_t j = 0; j < nc; ++j) {
        const i64 A = checkpoints[j];
        const i64 lo = A / 2;
        if (a <= lo || a > A) continue;
        Window& w = win[i][j];
        std::size_t bi = static_cast<std::size_t>(static_cast<long double>(a - lo - 1) / static_cast<long double>(A - lo) * blocks);
        bi = std::min<std::size_t>(bi, static_cast<std::size_t>(blocks - 1));
        w.head_sum[bi] += head[i];
        w.tail_sum[bi] += tail[i];
        w.count[bi] += 1;
      }
    }
    for (std::size_t j = 0; j < nc; ++j) {
      // Finalize at the last multiple of N not exceeding this checkpoint.
      if (checkpoints[j] / N * N != a) continue;
      for (std::size_t i = 0; i < nn; ++i) {
        TraceReport& r = out[i][j];
        r.method = TraceMethod::sinh_series;
        r.precision = prec;
        r.a_max = checkpoints[j];
        r.blocks = blocks;
        r.partial_sum = tail[i];
        const Window& w = win[i][j];
        std::vector<BigReal> avgs;
        for (int b = 0; b < blocks; ++b) {
          if (w.count[b] == 0) continue;
          const long double cnt = static_cast<long double>(w.count[b]);
          avgs.push_back(w.head_sum[b] / big(w.count[b], prec) + BigReal(w.tail_sum[b] / cnt, prec));
        }
        if (avgs.empty()) {
          r.value = head[i] + BigReal(tail[i], prec);
          r.err = 0;
          continue;
        }
        BigReal mean(prec);
        for (const auto& v : avgs) mean += v;
        mean /= big(static_cast<long long>(avgs.size()), prec);
        const auto [mn, mx] = std::minmax_element(avgs.begin(), avgs.end(), [](const BigReal& x, const BigReal& y) {
          return (x - y).sign() < 0;
        });
        r.value = mean;
        r.err = (*mx - *mn).to_double();
      }
    }
  }
  // Checkpoints below N (no multiple of N in range) report the empty sum.
  for (std::size_t j = 0; j < nc; ++j) {
    if (checkpoints[j] >= N) continue;
    for (std::size_t i = 0; i < nn; ++i) {
      TraceReport& r = out[i][j];
      r.method = TraceMethod::sinh_series;
      r.precision = prec;
      r.a_max = checkpoints[j];
      r.blocks = blocks;
      r.value = BigReal(prec);
    }
  }
  return out;
}

TraceReport twisted_trace_series(const DiscriminantSplit& split, i64 n, const SeriesOptions& opts) {
  return twisted_trace_series_multi(split, {n}, {opts.a_max}, opts).front().front();
}

FstarCoefficient fstar_coefficient(const DiscriminantSplit& split, i64 n, FourierRoute route,
                                   const SeriesOptions& series_opts, int prec) {
  if (n < 0) throw InvalidArgument("fstar_coefficient: n must be >= 0");
  FstarCoefficient f;
  f.n = n;
  if (n == 0) {
    f.nonholomorphic = true;
    const mpq_class h = class_number(split);
    const BigReal three_h = BigReal(mpq_class(3 * h), prec);
    f.inv_v_coefficient = -(three_h / (BigReal::pi(prec) * big(index_gamma0(split.N), prec)));
    f.constant = 0;
    f.value = BigReal(prec);
    f.err = f.inv_v_coefficient.error();
    return f;
  }
  if (route == FourierRoute::cm || route == FourierRoute::both) {
    const TraceReport cm = twisted_trace_cm(split, n, prec);
    f.value = -cm.value;
    f.err = cm.err;
  }
  if (route == FourierRoute::series || route == FourierRoute::both) {
    SeriesOptions o = series_opts;
    o.prec = prec;
    TraceReport s = twisted_trace_series(split, n, o);
    s.value = -s.value;
    if (route == FourierRoute::series) {
      f.value = s.value;
      f.err = s.err;
    }
    f.series = std::move(s);
  }
  return f;
}

FdCoefficient fd_coefficient(i64 d, i64 n, int prec) {
  if (n < 0) throw InvalidArgument("fd_coefficient: n must be >= 0");
  if (d >= 0) throw InvalidArgument("fd_coefficient: d must be a negative discriminant");
  const DiscriminantSplit split = DiscriminantSplit::make(d, 1, 1);
  const mpq_class h = class_number(split);
  FdCoefficient f;
  f.n = n;
  if (n == 0) {
    f.exact = -h;
    f.value = BigReal(mpq_class(-h), prec);
    f.err = f.value.error();
    return f;
  }
  const TraceReport tr = twisted_trace_cm(split, n, prec);
  f.value = -tr.value + BigReal(mpq_class(24 * h * sigma(n)), prec);
  f.err = f.value.error();
  // The weights 1/w_Q and H have denominators dividing 6; snap when the ball
  // isolates a single sixth.
  const BigReal six_x = f.value * big(6, prec);
  const double tol = std::max(1e-20, 8 * six_x.error());
  if (six_x.error() < 1e-3) {
    const mpz_class k = six_x.round();
    if (abs(six_x - BigReal(k, prec)).upper_abs() < tol) {
      f.exact = mpq_class(k, 6);
      f.exact->canonicalize();
    }
  }
  return f;
}

}  // namespace moduli
