#include "moduli/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "moduli/errors.hpp"

namespace moduli {

namespace {

constexpr long double kTwoPi = 2 * M_PIl;

// Direct K(m, n; q) for a prime power q, in long double.
long double kloosterman_prime_power(i64 m, i64 n, i64 q, bool prime) {
  m = mod(m, q);
  n = mod(n, q);
  if (q == 1) return 1;
  const double w = 2 * M_PI / static_cast<double>(q);
  long double s = 0;
  if (prime) {
    thread_local std::vector<i64> inv;
    inv.assign(static_cast<std::size_t>(q), 0);
    inv[1] = 1;
    for (i64 i = 2; i < q; ++i) inv[i] = (q - (q / i) * inv[q % i] % q) % q;
    // d and q - d give conjugate terms.
    const i64 half = (q - 1) / 2;
    for (i64 d = 1; d <= half; ++d) {
      const i64 k = static_cast<i64>((static_cast<__int128>(m) * d + static_cast<__int128>(n) * inv[d]) % q);
      s += std::cos(w * static_cast<double>(k));
    }
    s *= 2;
    if (q == 2) s = std::cos(w * static_cast<double>((m + n) % q));
    return s;
  }
  for (i64 d = 1; d < q; ++d) {
    if (std::gcd(d, q) != 1) continue;
    const i64 a = invmod(d, q);
    const i64 k = static_cast<i64>((static_cast<__int128>(m) * d + static_cast<__int128>(n) * a) % q);
    s += std::cos(w * static_cast<double>(k));
  }
  return s;
}

// Ratio a_k(1) / a_{k-1}(1) of successive Hankel coefficients.
BigReal hankel_ratio(int k, int prec) {
  return BigReal(static_cast<long long>(4 - (2 * k - 1) * (2 * k - 1)), prec) /
         BigReal(static_cast<long long>(8 * k), prec);
}

// chi(l) = sqrt(pi) Gamma(l/2 + 1) / Gamma(l/2 + 1/2), in double (an upper bound is all we need).
double chi_factor(int l) {
  return std::sqrt(M_PI) * std::exp(std::lgamma(l / 2.0 + 1) - std::lgamma(l / 2.0 + 0.5)) * (1 + 1e-12);
}

// Power series sum_k s^k (x/2)^(2k+1) / (k! (k+1)!), s = +1 for I1, -1 for J1.
BigReal bessel_series(const BigReal& x, int sign) {
  const int prec = x.precision();
  const double xd = x.to_double();
  // Largest term is about exp(x); J1 loses that many bits to cancellation.
  const int guard = 16 + (sign < 0 ? static_cast<int>(xd / M_LN2) + 8 : 0);
  const int wp = prec + guard;
  const BigReal h = x.with_precision(wp) / BigReal(2LL, wp);
  const BigReal h2 = h * h;
  BigReal term = h;
  BigReal sum = h;
  const double target = std::ldexp(1.0, -prec);
  for (long long k = 0;; ++k) {
    term *= h2;
    term /= BigReal((k + 1) * (k + 2), wp);
    if (sign < 0) term = -term;
    sum += term;
    // Remaining ratio r = (x/2)^2 / ((k+2)(k+3)); once r < 1/2 the tail is at most |term|.
    const double r = (xd / 2) * (xd / 2) / static_cast<double>((k + 2) * (k + 3));
    if (r < 0.5 && term.upper_abs() <= target * std::max(1.0, sum.magnitude())) {
      return sum.widened(term.upper_abs() * r / (1 - r) * 2).with_precision(prec);
    }
  }
}

}  // namespace

BigReal kloosterman(i64 m, i64 n, i64 c, int prec) {
  if (c < 1) throw InvalidArgument("kloosterman: c must be positive");
  const int wp = prec + 16;
  const BigReal twopi = BigReal::pi(wp) * BigReal(2LL, wp);
  std::map<i64, BigReal> cache;
  BigReal s(wp);
  for (i64 d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    const i64 a = c == 1 ? 0 : invmod(d, c);
    const i64 k = mod(mulmod(m, d, c) + mulmod(n, a, c), c);
    auto it = cache.find(k);
    if (it == cache.end())
      it = cache.emplace(k, cos(twopi * BigReal(static_cast<long long>(k), wp) / BigReal(static_cast<long long>(c), wp)))
               .first;
    s += it->second;
  }
  return s.with_precision(prec);
}

long double kloosterman_fast(i64 m, i64 n, i64 c, const std::vector<std::pair<i64, int>>& factors) {
  if (c < 1) throw InvalidArgument("kloosterman_fast: c must be positive");
  long double prod = 1;
  for (const auto& [p, e] : factors) {
    i64 q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    const i64 rest = c / q;
    const i64 u = rest == 1 ? 1 : invmod(mod(rest, q), q);
    prod *= kloosterman_prime_power(mulmod(m, u, q), mulmod(n, u, q), q, e == 1);
    if (prod == 0) break;
  }
  return prod;
}

long double kloosterman_fast(i64 m, i64 n, i64 c) { return kloosterman_fast(m, n, c, factorize(c)); }

BigComplex half_integral_kloosterman(i64 m, i64 n, i64 c, int prec) {
  if (c < 4 || c % 4 != 0) throw InvalidArgument("half_integral_kloosterman: c must be a positive multiple of 4");
  const int wp = prec + 16;
  const BigReal twopi = BigReal::pi(wp) * BigReal(2LL, wp);
  const BigReal cc(static_cast<long long>(c), wp);
  BigReal re(wp), im(wp);
  for (i64 d = 1; d < c; d += 2) {
    if (std::gcd(d, c) != 1) continue;
    const int sym = kronecker(c, d);
    if (sym == 0) continue;
    const i64 a = invmod(d, c);
    const i64 k = mod(mulmod(n, a, c) + mulmod(m, d, c), c);
    const BigReal arg = twopi * BigReal(static_cast<long long>(k), wp) / cc;
    BigReal cr = cos(arg), ci = sin(arg);
    if (d % 4 == 3) {
      // multiply by i
      BigReal t = -ci;
      ci = cr;
      cr = std::move(t);
    }
    if (sym < 0) {
      cr = -cr;
      ci = -ci;
    }
    re += cr;
    im += ci;
  }
  return {re.with_precision(prec), im.with_precision(prec)};
}

BigReal bessel_I1(const BigReal& x) {
  if (x.sign() < 0) throw InvalidArgument("bessel_I1: x must be nonnegative");
  if (x.is_zero()) return x;
  const int prec = x.precision();
  const double xd = x.to_double();
  if (xd > 20) {
    // e^x / sqrt(2 pi x) (sum_{k<l} (-1)^k a_k / x^k + R), |R| <= 2 chi(l) e^{3/(4x)} |a_l| / x^l,
    // plus an allowance of 2 e^{-2x} (relative) for the subdominant exponential.
    const int wp = prec + 16;
    const BigReal xx = x.with_precision(wp);
    BigReal s(wp), t(1LL, wp);  // t = a_k / x^k
    const double target = std::ldexp(1.0, -prec - 2);
    for (int k = 0; k < 4 * static_cast<int>(xd) + 8; ++k) {
      if (k > 0) t = t * hankel_ratio(k, wp) / xx;
      const double rem = 2 * chi_factor(k) * std::exp(0.75 / xd) * t.upper_abs() + 2 * std::exp(-2 * xd);
      if (rem < target) {
        const BigReal pre = exp(xx) / sqrt(BigReal::pi(wp) * BigReal(2LL, wp) * xx);
        return (pre * s.widened(rem)).with_precision(prec);
      }
      if (k % 2 == 0)
        s += t;
      else
        s -= t;
    }
    // The expansion cannot reach the requested precision here; fall through to the series.
  }
  return bessel_series(x, 1);
}

BigReal bessel_J1(const BigReal& x) {
  if (x.sign() < 0) throw InvalidArgument("bessel_J1: x must be nonnegative");
  if (x.is_zero()) return x;
  const int prec = x.precision();
  const double xd = x.to_double();
  if (xd > 20) {
    // sqrt(2/(pi x)) (P cos w - Q sin w), w = x - 3 pi/4; each remainder is at most the first omitted term.
    const int wp = prec + 16;
    const BigReal xx = x.with_precision(wp);
    BigReal P(wp), Q(wp), t(1LL, wp);  // t = a_k / x^k
    const double target = std::ldexp(1.0, -prec - 2);
    for (int k = 0; k < 4 * static_cast<int>(xd) + 8; ++k) {
      if (k > 0) t = t * hankel_ratio(k, wp) / xx;
      if (t.upper_abs() < target && k % 2 == 0) {
        const BigReal tn = t * hankel_ratio(k + 1, wp) / xx;
        const BigReal pi = BigReal::pi(wp);
        const BigReal w = xx - pi * BigReal(3LL, wp) / BigReal(4LL, wp);
        const BigReal pre = sqrt(BigReal(2LL, wp) / (pi * xx));
        const BigReal Pw = P.widened(t.upper_abs()), Qw = Q.widened(tn.upper_abs());
        return (pre * (Pw * cos(w) - Qw * sin(w))).with_precision(prec);
      }
      // P takes even k with sign (-1)^(k/2); Q takes odd k with sign (-1)^((k-1)/2).
      BigReal& acc = (k % 2 == 0) ? P : Q;
      if ((k / 2) % 2 == 0)
        acc += t;
      else
        acc -= t;
    }
  }
  return bessel_series(x, -1);
}

mpq_class niebur_constant(i64 N, i64 n) {
  if (N < 1 || n < 1) throw InvalidArgument("niebur_constant: N and n must be positive");
  mpq_class s = 0;
  for (i64 d : divisors(n)) {
    const i64 M = N / std::gcd(N, d);
    const int mu = mobius(M);
    if (mu == 0) continue;
    mpq_class t(mu, d * M * M);
    for (const auto& [p, e] : factorize(M)) t /= mpq_class(p * p - 1, p * p);
    s += t;
  }
  s *= 24 * n;
  s.canonicalize();
  return s;
}

std::vector<NieburCoefficient> niebur_coefficients(const std::vector<NieburRequest>& requests, i64 c_max, int blocks) {
  if (c_max < 1) throw InvalidArgument("niebur_coefficients: c_max must be positive");
  if (blocks < 1) throw InvalidArgument("niebur_coefficients: blocks must be positive");
  for (const auto& r : requests)
    if (r.N < 1 || r.n < 1) throw InvalidArgument("niebur_coefficients: N and n must be positive");

  const PrimeSieve sieve(c_max);
  // Distinct Kloosterman sums K(m, -n; c), keyed by (min, max) via the symmetry K(a, b) = K(b, a).
  std::map<std::pair<i64, i64>, std::size_t> key_index;
  std::vector<std::pair<i64, i64>> keys;
  std::vector<std::size_t> req_key(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const i64 a = requests[i].m, b = -requests[i].n;
    if (requests[i].m == 0) continue;
    const auto key = std::minmax(a, b);
    auto [it, fresh] = key_index.emplace(key, keys.size());
    if (fresh) keys.push_back(key);
    req_key[i] = it->second;
  }

  struct Acc {
    long double partial = 0;
    long double abs_tail = 0;
    std::vector<long double> block_sum;
    std::vector<i64> block_count;
  };
  std::vector<Acc> acc(requests.size());
  for (auto& a : acc) {
    a.block_sum.assign(static_cast<std::size_t>(blocks), 0);
    a.block_count.assign(static_cast<std::size_t>(blocks), 0);
  }
  const i64 half = c_max / 2;
  const long double span = static_cast<long double>(c_max - half);

  std::vector<long double> kval(keys.size());
  for (i64 c = 1; c <= c_max; ++c) {
    bool needed = false;
    for (const auto& r : requests) needed = needed || (c % r.N == 0);
    if (!needed) continue;
    const auto factors = sieve.factorize(c);
    std::vector<char> have(keys.size(), 0);
    const long double cl = static_cast<long double>(c);
    for (std::size_t i = 0; i < requests.size(); ++i) {
      const auto& r = requests[i];
      if (c % r.N != 0) continue;
      const long double sqn = std::sqrt(static_cast<long double>(r.n));
      long double term;
      if (r.m == 0) {
        term = kTwoPi * sqn * static_cast<long double>(ramanujan_sum(c, r.n)) / cl * kTwoPi * sqn / cl;
      } else {
        const std::size_t k = req_key[i];
        if (!have[k]) {
          kval[k] = kloosterman_fast(keys[k].first, keys[k].second, c, factors);
          have[k] = 1;
        }
        const long double am = std::fabs(static_cast<long double>(r.m));
        const long double x = 2 * kTwoPi * std::sqrt(am * static_cast<long double>(r.n)) / cl;
        const long double bes = r.m > 0 ? std::cyl_bessel_il(1.0L, x) : std::cyl_bessel_jl(1.0L, x);
        term = kTwoPi * sqn * kval[k] / cl * bes / std::sqrt(am);
      }
      Acc& a = acc[i];
      a.partial += term;
      if (c > half) {
        a.abs_tail += std::fabs(term);
        std::size_t b = static_cast<std::size_t>(static_cast<long double>(c - half - 1) / span * blocks);
        b = std::min<std::size_t>(b, static_cast<std::size_t>(blocks - 1));
        a.block_sum[b] += a.partial;
        a.block_count[b] += 1;
      }
    }
  }

  std::vector<NieburCoefficient> out;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& r = requests[i];
    const Acc& a = acc[i];
    NieburCoefficient nc{r.N, r.n, r.m, c_max, a.partial, a.partial, 0};
    if (r.m == 0) {
      nc.tail_indicator = a.abs_tail;
    } else {
      long double lo = std::numeric_limits<long double>::infinity(), hi = -lo, mean = 0;
      int used = 0;
      for (int b = 0; b < blocks; ++b) {
        if (a.block_count[b] == 0) continue;
        const long double avg = a.block_sum[b] / static_cast<long double>(a.block_count[b]);
        lo = std::min(lo, avg);
        hi = std::max(hi, avg);
        mean += avg;
        ++used;
      }
      if (used > 0) {
        nc.value = mean / used;
        nc.tail_indicator = hi - lo;
      }
    }
    out.push_back(nc);
  }
  return out;
}

NieburCoefficient niebur_coefficient(i64 N, i64 n, i64 m, i64 c_max, int blocks) {
  return niebur_coefficients({{N, n, m}}, c_max, blocks).front();
}

}  // namespace moduli
