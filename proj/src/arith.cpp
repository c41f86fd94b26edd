#include "moduli/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "moduli/errors.hpp"

namespace moduli {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

i64 powmod(i64 a, i64 e, i64 m) {
  i64 r = 1 % m;
  a = mod(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw InvalidArgument("invmod: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return mod(x, m);
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> divs{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t count = divs.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

i64 sigma(i64 m) {
  if (m < 1) throw InvalidArgument("sigma: argument must be positive");
  i64 s = 1;
  for (auto [p, e] : factorize(m)) {
    i64 term = 1, pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      term += pk;
    }
    s *= term;
  }
  return s;
}

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    const i64 a8 = mod(a, 8);
    if ((v & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol for odd positive n.
  a = mod(a, n);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

i64 index_gamma0(i64 N) {
  if (N < 1) throw InvalidArgument("index_gamma0: level must be positive");
  i64 idx = N;
  for (auto [p, e] : factorize(N)) idx = idx / p * (p + 1);
  return idx;
}

int mobius(i64 n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

bool is_perfect_square(i64 n) {
  if (n < 0) return false;
  i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

bool is_discriminant(i64 d) {
  const i64 r = mod(d, 4);
  return d != 0 && (r == 0 || r == 1);
}

bool is_fundamental(i64 D) {
  if (D == 1) return true;
  if (D == 0) return false;
  const i64 r = mod(D, 4);
  if (r == 1) return is_squarefree(D);
  if (r == 0) {
    const i64 m = D / 4;
    const i64 m4 = mod(m, 4);
    return (m4 == 2 || m4 == 3) && is_squarefree(m);
  }
  return false;
}

bool is_square_mod(i64 x, i64 m) {
  if (m < 1) throw InvalidArgument("is_square_mod: modulus must be positive");
  return !square_roots_mod(mod(x, m), m).empty();
}

PrimeSieve::PrimeSieve(i64 limit) : spf_(static_cast<std::size_t>(std::max<i64>(limit, 1)) + 1, 0) {
  const i64 n = static_cast<i64>(spf_.size()) - 1;
  if (n >= 1) spf_[1] = 1;
  for (i64 i = 2; i <= n; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::int32_t>(i);
      primes_.push_back(i);
    }
    for (i64 p : primes_) {
      if (p > spf_[i] || p * i > n) break;
      spf_[p * i] = static_cast<std::int32_t>(p);
    }
  }
}

std::vector<std::pair<i64, int>> PrimeSieve::factorize(i64 n) const {
  if (n < 0) n = -n;
  if (n > limit()) return moduli::factorize(n);
  std::vector<std::pair<i64, int>> out;
  while (n > 1) {
    const i64 p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

namespace {

// Roots of x^2 = delta mod p for prime p.
std::vector<i64> roots_mod_prime(i64 delta, i64 p) {
  delta = mod(delta, p);
  if (p == 2) return {delta};
  if (delta == 0) return {0};
  if (powmod(delta, (p - 1) / 2, p) != 1) return {};
  if (p < 64) {
    std::vector<i64> r;
    for (i64 x = 1; x < p; ++x)
      if (x * x % p == delta) r.push_back(x);
    return r;
  }
  // Tonelli-Shanks.
  i64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  i64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  i64 m = s, c = powmod(z, q, p), t = powmod(delta, q, p), r = powmod(delta, (q + 1) / 2, p);
  while (t != 1) {
    i64 i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    i64 b = c;
    for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  const i64 other = p - r;
  return r < other ? std::vector<i64>{r, other} : std::vector<i64>{other, r};
}

std::vector<i64> roots_mod_prime_power(i64 delta, i64 p, int k) {
  std::vector<i64> roots = roots_mod_prime(delta, p);
  i64 pj = p;
  const bool simple = (p != 2) && mod(delta, p) != 0;
  for (int j = 1; j < k; ++j) {
    const i64 next = pj * p;
    std::vector<i64> lifted;
    for (i64 r : roots) {
      if (simple) {
        // Newton step; the root lifts uniquely.
        const i64 f = mod(mulmod(r, r, next) - mod(delta, next), next);
        const i64 x = mod(r - mulmod(f, invmod(mod(2 * r, next), next), next), next);
        lifted.push_back(x);
      } else {
        for (i64 t = 0; t < p; ++t) {
          const i64 x = r + t * pj;
          if (mod(mulmod(x, x, next) - delta, next) == 0) lifted.push_back(x);
        }
      }
    }
    roots = std::move(lifted);
    pj = next;
  }
  return roots;
}

}  // namespace

std::vector<i64> square_roots_mod(i64 delta, i64 m, const std::vector<std::pair<i64, int>>& factors) {
  if (m == 1) return {0};
  std::vector<i64> acc{0};
  i64 modulus = 1;
  for (auto [p, e] : factors) {
    i64 pk = 1;
    for (int i = 0; i < e; ++i) pk *= p;
    const std::vector<i64> local = roots_mod_prime_power(delta, p, e);
    if (local.empty()) return {};
    std::vector<i64> combined;
    combined.reserve(acc.size() * local.size());
    const i64 inv = invmod(mod(modulus, pk), pk);
    for (i64 r1 : acc)
      for (i64 r2 : local) {
        const i64 t = mulmod(mod(r2 - r1, pk), inv, pk);
        combined.push_back(r1 + modulus * t);
      }
    acc = std::move(combined);
    modulus *= pk;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

std::vector<i64> square_roots_mod(i64 delta, i64 m) {
  if (m < 1) throw InvalidArgument("square_roots_mod: modulus must be positive");
  return square_roots_mod(delta, m, factorize(m));
}

i64 ramanujan_sum(i64 c, i64 n) {
  const i64 g = std::gcd(c, n < 0 ? -n : n);
  i64 s = 0;
  for (i64 d : divisors(g)) s += mobius(c / d) * d;
  return s;
}

bool DiscriminantSplit::admissible(i64 d, i64 D, i64 N) {
  if (N < 1 || !is_discriminant(d) || !is_fundamental(D)) return false;
  if (d * D >= 0) return false;
  return is_square_mod(d, 4 * N) && is_square_mod(D, 4 * N);
}

DiscriminantSplit DiscriminantSplit::make(i64 d, i64 D, i64 N) {
  const std::string tag = "(d=" + std::to_string(d) + ", D=" + std::to_string(D) + ", N=" + std::to_string(N) + ")";
  if (N < 1) throw InvalidArgument("level N must be positive " + tag);
  if (!is_discriminant(d)) throw InvalidArgument("d must be a discriminant (d = 0 or 1 mod 4) " + tag);
  if (!is_fundamental(D)) throw InvalidArgument("D must be a fundamental discriminant " + tag);
  if (d * D >= 0) throw InvalidArgument("dD must be negative " + tag);
  if (!is_square_mod(d, 4 * N) || !is_square_mod(D, 4 * N))
    throw InvalidArgument("d and D must both be congruent to squares modulo 4N " + tag);
  return DiscriminantSplit{d, D, N};
}

}  // namespace moduli
