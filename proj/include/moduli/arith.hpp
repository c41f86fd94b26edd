#pragma once

// Exact integer helpers shared by every module: divisor sums, Kronecker
// symbols, discriminant predicates, factorization and modular square roots.

#include <cstdint>
#include <utility>
#include <vector>

namespace moduli {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Sum of the positive divisors of m (m >= 1).
i64 sigma(i64 m);

/// Kronecker symbol (a/n) with the usual extension to n <= 0 and even n.
/// (a/0) is 1 for a = +-1 and 0 otherwise.
int kronecker(i64 a, i64 n);

/// Index of Gamma0(N) in SL2(Z): N * prod_{p | N} (1 + 1/p).
i64 index_gamma0(i64 N);

int mobius(i64 n);
bool is_squarefree(i64 n);
bool is_perfect_square(i64 n);

/// Nonzero d with d = 0 or 1 (mod 4).
bool is_discriminant(i64 d);

/// Discriminant of a quadratic field, or 1.
bool is_fundamental(i64 D);

/// True when x is congruent to a square modulo m (m >= 1).
bool is_square_mod(i64 x, i64 m);

i64 mod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
i64 invmod(i64 a, i64 m);

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// ascending order.
std::vector<std::pair<i64, int>> factorize(i64 n);

std::vector<i64> divisors(i64 n);

/// Smallest-prime-factor table for fast factorization of many small integers.
class PrimeSieve {
 public:
  explicit PrimeSieve(i64 limit);

  i64 limit() const { return static_cast<i64>(spf_.size()) - 1; }
  bool is_prime(i64 n) const { return n >= 2 && spf_[n] == n; }
  std::vector<std::pair<i64, int>> factorize(i64 n) const;
  const std::vector<i64>& primes() const { return primes_; }

 private:
  std::vector<std::int32_t> spf_;
  std::vector<i64> primes_;
};

/// All x in [0, m) with x^2 = delta (mod m), ascending.
std::vector<i64> square_roots_mod(i64 delta, i64 m);

/// Same, using a caller-supplied factorization of m.
std::vector<i64> square_roots_mod(i64 delta, i64 m,
                                  const std::vector<std::pair<i64, int>>& factors);

/// Ramanujan sum c_c(n) = sum_{d | gcd(c, n)} mu(c/d) d.
i64 ramanujan_sum(i64 c, i64 n);

/// A validated splitting dD of a negative discriminant at level N.
///
/// Invariants: dD < 0, d is a discriminant, D is fundamental, and both d and
/// D are squares modulo 4N.
struct DiscriminantSplit {
  i64 d;
  i64 D;
  i64 N;

  i64 discriminant() const { return d * D; }

  /// Throws InvalidArgument when the triple is not admissible.
  static DiscriminantSplit make(i64 d, i64 D, i64 N);
  /// Admissibility test without throwing.
  static bool admissible(i64 d, i64 D, i64 N);

  friend bool operator==(const DiscriminantSplit&, const DiscriminantSplit&) = default;
};

}  // namespace moduli
