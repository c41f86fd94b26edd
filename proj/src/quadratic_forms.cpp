#include "moduli/quadratic_forms.hpp"

#include <numeric>
#include <map>
#include <string>

#include "moduli/errors.hpp"

namespace moduli {

namespace {

i64 checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ComputationError("quadratic form coefficient overflow");
  return static_cast<i64>(v);
}

void require_definite(const QuadraticForm& q, const char* what) {
  if (q.discriminant() >= 0 || q.a <= 0)
    throw InvalidArgument(std::string(what) + ": form must be positive definite (disc < 0, a > 0)");
}

i64 floor_div(i64 x, i64 y) {
  i64 q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

}  // namespace

UnimodularMatrix operator*(const UnimodularMatrix& m, const UnimodularMatrix& n) {
  return {checked(static_cast<__int128>(m.alpha) * n.alpha + static_cast<__int128>(m.beta) * n.gamma),
          checked(static_cast<__int128>(m.alpha) * n.beta + static_cast<__int128>(m.beta) * n.delta),
          checked(static_cast<__int128>(m.gamma) * n.alpha + static_cast<__int128>(m.delta) * n.gamma),
          checked(static_cast<__int128>(m.gamma) * n.beta + static_cast<__int128>(m.delta) * n.delta)};
}

QuadraticForm act(const QuadraticForm& q, const UnimodularMatrix& m) {
  if (m.det() != 1) throw InvalidArgument("act: matrix must have determinant 1");
  using W = __int128;
  const W a = q.a, b = q.b, c = q.c;
  const W al = m.alpha, be = m.beta, ga = m.gamma, de = m.delta;
  return {checked(a * al * al + b * al * ga + c * ga * ga),
          checked(2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de),
          checked(a * be * be + b * be * de + c * de * de)};
}

BigComplex mobius(const UnimodularMatrix& m, const BigComplex& z) {
  const int prec = z.precision();
  const BigComplex num = z * BigComplex(BigReal(static_cast<long long>(m.alpha), prec), BigReal(prec)) +
                         BigComplex(BigReal(static_cast<long long>(m.beta), prec), BigReal(prec));
  const BigComplex den = z * BigComplex(BigReal(static_cast<long long>(m.gamma), prec), BigReal(prec)) +
                         BigComplex(BigReal(static_cast<long long>(m.delta), prec), BigReal(prec));
  return num / den;
}

bool is_reduced(const QuadraticForm& q) {
  const i64 ab = q.b < 0 ? -q.b : q.b;
  if (!(ab <= q.a && q.a <= q.c)) return false;
  if ((ab == q.a || q.a == q.c) && q.b < 0) return false;
  return true;
}

Reduction reduce(const QuadraticForm& q) {
  require_definite(q, "reduce");
  const UnimodularMatrix S{0, -1, 1, 0};
  QuadraticForm f = q;
  UnimodularMatrix m = UnimodularMatrix::identity();
  for (;;) {
    // Translate b into (-a, a].
    const i64 k = floor_div(f.a - f.b, 2 * f.a);
    if (k != 0) {
      const UnimodularMatrix t{1, k, 0, 1};
      f = act(f, t);
      m = m * t;
    }
    if (f.c < f.a) {
      f = act(f, S);
      m = m * S;
      continue;
    }
    if (f.a == f.c && f.b < 0) {
      f = act(f, S);
      m = m * S;
    }
    return {f, m};
  }
}

BigComplex heegner_point(const QuadraticForm& q, int prec) {
  require_definite(q, "heegner_point");
  const BigReal two_a(static_cast<long long>(2 * q.a), prec);
  BigReal re = BigReal(static_cast<long long>(-q.b), prec) / two_a;
  BigReal im = sqrt(BigReal(static_cast<long long>(-q.discriminant()), prec)) / two_a;
  return {std::move(re), std::move(im)};
}

std::vector<UnimodularMatrix> automorphs(const QuadraticForm& q) {
  const i64 disc = q.discriminant();
  if (disc >= 0) throw InvalidArgument("automorphs: form must be definite");
  // The stabilizer only depends on the primitive part.
  const i64 g = std::gcd(std::gcd(q.a, q.b), q.c);
  const QuadraticForm p{q.a / g, q.b / g, q.c / g};
  const i64 pdisc = disc / (g * g);
  std::vector<UnimodularMatrix> out;
  // t^2 - disc u^2 = 4 has |u| <= 1 for disc <= -3 (and |u| <= 2 only for disc = -1, impossible).
  for (i64 u : {0, 1, -1}) {
    for (i64 t : {2, 1, 0, -1, -2}) {
      if (t * t - pdisc * u * u != 4) continue;
      out.push_back({(t - p.b * u) / 2, -p.c * u, p.a * u, (t + p.b * u) / 2});
    }
  }
  return out;
}

std::optional<UnimodularMatrix> gamma0_equivalent(const QuadraticForm& q, const QuadraticForm& q2, i64 N) {
  if (q.discriminant() != q2.discriminant())
    throw InvalidArgument("gamma0_equivalent: forms have different discriminants");
  const Reduction r1 = reduce(q);
  const Reduction r2 = reduce(q2);
  if (r1.form != r2.form) return std::nullopt;
  const UnimodularMatrix m0 = r1.matrix * r2.matrix.inverse();
  for (const UnimodularMatrix& eps : automorphs(q)) {
    const UnimodularMatrix m = eps * m0;
    if (m.in_gamma0(N)) return m;
  }
  return std::nullopt;
}

int stabilizer_half_order(const QuadraticForm& q, i64 N) {
  int count = 0;
  for (const UnimodularMatrix& eps : automorphs(q))
    if (eps.in_gamma0(N)) ++count;
  return count / 2;
}

std::vector<ClassForm> enumerate_class_forms(i64 disc, i64 N, const EnumerationOptions& opts) {
  if (disc >= 0) throw InvalidArgument("enumerate_class_forms: discriminant must be negative");
  if (!is_discriminant(disc)) throw InvalidArgument("enumerate_class_forms: not a discriminant");
  if (N < 1) throw InvalidArgument("enumerate_class_forms: level must be positive");

  std::vector<ClassForm> reps;
  // Reduced SL2(Z)-form -> indices into reps, to limit equivalence tests.
  std::map<QuadraticForm, std::vector<std::size_t>> by_reduced;

  auto scan = [&](i64 a_from, i64 a_to) {
    std::size_t found = 0;
    for (i64 a = a_from; a <= a_to; a += N) {
      for (i64 b : square_roots_mod(disc, 4 * a)) {
        if (b >= 2 * a) break;
        const QuadraticForm q{a, b, (b * b - disc) / (4 * a)};
        const QuadraticForm red = reduce(q).form;
        auto& bucket = by_reduced[red];
        bool seen = false;
        for (std::size_t idx : bucket) {
          if (gamma0_equivalent(q, reps[idx].rep, N)) {
            seen = true;
            break;
          }
        }
        if (seen) continue;
        bucket.push_back(reps.size());
        reps.push_back({q, stabilizer_half_order(q, N)});
        ++found;
      }
    }
    return found;
  };

  i64 cap = N * ((disc < 0 ? -disc : disc) + 4);
  scan(N, cap);
  for (int i = 0; i < opts.max_doublings; ++i) {
    const i64 next = 2 * cap;
    const std::size_t added = scan(cap - cap % N + N, next);
    cap = next;
    if (added == 0) return reps;
  }
  throw SearchExhausted("enumerate_class_forms: class list did not stabilize for disc " + std::to_string(disc) +
                        ", N " + std::to_string(N));
}

std::vector<HeegnerClass> enumerate_classes(const DiscriminantSplit& split, int prec, const EnumerationOptions& opts) {
  std::vector<HeegnerClass> out;
  for (const ClassForm& cf : enumerate_class_forms(split.discriminant(), split.N, opts))
    out.push_back({cf.rep, heegner_point(cf.rep, prec), cf.w});
  return out;
}

std::vector<QuadraticForm> reduced_forms(i64 disc) {
  if (disc >= 0) throw InvalidArgument("reduced_forms: discriminant must be negative");
  std::vector<QuadraticForm> out;
  const i64 m = -disc;
  for (i64 a = 1; 3 * a * a <= m; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      const i64 num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const QuadraticForm q{a, b, num / (4 * a)};
      if (is_reduced(q)) out.push_back(q);
    }
  }
  return out;
}

}  // namespace moduli
