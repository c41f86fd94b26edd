#include "moduli/inner_products.hpp"

#include "moduli/errors.hpp"
#include "moduli/modular_values.hpp"

namespace moduli {

namespace {

bool rational_square(i64 num, i64 den) {
  // num/den is a rational square iff num * den is a perfect square (both positive).
  return num > 0 && den > 0 && is_perfect_square(num * den);
}

BigReal two_pi(int prec) { return BigReal::pi(prec) * BigReal(2LL, prec); }

}  // namespace

std::string to_string(InnerProductCase c) {
  switch (c) {
    case InnerProductCase::distinct:
      return "i";
    case InnerProductCase::diagonal:
      return "ii";
    case InnerProductCase::elliptic:
      return "iii";
  }
  return "?";
}

BigReal green_log(const BigComplex& z, const BigComplex& z2, int prec) {
  const BigComplex diff = J_value(z, prec) - J_value(z2, prec);
  const BigReal m = diff.abs();
  if (!(m.magnitude() > 10 * std::max(m.error(), diff.error())))
    throw NearCoincidence("green_log: J values coincide numerically (equivalent points?)");
  return log(m);
}

InnerProductCase classify_inner_product(i64 d, i64 delta) {
  if (d >= 0 || delta >= 0) throw InvalidArgument("inner product: discriminants must be negative");
  if (!is_discriminant(d) || !is_discriminant(delta))
    throw InvalidArgument("inner product: arguments must be discriminants (0 or 1 mod 4)");
  if (d != delta) {
    if (is_perfect_square(d * delta))
      throw InvalidArgument("inner product: delta/d is a square; no closed form applies");
    return InnerProductCase::distinct;
  }
  if (d == -3 || d == -4) return InnerProductCase::elliptic;
  if (rational_square(-d, 3) || rational_square(-d, 4))
    throw InvalidArgument("inner product: |d|/3 or |d|/4 is a square; no closed form applies");
  return InnerProductCase::diagonal;
}

BigReal diagonal_summand(const QuadraticForm& q, int prec) {
  const int wp = prec + 32;
  const BigComplex z = heegner_point(q, wp);
  BigComplex v = J_derivative_value(z, 1, wp);
  const BigReal scale = sqrt(BigReal(static_cast<long long>(-q.discriminant()), wp)) /
                        BigReal(static_cast<long long>(q.a), wp);
  v *= scale;
  return log(v.abs()).with_precision(prec);
}

InnerProduct inner_product(i64 d, i64 delta, int prec) {
  InnerProduct r;
  r.d = d;
  r.delta = delta;
  r.kind = classify_inner_product(d, delta);
  const int wp = prec + 32;
  BigReal sum(wp);
  switch (r.kind) {
    case InnerProductCase::distinct: {
      const auto c1 = enumerate_class_forms(d, 1);
      const auto c2 = enumerate_class_forms(delta, 1);
      for (const auto& q : c1) {
        const BigComplex z = heegner_point(reduce(q.rep).form, wp);
        for (const auto& p : c2) {
          const BigComplex z2 = heegner_point(reduce(p.rep).form, wp);
          sum += green_log(z, z2, wp) / BigReal(static_cast<long long>(q.w * p.w), wp);
        }
      }
      sum /= two_pi(wp);
      break;
    }
    case InnerProductCase::diagonal: {
      const auto cls = enumerate_class_forms(d, 1);
      for (std::size_t i = 0; i < cls.size(); ++i) {
        const QuadraticForm qi = reduce(cls[i].rep).form;
        sum += diagonal_summand(qi, wp);
        for (std::size_t j = 0; j < cls.size(); ++j) {
          if (i == j) continue;
          sum += green_log(heegner_point(qi, wp), heegner_point(reduce(cls[j].rep).form, wp), wp);
        }
      }
      sum /= two_pi(wp);
      break;
    }
    case InnerProductCase::elliptic: {
      if (d == -4) {
        const BigComplex i(BigReal(wp), BigReal(1LL, wp));
        BigComplex v = J_derivative_value(i, 2, wp);
        v *= BigReal(2LL, wp);
        sum = log(v.abs()) / (BigReal::pi(wp) * BigReal(8LL, wp));
      } else {
        const BigReal three(3LL, wp);
        const BigComplex rho(BigReal(1LL, wp) / BigReal(2LL, wp), sqrt(three) / BigReal(2LL, wp));
        BigComplex v = J_derivative_value(rho, 3, wp);
        v *= sqrt(three) / BigReal(2LL, wp);
        sum = log(v.abs()) / (BigReal::pi(wp) * BigReal(18LL, wp));
      }
      break;
    }
  }
  r.value = sum.with_precision(prec);
  r.err = r.value.error();
  return r;
}

}  // namespace moduli
