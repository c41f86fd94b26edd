#pragma once

// Integral binary quadratic forms [a, b, c] = aX^2 + bXY + cY^2, the right
// action of SL2(Z), reduction of positive definite forms, automorph groups
// and the Gamma0(N)-class set of Heegner forms with N | a.

#include <optional>
#include <vector>

#include "moduli/arith.hpp"
#include "moduli/bigfloat.hpp"

namespace moduli {

struct QuadraticForm {
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;

  i64 discriminant() const { return b * b - 4 * a * c; }
  i64 operator()(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
  friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;
};

/// Integer matrix (alpha beta; gamma delta) of determinant 1.
struct UnimodularMatrix {
  i64 alpha = 1;
  i64 beta = 0;
  i64 gamma = 0;
  i64 delta = 1;

  static UnimodularMatrix identity() { return {}; }
  i64 det() const { return alpha * delta - beta * gamma; }
  UnimodularMatrix inverse() const { return {delta, -beta, -gamma, alpha}; }
  bool in_gamma0(i64 N) const { return gamma % N == 0; }

  friend UnimodularMatrix operator*(const UnimodularMatrix& m, const UnimodularMatrix& n);
  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;
};

/// Q o M, i.e. (X, Y) -> Q(alpha X + beta Y, gamma X + delta Y).
/// Right action: act(act(Q, M), M') == act(Q, M * M').
QuadraticForm act(const QuadraticForm& q, const UnimodularMatrix& m);

/// Mobius action of M on a point of the upper half-plane.
BigComplex mobius(const UnimodularMatrix& m, const BigComplex& z);

struct Reduction {
  QuadraticForm form;      // reduced: |b| <= a <= c, b >= 0 if |b| = a or a = c
  UnimodularMatrix matrix; // q o matrix == form
};

/// Reduction of a positive definite form.
Reduction reduce(const QuadraticForm& q);

bool is_reduced(const QuadraticForm& q);

/// The root (-b + i sqrt|disc|) / (2a) of Q(tau, 1) in the upper half-plane.
BigComplex heegner_point(const QuadraticForm& q, int prec = kDefaultPrecision);

/// All M in SL2(Z) with q o M == q (definite forms only). The identity comes first.
std::vector<UnimodularMatrix> automorphs(const QuadraticForm& q);

/// Some M in Gamma0(N) with q o M == q2, or nothing if the forms are not
/// Gamma0(N)-equivalent.
std::optional<UnimodularMatrix> gamma0_equivalent(const QuadraticForm& q, const QuadraticForm& q2, i64 N);

/// Half the number of automorphs of q lying in Gamma0(N).
int stabilizer_half_order(const QuadraticForm& q, i64 N);

/// Class representative without its CM point.
struct ClassForm {
  QuadraticForm rep;
  int w = 1;
};

struct HeegnerClass {
  QuadraticForm rep;
  BigComplex z;
  int w = 1;
};

struct EnumerationOptions {
  int max_doublings = 16;
};

/// One representative (with the smallest leading coefficient) per
/// Gamma0(N)-class of forms of discriminant disc < 0 with a > 0 and N | a,
/// ordered by ascending (a, b). Imprimitive forms are included.
std::vector<ClassForm> enumerate_class_forms(i64 disc, i64 N, const EnumerationOptions& opts = {});

std::vector<HeegnerClass> enumerate_classes(const DiscriminantSplit& split, int prec = kDefaultPrecision,
                                            const EnumerationOptions& opts = {});

/// Reduced forms of discriminant disc < 0 (primitive or not), ascending.
std::vector<QuadraticForm> reduced_forms(i64 disc);

}  // namespace moduli
