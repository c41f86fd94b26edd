#pragma once

// Closed-form regularized inner products <f_d, f_delta> of the weight 2
// meromorphic forms f_d, from CM values of J and its derivatives.

#include <string>

#include "moduli/bigfloat.hpp"
#include "moduli/quadratic_forms.hpp"

namespace moduli {

/// log |J(z) - J(z2)|. Throws NearCoincidence if the difference is not
/// certainly away from zero (equivalent points).
BigReal green_log(const BigComplex& z, const BigComplex& z2, int prec = kDefaultPrecision);

enum class InnerProductCase { distinct, diagonal, elliptic };
std::string to_string(InnerProductCase c);

/// Which closed form applies to (d, delta); throws InvalidArgument if none.
/// `distinct`: d != delta with d delta not a square (the order of d and delta
/// does not matter). `diagonal`: d = delta and neither |d|/3 nor |d|/4 a
/// rational square. `elliptic`: d = delta in {-3, -4}.
InnerProductCase classify_inner_product(i64 d, i64 delta);

/// log |sqrt|d| J'(z_Q) / Q(1, 0)| for the given (not necessarily reduced) form.
BigReal diagonal_summand(const QuadraticForm& q, int prec = kDefaultPrecision);

struct InnerProduct {
  i64 d = 0;
  i64 delta = 0;
  InnerProductCase kind = InnerProductCase::distinct;
  BigReal value;
  double err = 0;
};

InnerProduct inner_product(i64 d, i64 delta, int prec = kDefaultPrecision);

}  // namespace moduli
