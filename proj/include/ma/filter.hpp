#pragma once

#include <vector>

#include "ma/types.hpp"

namespace ma {

struct FilterParams {
  double epsilon = 0.0;         // filter scale, > 0
  bool exact_jacobian = false;  // keep negative S' weights on the accurate rows
};

// Piecewise-linear tent filter: identity on [-1,1], linearly cut to zero on
// 1 <= |x| <= 2, zero outside.  Continuous, odd, |S| <= 1.
double filter_s(double x);

// Derivative of the filter: 1 for |x| < 1, -1 for 1 < |x| < 2, 0 for
// |x| > 2.  At the kinks |x| in {1,2} the inner-branch value is returned
// (S'(+-1) = 1, S'(+-2) = -1) so Newton paths are reproducible.
double filter_s_prime(double x);

// Filter scale used throughout: eps(h, dtheta) = sqrt(h) + dtheta/10.
double epsilon_rule(double h, double dtheta);

// Combines a monotone and an accurate evaluation of the same problem:
//   residual = residual_M + eps * S((residual_A - residual_M)/eps).
// The Jacobian row at each node blends the input rows with weights
// (1 - s') on the monotone row and max{s', 0} on the accurate row (the
// untruncated weight s' is kept when exact_jacobian is set).
SchemeEval filtered_eval(const SchemeEval& mono, const SchemeEval& acc,
                         const FilterParams& params);

// Per-node filter arguments (residual_A - residual_M)/eps, used for branch
// statistics: |arg| <= 1 selects the accurate scheme, |arg| >= 2 the
// monotone scheme.
std::vector<double> filter_arguments(const SchemeEval& mono, const SchemeEval& acc,
                                     double epsilon);

}  // namespace ma
