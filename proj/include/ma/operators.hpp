#pragma once

#include <utility>
#include <vector>

#include "ma/grid.hpp"
#include "ma/problems.hpp"
#include "ma/types.hpp"

namespace ma {

// Floor delta > 0 bounding the directional second derivatives away from
// zero inside the monotone operator, so the negative branch keeps a
// nonzero gradient.
struct MonotoneParams {
  double delta = 1e-9;
};

// Three-point second difference of u along one stencil direction.  With
// arms t+ = t- = t this is (u+ + u- - 2 u0)/t^2; with unequal arms
//   (2/(t+ + t-)) * ((u+ - u0)/t+ + (u- - u0)/t-),
// which is exact on quadratics for any arm lengths.  Arm endpoints on the
// boundary read the Dirichlet data g and contribute no unknown; when coeffs
// is non-null it receives the (node, weight) pairs of the unknowns.
double directional_second_difference(const GridFunction& u, int node,
                                     const StencilArms& arms,
                                     const ScalarField& g,
                                     std::vector<std::pair<int, double>>* coeffs = nullptr);

// Monotone wide-stencil Monge-Ampere operator.  At interior nodes
//   residual = min over bases (nu1,nu2) of
//              [ max{D1,delta} * max{D2,delta} + min{D1,delta} + min{D2,delta} ] - f,
// with Dk the directional second differences; at boundary nodes the
// Dirichlet residual u - g.  Jacobian rows use the minimizing basis (lowest
// index on ties) and one-sided subgradients of max/min (">= delta" active
// for the max branch at a tie).
SchemeEval monotone_ma_eval(const GridFunction& u, const Problem& problem,
                            const Grid& grid, const DirectionSet& dirs,
                            const MonotoneParams& params);

// Standard 9-point scheme: residual = Dxx u * Dyy u - (Dxy u)^2 - f with
// centered second differences and the 4-corner cross difference; boundary
// residual u - g.  Formally second-order accurate but not monotone.
// Neighbor values on the boundary read g, matching the monotone scheme.
SchemeEval standard_ma_eval(const GridFunction& u, const Problem& problem,
                            const Grid& grid);

}  // namespace ma
