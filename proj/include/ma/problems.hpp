#pragma once

#include <string>
#include <vector>

#include "ma/solver.hpp"
#include "ma/types.hpp"

namespace ma {

// A Dirichlet benchmark instance: source f, boundary data g, and (when a
// closed form is known) the exact solution for error measurement.  g always
// equals the exact solution restricted to the boundary.
struct Problem {
  std::string name;
  ScalarField f;
  ScalarField g;
  ScalarField exact;  // empty when no closed form is available

  bool has_exact() const { return static_cast<bool>(exact); }
};

// The four benchmark problems on [0,1]^2, centered at x0 = (0.5, 0.5):
//   c2      smooth radial solution exp(|x-x0|^2 / 2)
//   c1      C^1 solution ((|x-x0| - 0.2)^+)^2 / 2
//   blowup  -sqrt(2 - |x|^2), gradient blows up at the corner (1,1)
//   cone    |x-x0|; the Dirac source is averaged over the ball of radius
//           h/2, giving f = 4/h^2 inside it and 0 elsewhere
// h is used only by the cone regularization.
Problem make_example(const std::string& name, double h);

// ---- 1D demo: |u'| = 1 on [-1,1], u(-1) = u(1) = 1, solution |x| ----

// Spacing h = 2/(n-1); nodes x_i = -1 + i*h.  Boundary rows are u - 1.
struct Eikonal1DProblem {
  int n = 0;
  double h = 0.0;
  double x(int i) const { return -1.0 + i * h; }
};

// Upwind scheme max{(u(x+h)-u(x))/h, (u(x-h)-u(x))/h} - 1: first order,
// satisfies a maximum principle.
SchemeEval eikonal_monotone_eval(const std::vector<double>& u, double h);

// Centered scheme |u(x+h)-u(x-h)|/(2h) - 1: second order but unstable.
SchemeEval eikonal_accurate_eval(const std::vector<double>& u, double h);

struct EikonalResult {
  std::vector<double> u;
  double h = 0.0;
  double max_error = 0.0;  // max-norm error against |x|
  SolveReport report;
};

// Solves the filtered combination of the two 1D schemes (filter scale h).
// The monotone scheme is pre-solved by sweeping on its explicit form
// u(x) = max{u(x+h), u(x-h)} - h, then Newton polishes the filtered system.
// Requires odd n >= 5 so the kink of |x| falls on a node.
EikonalResult eikonal_filtered_solve(int n, const SolverConfig& config = {});

}  // namespace ma
