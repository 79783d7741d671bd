#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ma/types.hpp"

namespace ma {

struct Grid;
struct Problem;

struct SolverConfig {
  double residual_tol = 1e-8;  // stop when the residual max-norm drops below
  int max_iter = 50;
  double backtrack = 0.5;                      // step shrink factor
  double min_step = 9.5367431640625e-07;       // 2^-20
  double linear_tol = 1e-8;                    // relative residual of the inner solve
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history;  // iterations + 1 max-norm entries
  double wall_time = 0.0;                // seconds spent in the Newton loop
  bool converged = false;
  std::string message;                   // diagnostic when not converged
};

struct LinearSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NewtonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SchemeEvaluator = std::function<SchemeEval(const GridFunction&)>;

// Solves the square sparse system J s = rhs.  Backed by a sparse direct
// factorization with iterative refinement; throws LinearSolveError when the
// factorization breaks down or ||J s - rhs|| > linear_tol * ||rhs||.
std::vector<double> sparse_linear_solve(const std::vector<Triplet>& jacobian,
                                        const std::vector<double>& rhs,
                                        double linear_tol);

// Convex-biased Newton initializer: solves the 5-point discrete Poisson
// problem  lap(u) = sqrt(2 f)  with Dirichlet data g.  Requires f >= 0 on
// interior nodes.
GridFunction initial_guess(const Problem& problem, const Grid& grid,
                           double linear_tol = 1e-10);

// Damped Newton iteration on the scheme residual.  Steps are backtracked
// (halved down to min_step) until the residual max-norm does not increase;
// throws NewtonError on linear-solve failure or non-finite residuals.
std::pair<GridFunction, SolveReport> newton_solve(const SchemeEvaluator& scheme,
                                                  GridFunction u0,
                                                  const SolverConfig& config);

}  // namespace ma
