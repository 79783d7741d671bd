#include "ma/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <chrono>
#include <cmath>
#include <sstream>

#include "ma/grid.hpp"
#include "ma/problems.hpp"

namespace ma {

std::vector<double> sparse_linear_solve(const std::vector<Triplet>& jacobian,
                                        const std::vector<double>& rhs,
                                        double linear_tol) {
  const int n = int(rhs.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(jacobian.size());
  for (const Triplet& t : jacobian) trips.emplace_back(t.row, t.col, t.value);

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw LinearSolveError("sparse_linear_solve: factorization failed (singular Jacobian?)");

  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  Eigen::VectorXd s = lu.solve(b);
  const double bnorm = std::max(b.norm(), 1e-300);

  // One or two refinement passes recover the contract on stiff systems.
  double rel = (A * s - b).norm() / bnorm;
  for (int pass = 0; pass < 2 && rel > linear_tol; ++pass) {
    s += lu.solve((b - A * s).eval());
    rel = (A * s - b).norm() / bnorm;
  }
  if (!(rel <= linear_tol) || !s.allFinite()) {
    std::ostringstream msg;
    msg << "sparse_linear_solve: relative residual " << rel
        << " exceeds tolerance " << linear_tol;
    throw LinearSolveError(msg.str());
  }
  return std::vector<double>(s.data(), s.data() + n);
}

GridFunction initial_guess(const Problem& problem, const Grid& grid,
                           double linear_tol) {
  const int nn = grid.num_nodes();
  const double ih2 = 1.0 / (grid.h * grid.h);

  std::vector<Triplet> rows;
  rows.reserve(std::size_t(nn) * 5);
  std::vector<double> rhs(nn, 0.0);

  for (int node = 0; node < nn; ++node) {
    const int i = grid.ix(node);
    const int j = grid.iy(node);
    if (!grid.is_interior(i, j)) {
      rows.push_back({node, node, 1.0});
      rhs[node] = problem.g(grid.x(i), grid.y(j));
      continue;
    }
    const double f = problem.f(grid.x(i), grid.y(j));
    if (!(f >= 0.0))
      throw std::invalid_argument("initial_guess: requires f >= 0 on interior nodes");
    rows.push_back({node, node, -4.0 * ih2});
    rows.push_back({node, grid.index(i + 1, j), ih2});
    rows.push_back({node, grid.index(i - 1, j), ih2});
    rows.push_back({node, grid.index(i, j + 1), ih2});
    rows.push_back({node, grid.index(i, j - 1), ih2});
    rhs[node] = std::sqrt(2.0 * f);
  }
  return sparse_linear_solve(rows, rhs, linear_tol);
}

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

std::pair<GridFunction, SolveReport> newton_solve(const SchemeEvaluator& scheme,
                                                  GridFunction u,
                                                  const SolverConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  SolveReport rep;
  SchemeEval ev = scheme(u);
  if (!all_finite(ev.residual))
    throw NewtonError("newton_solve: non-finite residual at the initial iterate");
  double norm = inf_norm(ev.residual);
  rep.residual_history.push_back(norm);

  const std::size_t nn = u.size();
  GridFunction trial(nn);

  while (rep.iterations < config.max_iter && norm > config.residual_tol) {
    std::vector<double> rhs(nn);
    for (std::size_t k = 0; k < nn; ++k) rhs[k] = -ev.residual[k];

    std::vector<double> step;
    try {
      step = sparse_linear_solve(ev.jacobian, rhs, config.linear_tol);
    } catch (const LinearSolveError& e) {
      std::ostringstream msg;
      msg << "newton_solve: iteration " << rep.iterations + 1 << ": " << e.what();
      throw NewtonError(msg.str());
    }

    // Backtracking on the residual max-norm; equality counts as accepted so
    // semismooth kinks cannot force an artificial stall.
    bool accepted = false;
    double t = 1.0;
    SchemeEval ev_trial;
    double norm_trial = 0.0;
    while (t >= config.min_step) {
      for (std::size_t k = 0; k < nn; ++k) trial[k] = u[k] + t * step[k];
      ev_trial = scheme(trial);
      norm_trial = inf_norm(ev_trial.residual);
      if (std::isfinite(norm_trial) && norm_trial <= norm) {
        accepted = true;
        break;
      }
      t *= config.backtrack;
    }
    if (!accepted) {
      rep.message = "line search stalled: no residual decrease down to the minimum step";
      break;
    }

    u.swap(trial);
    ev = std::move(ev_trial);
    norm = norm_trial;
    ++rep.iterations;
    rep.residual_history.push_back(norm);
  }

  rep.converged = norm <= config.residual_tol;
  if (!rep.converged && rep.message.empty())
    rep.message = "maximum iteration count reached";
  rep.wall_time = elapsed();
  return {std::move(u), rep};
}

}  // namespace ma
