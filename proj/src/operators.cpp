#include "ma/operators.hpp"

#include <limits>

namespace ma {

double directional_second_difference(const GridFunction& u, int node,
                                     const StencilArms& arms,
                                     const ScalarField& g,
                                     std::vector<std::pair<int, double>>* coeffs) {
  const ArmEnd& ap = arms.plus;
  const ArmEnd& am = arms.minus;
  const double up = ap.on_boundary ? g(ap.x, ap.y) : u[ap.node];
  const double um = am.on_boundary ? g(am.x, am.y) : u[am.node];
  const double u0 = u[node];

  const double wp = 2.0 / (ap.t * (ap.t + am.t));
  const double wm = 2.0 / (am.t * (ap.t + am.t));
  const double w0 = -(wp + wm);

  if (coeffs) {
    coeffs->clear();
    coeffs->emplace_back(node, w0);
    if (!ap.on_boundary) coeffs->emplace_back(ap.node, wp);
    if (!am.on_boundary) coeffs->emplace_back(am.node, wm);
  }
  return wp * up + wm * um + w0 * u0;
}

namespace {

double basis_term(double d1, double d2, double delta) {
  return std::max(d1, delta) * std::max(d2, delta) + std::min(d1, delta) +
         std::min(d2, delta);
}

}  // namespace

SchemeEval monotone_ma_eval(const GridFunction& u, const Problem& problem,
                            const Grid& grid, const DirectionSet& dirs,
                            const MonotoneParams& params) {
  const double delta = params.delta;
  const int nn = grid.num_nodes();

  SchemeEval out;
  out.residual.assign(nn, 0.0);
  out.jacobian.reserve(std::size_t(nn) * 6);

  std::vector<std::pair<int, double>> c1, c2;

  for (int node = 0; node < nn; ++node) {
    const int i = grid.ix(node);
    const int j = grid.iy(node);
    if (!grid.is_interior(i, j)) {
      out.residual[node] = u[node] - problem.g(grid.x(i), grid.y(j));
      out.jacobian.push_back({node, node, 1.0});
      continue;
    }

    // Minimizing basis; strict comparison keeps the lowest index on ties.
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_b = 0;
    for (std::size_t b = 0; b < dirs.bases.size(); ++b) {
      const StencilArms a1 = stencil_arms(grid, node, dirs.bases[b].nu1);
      const StencilArms a2 = stencil_arms(grid, node, dirs.bases[b].nu2);
      const double d1 = directional_second_difference(u, node, a1, problem.g);
      const double d2 = directional_second_difference(u, node, a2, problem.g);
      const double val = basis_term(d1, d2, delta);
      if (val < best) {
        best = val;
        best_b = b;
      }
    }
    out.residual[node] = best - problem.f(grid.x(i), grid.y(j));

    // Subgradient row from the active basis.
    const StencilArms a1 = stencil_arms(grid, node, dirs.bases[best_b].nu1);
    const StencilArms a2 = stencil_arms(grid, node, dirs.bases[best_b].nu2);
    const double d1 = directional_second_difference(u, node, a1, problem.g, &c1);
    const double d2 = directional_second_difference(u, node, a2, problem.g, &c2);
    const double dv1 = (d1 >= delta ? std::max(d2, delta) : 0.0) + (d1 < delta ? 1.0 : 0.0);
    const double dv2 = (d2 >= delta ? std::max(d1, delta) : 0.0) + (d2 < delta ? 1.0 : 0.0);
    for (const auto& [col, w] : c1) out.jacobian.push_back({node, col, dv1 * w});
    for (const auto& [col, w] : c2) out.jacobian.push_back({node, col, dv2 * w});
  }
  return out;
}

SchemeEval standard_ma_eval(const GridFunction& u, const Problem& problem,
                            const Grid& grid) {
  const int nn = grid.num_nodes();
  const double h = grid.h;
  const double ih2 = 1.0 / (h * h);
  const double ixy = 1.0 / (4.0 * h * h);

  SchemeEval out;
  out.residual.assign(nn, 0.0);
  out.jacobian.reserve(std::size_t(nn) * 9);

  // Reads u at interior nodes, g at boundary nodes (no unknown there).
  auto sample = [&](int i, int j, int* col) {
    if (grid.is_interior(i, j)) {
      *col = grid.index(i, j);
      return u[*col];
    }
    *col = -1;
    return problem.g(grid.x(i), grid.y(j));
  };

  int cE, cW, cN, cS, cNE, cNW, cSE, cSW;
  for (int node = 0; node < nn; ++node) {
    const int i = grid.ix(node);
    const int j = grid.iy(node);
    if (!grid.is_interior(i, j)) {
      out.residual[node] = u[node] - problem.g(grid.x(i), grid.y(j));
      out.jacobian.push_back({node, node, 1.0});
      continue;
    }

    const double u0 = u[node];
    const double uE = sample(i + 1, j, &cE);
    const double uW = sample(i - 1, j, &cW);
    const double uN = sample(i, j + 1, &cN);
    const double uS = sample(i, j - 1, &cS);
    const double uNE = sample(i + 1, j + 1, &cNE);
    const double uNW = sample(i - 1, j + 1, &cNW);
    const double uSE = sample(i + 1, j - 1, &cSE);
    const double uSW = sample(i - 1, j - 1, &cSW);

    const double dxx = (uE + uW - 2.0 * u0) * ih2;
    const double dyy = (uN + uS - 2.0 * u0) * ih2;
    const double dxy = (uNE + uSW - uSE - uNW) * ixy;

    out.residual[node] = dxx * dyy - dxy * dxy - problem.f(grid.x(i), grid.y(j));

    // d(residual)/du_k = dyy * dDxx/du_k + dxx * dDyy/du_k - 2 dxy * dDxy/du_k
    auto add = [&](int col, double v) {
      if (col >= 0 && v != 0.0) out.jacobian.push_back({node, col, v});
    };
    add(node, -2.0 * ih2 * dyy - 2.0 * ih2 * dxx);
    add(cE, dyy * ih2);
    add(cW, dyy * ih2);
    add(cN, dxx * ih2);
    add(cS, dxx * ih2);
    add(cNE, -2.0 * dxy * ixy);
    add(cSW, -2.0 * dxy * ixy);
    add(cSE, 2.0 * dxy * ixy);
    add(cNW, 2.0 * dxy * ixy);
  }
  return out;
}

}  // namespace ma
