#include "ma/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "ma/filter.hpp"

namespace ma {

namespace {

constexpr double kX0 = 0.5;
constexpr double kY0 = 0.5;

double r2_center(double x, double y) {
  const double dx = x - kX0;
  const double dy = y - kY0;
  return dx * dx + dy * dy;
}

}  // namespace

Problem make_example(const std::string& name, double h) {
  Problem p;
  p.name = name;
  if (name == "c2") {
    p.exact = [](double x, double y) { return std::exp(0.5 * r2_center(x, y)); };
    p.f = [](double x, double y) {
      const double r2 = r2_center(x, y);
      return (1.0 + r2) * std::exp(r2);
    };
  } else if (name == "c1") {
    p.exact = [](double x, double y) {
      const double d = std::max(std::sqrt(r2_center(x, y)) - 0.2, 0.0);
      return 0.5 * d * d;
    };
    p.f = [](double x, double y) {
      const double r = std::sqrt(r2_center(x, y));
      if (r == 0.0) return 0.0;  // removable: the positive part is 0 near x0
      return std::max(1.0 - 0.2 / r, 0.0);
    };
  } else if (name == "blowup") {
    p.exact = [](double x, double y) { return -std::sqrt(2.0 - (x * x + y * y)); };
    p.f = [](double x, double y) {
      const double s = 2.0 - (x * x + y * y);
      return 2.0 / (s * s);
    };
  } else if (name == "cone") {
    if (!(h > 0.0)) throw std::invalid_argument("make_example: cone needs h > 0");
    p.exact = [](double x, double y) { return std::sqrt(r2_center(x, y)); };
    // Dirac measure pi * delta_{x0} averaged over the ball of radius h/2.
    p.f = [h](double x, double y) {
      return std::sqrt(r2_center(x, y)) <= 0.5 * h ? 4.0 / (h * h) : 0.0;
    };
  } else {
    throw std::invalid_argument("make_example: unknown example '" + name + "'");
  }
  p.g = p.exact;
  return p;
}

SchemeEval eikonal_monotone_eval(const std::vector<double>& u, double h) {
  const int n = int(u.size());
  SchemeEval out;
  out.residual.assign(n, 0.0);
  out.jacobian.reserve(std::size_t(n) * 2);

  out.residual[0] = u[0] - 1.0;
  out.jacobian.push_back({0, 0, 1.0});
  for (int i = 1; i + 1 < n; ++i) {
    const double dp = (u[i + 1] - u[i]) / h;
    const double dm = (u[i - 1] - u[i]) / h;
    out.residual[i] = std::max(dp, dm) - 1.0;
    const int up = dp >= dm ? i + 1 : i - 1;  // upwind neighbor, plus side on ties
    out.jacobian.push_back({i, up, 1.0 / h});
    out.jacobian.push_back({i, i, -1.0 / h});
  }
  out.residual[n - 1] = u[n - 1] - 1.0;
  out.jacobian.push_back({n - 1, n - 1, 1.0});
  return out;
}

SchemeEval eikonal_accurate_eval(const std::vector<double>& u, double h) {
  const int n = int(u.size());
  SchemeEval out;
  out.residual.assign(n, 0.0);
  out.jacobian.reserve(std::size_t(n) * 2);

  out.residual[0] = u[0] - 1.0;
  out.jacobian.push_back({0, 0, 1.0});
  for (int i = 1; i + 1 < n; ++i) {
    const double d = (u[i + 1] - u[i - 1]) / (2.0 * h);
    out.residual[i] = std::abs(d) - 1.0;
    const double s = d >= 0.0 ? 1.0 : -1.0;
    out.jacobian.push_back({i, i + 1, s / (2.0 * h)});
    out.jacobian.push_back({i, i - 1, -s / (2.0 * h)});
  }
  out.residual[n - 1] = u[n - 1] - 1.0;
  out.jacobian.push_back({n - 1, n - 1, 1.0});
  return out;
}

EikonalResult eikonal_filtered_solve(int n, const SolverConfig& config) {
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("eikonal_filtered_solve: need odd n >= 5");

  EikonalResult res;
  res.h = 2.0 / (n - 1);
  const double h = res.h;

  // Monotone pre-solve: Gauss-Seidel sweeps on the explicit form, rising
  // from far below.  Two alternating sweeps suffice in 1D; iterate until
  // stationary to be safe.
  std::vector<double>& u = res.u;
  u.assign(n, -1e300);
  u[0] = u[n - 1] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double change = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
      const double v = std::max(u[i + 1], u[i - 1]) - h;
      change = std::max(change, std::abs(v - u[i]));
      u[i] = v;
    }
    for (int i = n - 2; i >= 1; --i) {
      const double v = std::max(u[i + 1], u[i - 1]) - h;
      change = std::max(change, std::abs(v - u[i]));
      u[i] = v;
    }
    if (change <= 1e-15) break;
  }

  // Newton on the filtered system F_M + h S((F_A - F_M)/h).
  const FilterParams fp{h, false};
  SchemeEvaluator scheme = [h, fp](const GridFunction& v) {
    return filtered_eval(eikonal_monotone_eval(v, h), eikonal_accurate_eval(v, h), fp);
  };
  auto [uf, rep] = newton_solve(scheme, u, config);
  u = std::move(uf);
  res.report = std::move(rep);

  Eikonal1DProblem grid{n, h};
  double err = 0.0;
  for (int i = 0; i < n; ++i)
    err = std::max(err, std::abs(u[i] - std::abs(grid.x(i))));
  res.max_error = err;
  return res;
}

}  // namespace ma
