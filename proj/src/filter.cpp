#include "ma/filter.hpp"

#include <cmath>
#include <stdexcept>

namespace ma {

double filter_s(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return x;
  if (a >= 2.0) return 0.0;
  return x > 0.0 ? -x + 2.0 : -x - 2.0;
}

double filter_s_prime(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a <= 2.0) return -1.0;
  return 0.0;
}

double epsilon_rule(double h, double dtheta) {
  if (h <= 0.0) throw std::invalid_argument("epsilon_rule: h must be positive");
  if (dtheta < 0.0) throw std::invalid_argument("epsilon_rule: dtheta must be >= 0");
  return std::sqrt(h) + dtheta / 10.0;
}

SchemeEval filtered_eval(const SchemeEval& mono, const SchemeEval& acc,
                         const FilterParams& params) {
  if (mono.residual.size() != acc.residual.size())
    throw std::invalid_argument("filtered_eval: residual length mismatch");
  if (!(params.epsilon > 0.0))
    throw std::invalid_argument("filtered_eval: epsilon must be positive");

  const std::size_t n = mono.residual.size();
  const double eps = params.epsilon;

  SchemeEval out;
  out.residual.resize(n);
  std::vector<double> wm(n), wa(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double arg = (acc.residual[i] - mono.residual[i]) / eps;
    out.residual[i] = mono.residual[i] + eps * filter_s(arg);
    const double sp = filter_s_prime(arg);
    wm[i] = 1.0 - sp;
    wa[i] = params.exact_jacobian ? sp : std::max(sp, 0.0);
  }

  out.jacobian.reserve(mono.jacobian.size() + acc.jacobian.size());
  for (const Triplet& t : mono.jacobian)
    if (wm[t.row] != 0.0) out.jacobian.push_back({t.row, t.col, wm[t.row] * t.value});
  for (const Triplet& t : acc.jacobian)
    if (wa[t.row] != 0.0) out.jacobian.push_back({t.row, t.col, wa[t.row] * t.value});
  return out;
}

std::vector<double> filter_arguments(const SchemeEval& mono, const SchemeEval& acc,
                                     double epsilon) {
  if (mono.residual.size() != acc.residual.size())
    throw std::invalid_argument("filter_arguments: residual length mismatch");
  std::vector<double> args(mono.residual.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    args[i] = (acc.residual[i] - mono.residual[i]) / epsilon;
  return args;
}

}  // namespace ma
