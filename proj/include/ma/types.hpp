#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace ma {

// One scalar value per grid node, stored in node-index order.
using GridFunction = std::vector<double>;

// Pointwise data on the square, evaluated as f(x, y).
using ScalarField = std::function<double(double, double)>;

// Sparse matrix entry. Duplicate (row, col) pairs are summed by consumers.
struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Residual vector of a discrete operator together with the sparse Jacobian
// of the map u -> residual. One residual entry per grid node.
struct SchemeEval {
  std::vector<double> residual;
  std::vector<Triplet> jacobian;
};

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace ma
