#include "ma/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ma {

double LatticeDirection::length() const {
  return std::sqrt(double(p) * p + double(q) * q);
}

double LatticeDirection::angle() const { return std::atan2(double(q), double(p)); }

Grid build_grid(int n) {
  if (n < 3)
    throw std::invalid_argument("build_grid: need n >= 3 (no interior node otherwise)");
  Grid g;
  g.n = n;
  g.h = 1.0 / (n - 1);
  return g;
}

DirectionSet build_direction_set(int width) {
  if (width < 1 || width > 3)
    throw std::invalid_argument("build_direction_set: width must be 1, 2 or 3");

  DirectionSet ds;
  ds.width = width;

  // Canonical nu1: coprime (p,q) with p >= 1, q >= 0, so the angle lies in
  // [0, pi/2).  Each orthogonal pair {nu, nu-perp} has exactly one such
  // representative; nu2 = (-q, p) closes the basis.
  std::vector<LatticeDirection> dirs;
  for (int p = 1; p <= width; ++p)
    for (int q = 0; q <= width; ++q)
      if (std::gcd(p, q) == 1) dirs.push_back({p, q});
  std::sort(dirs.begin(), dirs.end(),
            [](const LatticeDirection& a, const LatticeDirection& b) {
              return a.angle() < b.angle();
            });

  for (const LatticeDirection& d : dirs)
    ds.bases.push_back({d, LatticeDirection{-d.q, d.p}});

  // Angular resolution: largest gap between consecutive stencil directions.
  // In [0, pi/2] the direction angles are the nu1 angles plus pi/2 itself
  // (the vertical direction, which appears as a nu2).
  std::vector<double> angles;
  for (const LatticeDirection& d : dirs) angles.push_back(d.angle());
  angles.push_back(std::atan2(1.0, 0.0));
  std::sort(angles.begin(), angles.end());
  double gap = 0.0;
  for (std::size_t k = 1; k < angles.size(); ++k)
    gap = std::max(gap, angles[k] - angles[k - 1]);
  ds.dtheta = gap;
  return ds;
}

namespace {

ArmEnd trace_arm(const Grid& grid, int i, int j, int p, int q) {
  const int n = grid.n;
  const double len = std::sqrt(double(p) * p + double(q) * q);

  // Largest step fraction s = num/den in (0,1] keeping (i+s*p, j+s*q)
  // inside [0, n-1]^2.  All quantities are small integers, so the
  // comparison is exact.
  long num = 1, den = 1;
  auto cap = [&](long a, long b) {
    if (a * den < num * b) {
      num = a;
      den = b;
    }
  };
  if (p > 0) cap(n - 1 - i, p);
  if (p < 0) cap(i, -p);
  if (q > 0) cap(n - 1 - j, q);
  if (q < 0) cap(j, -q);

  ArmEnd end;
  if (num == den) {
    // Full arm; the endpoint is the grid node (i+p, j+q).
    const int ii = i + p;
    const int jj = j + q;
    end.t = len * grid.h;
    end.on_boundary = !grid.is_interior(ii, jj);
    end.node = end.on_boundary ? -1 : grid.index(ii, jj);
    end.x = grid.x(ii);
    end.y = grid.y(jj);
  } else {
    // Cut at the boundary.  The binding coordinate is exactly 0 or 1;
    // detect it in integer arithmetic.
    end.t = len * grid.h * double(num) / double(den);
    end.on_boundary = true;
    const long xi = long(i) * den + long(p) * num;
    const long yj = long(j) * den + long(q) * num;
    if (xi == 0)
      end.x = 0.0;
    else if (xi == long(n - 1) * den)
      end.x = 1.0;
    else
      end.x = double(xi) * grid.h / double(den);
    if (yj == 0)
      end.y = 0.0;
    else if (yj == long(n - 1) * den)
      end.y = 1.0;
    else
      end.y = double(yj) * grid.h / double(den);
  }
  return end;
}

}  // namespace

StencilArms stencil_arms(const Grid& grid, int node, const LatticeDirection& nu) {
  if (!grid.is_interior(node))
    throw std::invalid_argument("stencil_arms: node must be interior");
  const int i = grid.ix(node);
  const int j = grid.iy(node);
  StencilArms arms;
  arms.plus = trace_arm(grid, i, j, nu.p, nu.q);
  arms.minus = trace_arm(grid, i, j, -nu.p, -nu.q);
  return arms;
}

}  // namespace ma
