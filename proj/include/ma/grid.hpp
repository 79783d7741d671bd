#pragma once

#include <vector>

#include "ma/types.hpp"

namespace ma {

// Uniform n-by-n lattice on the unit square [0,1]^2.  Node (i,j) sits at
// (i*h, j*h) with h = 1/(n-1).  Nodes are indexed row-major: index = j*n + i.
// A node is a boundary node iff i or j equals 0 or n-1.
struct Grid {
  int n = 0;
  double h = 0.0;

  int num_nodes() const { return n * n; }
  int index(int i, int j) const { return j * n + i; }
  int ix(int node) const { return node % n; }
  int iy(int node) const { return node / n; }
  double x(int i) const { return i * h; }
  double y(int j) const { return j * h; }
  bool is_interior(int i, int j) const {
    return i > 0 && j > 0 && i < n - 1 && j < n - 1;
  }
  bool is_interior(int node) const { return is_interior(ix(node), iy(node)); }
};

// Builds the grid; requires n >= 3 so that at least one interior node exists.
Grid build_grid(int n);

// Primitive lattice direction: integer (p,q) with gcd(|p|,|q|) = 1.
struct LatticeDirection {
  int p = 0;
  int q = 0;
  double length() const;  // |nu| = sqrt(p^2 + q^2)
  double angle() const;   // atan2(q, p)
};

// Pair of orthogonal lattice directions; nu2 is the left normal (-q, p) of
// nu1, so the pair spans a rotated orthogonal coordinate frame.
struct OrthogonalBasis {
  LatticeDirection nu1;
  LatticeDirection nu2;
};

// The finite family of orthogonal direction pairs for a stencil width,
// one canonical representative per {nu, -nu} x {nu1 <-> nu2} equivalence
// class (nu1 has angle in [0, pi/2)), sorted by nu1 angle.  dtheta is the
// largest angular gap between consecutive stencil directions in [0, pi/2].
struct DirectionSet {
  int width = 0;
  std::vector<OrthogonalBasis> bases;
  double dtheta = 0.0;
};

// Enumerates the direction set for width in {1,2,3}.  The stencils touch
// 9, 17 and 33 grid points respectively at a full interior node.
DirectionSet build_direction_set(int width);

// One arm of a directional stencil.  If the nominal endpoint x + nu*h leaves
// the closed square, the arm is cut at the first intersection of the ray
// with the boundary; any endpoint on the boundary samples the Dirichlet data
// instead of the unknown and carries no grid-node index.
struct ArmEnd {
  double t = 0.0;            // arm length in physical units, > 0
  bool on_boundary = false;  // endpoint lies on the domain boundary
  int node = -1;             // grid node index when not on the boundary
  double x = 0.0;            // endpoint coordinates (valid in all cases)
  double y = 0.0;
};

struct StencilArms {
  ArmEnd plus;
  ArmEnd minus;
};

// Both arms of direction nu at an interior node.  Truncation uses exact
// rational ray-box intersection in lattice steps, so a cut endpoint has one
// coordinate exactly 0 or 1.
StencilArms stencil_arms(const Grid& grid, int node, const LatticeDirection& nu);

}  // namespace ma
