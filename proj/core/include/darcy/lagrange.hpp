#pragma once

#include "darcy/mesh.hpp"

#include <vector>

namespace darcy {

/// Basis values and reference-coordinate derivatives at one point.
struct ShapeValues {
  std::vector<double> values;
  std::vector<Vec2> gradients;
  /// Second derivatives (d2/dxi2, d2/dxi deta, d2/deta2) per basis function.
  std::vector<std::array<double, 3>> hessians;
};

/// Q_k Lagrange element on [-1,1]^2 with an equispaced (k+1)^2 node lattice.
///
/// Local node (a, b) has index b*(k+1) + a, so node 0 sits at (-1,-1) and the
/// first coordinate runs fastest.
class ReferenceElement {
public:
  /// Throws InvalidArgument unless 1 <= degree <= 3.
  explicit ReferenceElement(int degree);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int nodes_per_side() const { return degree_ + 1; }
  [[nodiscard]] int size() const { return (degree_ + 1) * (degree_ + 1); }
  [[nodiscard]] Point2 node(int i) const;

  [[nodiscard]] ShapeValues eval(const Point2 &xi) const;

  /// 1D Lagrange polynomials on the equispaced nodes: values, first and second
  /// derivatives, each of length degree+1.
  void eval_1d(double t, double *value, double *d1, double *d2) const;

private:
  int degree_;
  std::vector<double> nodes_1d_;
};

/// Convenience form of ReferenceElement(k).eval(xi).
ShapeValues shape_eval(int degree, const Point2 &xi);

} // namespace darcy
