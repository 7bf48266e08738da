#pragma once

#include "darcy/mesh.hpp"

#include <vector>

namespace darcy {

struct QuadraturePoint1D {
  double x;
  double w;
};

/// n-point Gauss-Legendre rule on [-1,1], nodes ascending.
std::vector<QuadraturePoint1D> gauss_legendre(int n);

/// Tensor-product Gauss rule on [-1,1]^2, exact for bi-degree <= 2n-1.
/// Points are ordered with the first coordinate fastest.
class QuadratureRule {
public:
  explicit QuadratureRule(int order_1d);

  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] int size() const { return static_cast<int>(points_.size()); }
  [[nodiscard]] const std::vector<Point2> &points() const { return points_; }
  [[nodiscard]] const std::vector<double> &weights() const { return weights_; }
  [[nodiscard]] const std::vector<QuadraturePoint1D> &rule_1d() const { return rule_1d_; }

private:
  int order_;
  std::vector<QuadraturePoint1D> rule_1d_;
  std::vector<Point2> points_;
  std::vector<double> weights_;
};

/// Throws InvalidArgument unless 1 <= n <= 8.
QuadratureRule gauss_rule(int n);

} // namespace darcy
