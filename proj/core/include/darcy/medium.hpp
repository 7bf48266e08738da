#pragma once

#include "darcy/mesh.hpp"

namespace darcy {

/// Isotropic conductivity kappa(x,y) = k1 (x-2) x (y-2) y + k2 on [0,lx] x [0,ly].
///
/// k1 = 0 gives a homogeneous medium. Resistivity lambda = 1/kappa and its
/// gradient are analytic. Bounds are exact over the rectangle.
class MediumModel {
public:
  /// Throws InvalidArgument if k1 < 0, k2 <= 0, or kappa is not positive on
  /// the whole domain.
  MediumModel(double k1, double k2, double lx = 2.0, double ly = 2.0);

  static MediumModel homogeneous(double kappa, double lx, double ly) { return {0.0, kappa, lx, ly}; }

  [[nodiscard]] double k1() const { return k1_; }
  [[nodiscard]] double k2() const { return k2_; }
  [[nodiscard]] bool is_constant() const { return k1_ == 0.0; }

  [[nodiscard]] double kappa(const Point2 &p) const {
    return k1_ * (p.x - 2.0) * p.x * (p.y - 2.0) * p.y + k2_;
  }
  [[nodiscard]] Vec2 grad_kappa(const Point2 &p) const {
    return {k1_ * (2.0 * p.x - 2.0) * (p.y - 2.0) * p.y, k1_ * (p.x - 2.0) * p.x * (2.0 * p.y - 2.0)};
  }
  [[nodiscard]] double lambda(const Point2 &p) const { return 1.0 / kappa(p); }
  [[nodiscard]] Vec2 grad_lambda(const Point2 &p) const {
    const double k = kappa(p);
    return (-1.0 / (k * k)) * grad_kappa(p);
  }

  [[nodiscard]] double kappa_min() const { return kappa_min_; }
  [[nodiscard]] double kappa_max() const { return kappa_max_; }
  [[nodiscard]] double lambda_min() const { return 1.0 / kappa_max_; }
  [[nodiscard]] double lambda_max() const { return 1.0 / kappa_min_; }

private:
  double k1_;
  double k2_;
  double kappa_min_;
  double kappa_max_;
};

} // namespace darcy
