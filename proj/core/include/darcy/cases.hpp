#pragma once

#include "darcy/elliptic.hpp"
#include "darcy/medium.hpp"
#include "darcy/mesh.hpp"

#include <functional>
#include <memory>
#include <string>

namespace darcy {

using ScalarField = std::function<double(const Point2 &)>;
/// Prescribed normal flux u.n at a boundary point with the given outward normal.
using NormalFlux = std::function<double(const Point2 &, const Vec2 &)>;

/// Analytic Darcy solution on a rectangle: potential, velocity, their
/// derivatives, the medium, and the source.
class ExactSolution {
public:
  virtual ~ExactSolution() = default;

  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual double lx() const = 0;
  [[nodiscard]] virtual double ly() const = 0;
  [[nodiscard]] virtual const MediumModel &medium() const = 0;

  [[nodiscard]] virtual double pressure(const Point2 &p) const = 0;
  [[nodiscard]] virtual Vec2 pressure_gradient(const Point2 &p) const = 0;
  [[nodiscard]] virtual Vec2 velocity(const Point2 &p) const = 0;
  [[nodiscard]] virtual Mat2 velocity_gradient(const Point2 &p) const = 0;
  /// Exact source: div u.
  [[nodiscard]] virtual double source(const Point2 &p) const = 0;

  [[nodiscard]] double velocity_divergence(const Point2 &p) const {
    const Mat2 g = velocity_gradient(p);
    return g[0][0] + g[1][1];
  }
  /// rot(lambda u) = lambda rot u + d(lambda)/dx u_y - d(lambda)/dy u_x.
  [[nodiscard]] double rot_lambda_velocity(const Point2 &p) const;

  /// Source used for assembly on a given mesh. Defaults to the exact source.
  [[nodiscard]] virtual ScalarField discrete_source(const Mesh &mesh) const;
  /// Normal flux from the exact velocity.
  [[nodiscard]] virtual NormalFlux boundary_flux() const;
};

/// kappa = k1 (x-2) x (y-2) y + k2 on [0,2]^2 with p = sin(pi x) sin(pi y) / (2 pi^2)
/// and u = -kappa grad p. The source is -div(kappa grad p), derived analytically.
class ManufacturedCase final : public ExactSolution {
public:
  /// Throws InvalidArgument if k2 <= 0 or k1 < 0.
  ManufacturedCase(double k1, double k2);

  [[nodiscard]] std::string name() const override;
  [[nodiscard]] double lx() const override { return 2.0; }
  [[nodiscard]] double ly() const override { return 2.0; }
  [[nodiscard]] const MediumModel &medium() const override { return medium_; }

  [[nodiscard]] double pressure(const Point2 &p) const override;
  [[nodiscard]] Vec2 pressure_gradient(const Point2 &p) const override;
  [[nodiscard]] Vec2 velocity(const Point2 &p) const override;
  [[nodiscard]] Mat2 velocity_gradient(const Point2 &p) const override;
  [[nodiscard]] double source(const Point2 &p) const override;

private:
  MediumModel medium_;
};

/// Quarter five-spot: unit conductivity on [0,L]^2 with L = K(1/sqrt 2), a sink
/// of strength -1/4 at the origin and a source of +1/4 at (L,L), no-flow walls.
///
/// p = ln[(1 - cn^2(x) cn^2(y)) / (cn^2(x) + cn^2(y))] / (4 pi), which has zero
/// mean and satisfies p(L-x, L-y) = -p(x, y).
class FiveSpotCase final : public ExactSolution {
public:
  FiveSpotCase();

  [[nodiscard]] std::string name() const override { return "fivespot"; }
  [[nodiscard]] double lx() const override { return side_; }
  [[nodiscard]] double ly() const override { return side_; }
  [[nodiscard]] const MediumModel &medium() const override { return medium_; }

  [[nodiscard]] double side() const { return side_; }
  [[nodiscard]] double exclusion_radius() const { return 0.1 * std::sqrt(2.0) * side_; }
  [[nodiscard]] const JacobiElliptic &elliptic() const { return elliptic_; }

  [[nodiscard]] double pressure(const Point2 &p) const override;
  [[nodiscard]] Vec2 pressure_gradient(const Point2 &p) const override;
  [[nodiscard]] Vec2 velocity(const Point2 &p) const override;
  [[nodiscard]] Mat2 velocity_gradient(const Point2 &p) const override;
  /// The point loads have no pointwise density; zero away from the corners.
  [[nodiscard]] double source(const Point2 &) const override { return 0.0; }

  /// Loads of -/+ 1/4 spread uniformly over the two corner cells of `mesh`.
  [[nodiscard]] ScalarField discrete_source(const Mesh &mesh) const override;
  [[nodiscard]] NormalFlux boundary_flux() const override;

private:
  struct Derivs {
    double a;   // cn^2
    double da;  // d(cn^2)/dt
    double dda; // d2(cn^2)/dt2
  };
  [[nodiscard]] Derivs cn_squared(double t) const;

  JacobiElliptic elliptic_;
  double side_;
  MediumModel medium_;
};

std::shared_ptr<const ManufacturedCase> make_manufactured(double k1, double k2);
std::shared_ptr<const FiveSpotCase> make_five_spot();

} // namespace darcy
