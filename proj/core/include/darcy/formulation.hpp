#pragma once

#include "darcy/cases.hpp"
#include "darcy/lagrange.hpp"
#include "darcy/medium.hpp"
#include "darcy/quadrature.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

namespace darcy {

enum class Method : std::uint8_t {
  Primal,     ///< single-field Galerkin, velocity recovered as -kappa grad p
  Cgls,       ///< mixed + Darcy, mass-balance and curl least-squares residuals
  GlsHdiv,    ///< Cgls without the curl residual
  Mgls,       ///< delta-weighted, minimization-equivalent variant
  Hvm,        ///< nonsymmetric adjoint stabilization
  Shvm,       ///< symmetric counterpart of Hvm on the primal mixed form
  Dgls,       ///< nonsymmetric delta variant with all three residuals
  StokesComp, ///< Stokes-compatible form, needs l = k + 1
};

[[nodiscard]] std::string_view method_name(Method m);
/// Accepts the names produced by method_name plus a few aliases
/// ("gls", "glshdiv", "stokes_comp"). Throws InvalidArgument otherwise.
[[nodiscard]] Method parse_method(std::string_view name);

struct Deltas {
  double d1{0.5};
  double d2{0.5};
  double d3{0.5};
};

/// A method together with its field degrees and stabilization weights.
class FormulationSpec {
public:
  /// For Primal the velocity degree must be 0. Throws InvalidArgument on
  /// degrees outside 1..3, non-positive Mgls/Dgls deltas, or a Stokes pair
  /// with l != k+1.
  FormulationSpec(Method method, int velocity_degree, int potential_degree, Deltas deltas = {});

  [[nodiscard]] Method method() const { return method_; }
  [[nodiscard]] int velocity_degree() const { return velocity_degree_; }
  [[nodiscard]] int potential_degree() const { return potential_degree_; }
  [[nodiscard]] const Deltas &deltas() const { return deltas_; }
  [[nodiscard]] bool is_mixed() const { return method_ != Method::Primal; }
  [[nodiscard]] bool symmetric() const { return method_ != Method::Hvm && method_ != Method::Dgls; }
  [[nodiscard]] int max_degree() const;
  /// 3, 4, 5 Gauss points per direction for degree 1, 2, 3.
  [[nodiscard]] int default_quadrature_order() const { return max_degree() + 2; }

private:
  Method method_;
  int velocity_degree_;
  int potential_degree_;
  Deltas deltas_;
};

/// Axis-aligned cell [origin.x, origin.x+hx] x [origin.y, origin.y+hy].
struct CellGeometry {
  Point2 origin;
  double hx;
  double hy;

  [[nodiscard]] Point2 map(const Point2 &xi) const {
    return {origin.x + 0.5 * (xi.x + 1.0) * hx, origin.y + 0.5 * (xi.y + 1.0) * hy};
  }
  [[nodiscard]] double area() const { return hx * hy; }
};

/// Element matrix and load. Local ordering: velocity DOFs first (node-major,
/// x/y interleaved, ReferenceElement node order), then potential DOFs.
struct LocalContribution {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd load;
  int velocity_size{0};
  int potential_size{0};
};

/// Product norms used by the coercivity diagnostic.
enum class ProductNorm : std::uint8_t {
  UHcurlDiv, ///< |u|^2 + |div u|^2 + |rot(lambda u)|^2 + |grad p|^2
  UHdiv,     ///< |u|^2 + |div u|^2 + |grad p|^2
  UL2,       ///< |u|^2 + |grad p|^2
};

/// Natural product norm for a method's stability estimate.
[[nodiscard]] ProductNorm natural_norm(Method m);

/// Cell-level weak form evaluator. Bases are tabulated once at construction;
/// compute() is const and safe to call concurrently.
class ElementKernel {
public:
  ElementKernel(const FormulationSpec &spec, const QuadratureRule &quadrature);

  [[nodiscard]] const FormulationSpec &spec() const { return spec_; }
  [[nodiscard]] int velocity_size() const { return velocity_size_; }
  [[nodiscard]] int potential_size() const { return potential_size_; }

  [[nodiscard]] LocalContribution compute(const CellGeometry &cell, const MediumModel &medium,
                                          const ScalarField &source) const;

  /// Gram matrix of a product norm on the cell, same layout as compute().
  [[nodiscard]] Eigen::MatrixXd norm_matrix(const CellGeometry &cell, const MediumModel &medium,
                                            ProductNorm norm) const;

  /// Potential-basis integrals over the cell (the zero-mean constraint row).
  [[nodiscard]] Eigen::VectorXd potential_integrals(const CellGeometry &cell) const;

private:
  struct PointData;
  void fill_point(const CellGeometry &cell, const MediumModel &medium, int q, PointData &pd) const;

  FormulationSpec spec_;
  QuadratureRule quadrature_;
  int velocity_size_;
  int potential_size_;
  std::vector<ShapeValues> velocity_basis_;
  std::vector<ShapeValues> potential_basis_;
};

/// One-shot form of ElementKernel(spec, quadrature).compute(cell, medium, source).
[[nodiscard]] LocalContribution local_kernel(const FormulationSpec &spec, const CellGeometry &cell,
                                             const QuadratureRule &quadrature, const MediumModel &medium,
                                             const ScalarField &source);

} // namespace darcy
