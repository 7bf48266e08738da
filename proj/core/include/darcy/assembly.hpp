#pragma once

#include "darcy/cases.hpp"
#include "darcy/dof_map.hpp"
#include "darcy/formulation.hpp"
#include "darcy/medium.hpp"
#include "darcy/mesh.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace darcy {

/// Compressed-row matrix with sorted column indices in every row.
struct CsrMatrix {
  int rows{0};
  int cols{0};
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  [[nodiscard]] int nnz() const { return static_cast<int>(val.size()); }
  /// Entry (r, c), zero if not in the pattern.
  [[nodiscard]] double at(int r, int c) const;
  /// Position of (r, c) in `val`, or -1.
  [[nodiscard]] int find(int r, int c) const;
  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
  /// max |A - A^T| / max |A|.
  [[nodiscard]] double asymmetry() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] Eigen::SparseMatrix<double> to_eigen() const;
};

/// How the additive constant of the potential is fixed.
enum class PotentialGauge : std::uint8_t {
  MeanMultiplier, ///< Lagrange multiplier row enforcing integral of p_h = 0
  PinFirstNode,   ///< p_h = 0 at potential DOF 0; the solver shifts to zero mean
};

struct AssemblyOptions {
  std::optional<int> quadrature_order; ///< defaults to the method's choice
  PotentialGauge gauge{PotentialGauge::MeanMultiplier};
};

/// Assembled, boundary-reduced linear system plus everything needed to map
/// the solution back onto the finite element fields.
///
/// Unknown layout: free velocity DOFs (in velocity DOF order), then potential
/// DOFs (all of them, or all but DOF 0 when pinned), then the multiplier.
struct LinearSystem {
  FormulationSpec spec;
  std::shared_ptr<const Mesh> mesh;
  MediumModel medium;
  std::optional<DofMap> velocity_dofs; ///< empty for Primal
  DofMap potential_dofs;
  int quadrature_order{0};
  PotentialGauge gauge{PotentialGauge::MeanMultiplier};

  CsrMatrix matrix;
  std::vector<double> rhs;

  /// Velocity DOF -> unknown index, -1 when eliminated.
  std::vector<int> velocity_unknown;
  /// Prescribed value per velocity DOF (meaningful where eliminated).
  std::vector<double> velocity_prescribed;
  int num_free_velocity{0};
  int potential_offset{0};
  int num_potential_unknowns{0};
  /// Unknown index of the multiplier, -1 without one.
  int multiplier{-1};
  /// Integral of each potential basis function over the domain.
  std::vector<double> potential_weights;

  [[nodiscard]] int size() const { return matrix.rows; }
  [[nodiscard]] bool symmetric() const { return spec.symmetric(); }
  /// Unknown index of potential DOF `d`, -1 if pinned.
  [[nodiscard]] int potential_unknown(int d) const;
};

/// Global assembly. Normal velocity components on boundary nodes are set to
/// the flux data and eliminated symmetrically; at corners both components are
/// prescribed. Primal takes the flux as a boundary load instead.
///
/// Throws IllPosedBoundary when the flux data are nonzero at a corner (beyond
/// 1e-12), where the two side normals cannot both be honored by a continuous
/// velocity carrying that flux.
LinearSystem assemble(const FormulationSpec &spec, std::shared_ptr<const Mesh> mesh,
                      const MediumModel &medium, const ScalarField &source, const NormalFlux &flux,
                      const AssemblyOptions &options = {});

/// Gram matrix of a product norm over the unknowns of `system` (eliminated
/// velocity DOFs and the multiplier excluded; those rows/columns are zero).
CsrMatrix assemble_norm_matrix(const LinearSystem &system, ProductNorm norm);

/// "row col value" per nonzero (0-based), then the right-hand side, one value per line.
void write_system(std::ostream &matrix_out, std::ostream &rhs_out, const LinearSystem &system);

} // namespace darcy
