#pragma once

#include "darcy/assembly.hpp"
#include "darcy/cases.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace darcy {

enum class SolverKind : std::uint8_t {
  Direct, ///< sparse LDL^T for symmetric systems (LU fallback), LU otherwise
  Minres, ///< symmetric systems only, |diag| Jacobi preconditioning
};

struct SolveOptions {
  SolverKind kind{SolverKind::Direct};
  double residual_tolerance{1e-10};
  double mean_tolerance{1e-9};
  int max_refinement_steps{4};
  int max_iterations{50000};
};

struct SolveStats {
  std::string backend;
  double relative_residual{0.0};
  double potential_mean{0.0};
  int refinement_steps{0};
  int iterations{0};
};

/// Solves A x = b. Throws SingularSystem when the factorization fails or the
/// relative residual stays above the tolerance.
std::vector<double> solve_linear(const CsrMatrix &matrix, std::span<const double> rhs, bool symmetric,
                                 const SolveOptions &options = {}, SolveStats *stats = nullptr);

/// Discrete fields at a point. For Primal, u = -kappa grad p_h.
struct FieldValues {
  Vec2 u;
  Mat2 grad_u{};
  double div_u{0.0};
  double rot_u{0.0};
  double p{0.0};
  Vec2 grad_p;
};

/// Finite element velocity and potential with the data needed to evaluate them.
class DiscreteSolution {
public:
  DiscreteSolution(FormulationSpec spec, std::shared_ptr<const Mesh> mesh, MediumModel medium,
                   std::vector<double> velocity, std::vector<double> potential, SolveStats stats = {});

  [[nodiscard]] const FormulationSpec &spec() const { return spec_; }
  [[nodiscard]] const Mesh &mesh() const { return *mesh_; }
  [[nodiscard]] const std::shared_ptr<const Mesh> &mesh_ptr() const { return mesh_; }
  [[nodiscard]] const MediumModel &medium() const { return medium_; }
  [[nodiscard]] const std::optional<DofMap> &velocity_dofs() const { return velocity_dofs_; }
  [[nodiscard]] const DofMap &potential_dofs() const { return potential_dofs_; }
  /// Empty for Primal.
  [[nodiscard]] const std::vector<double> &velocity() const { return velocity_; }
  [[nodiscard]] const std::vector<double> &potential() const { return potential_; }
  [[nodiscard]] const SolveStats &stats() const { return stats_; }

  /// Integral of p_h over the domain.
  [[nodiscard]] double potential_integral() const;

  [[nodiscard]] FieldValues evaluate(const Point2 &x) const;
  /// Evaluation at reference point `xi` of cell `quad`.
  [[nodiscard]] FieldValues evaluate_in_cell(int quad, const Point2 &xi) const;
  /// Same, with bases already tabulated at xi.
  [[nodiscard]] FieldValues evaluate_in_cell(int quad, const Point2 &xi, const ShapeValues *velocity_basis,
                                             const ShapeValues &potential_basis) const;

private:
  FormulationSpec spec_;
  std::shared_ptr<const Mesh> mesh_;
  MediumModel medium_;
  std::optional<DofMap> velocity_dofs_;
  DofMap potential_dofs_;
  std::vector<double> velocity_;
  std::vector<double> potential_;
  SolveStats stats_;
  ReferenceElement potential_ref_;
  std::optional<ReferenceElement> velocity_ref_;
};

/// Solves the assembled system, re-injects the eliminated boundary values and
/// removes the potential mean (checked against the tolerance for the
/// multiplier gauge, imposed by a shift for the pinned gauge).
DiscreteSolution solve(const LinearSystem &system, const SolveOptions &options = {});

/// Nodal interpolant of the exact fields (velocity only for mixed methods).
DiscreteSolution interpolate(const FormulationSpec &spec, std::shared_ptr<const Mesh> mesh,
                             const ExactSolution &exact);

/// Coefficients of `solution` in the unknown layout of `system`.
std::vector<double> to_unknowns(const LinearSystem &system, const DiscreteSolution &solution);

} // namespace darcy
