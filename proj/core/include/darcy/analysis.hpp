#pragma once

#include "darcy/assembly.hpp"
#include "darcy/cases.hpp"
#include "darcy/solver.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace darcy {

struct ExclusionDisk {
  Point2 center;
  double radius{0.0};

  /// Strictly inside.
  [[nodiscard]] bool contains(const Point2 &p) const { return norm(p - center) < radius; }
};

enum class ErrorNorm : std::uint8_t { L2U, H1SemiU, DivU, RotLambdaU, L2P, H1SemiP };
inline constexpr std::array<ErrorNorm, 6> kAllNorms{ErrorNorm::L2U,        ErrorNorm::H1SemiU, ErrorNorm::DivU,
                                                     ErrorNorm::RotLambdaU, ErrorNorm::L2P,     ErrorNorm::H1SemiP};

/// Column names: eL2_u, eH1semi_u, eDiv_u, eRotLambda_u, eL2_p, eH1semi_p.
[[nodiscard]] std::string_view norm_name(ErrorNorm n);

struct ErrorReport {
  double eL2_u{0.0};
  double eH1semi_u{0.0};
  double eDiv_u{0.0};
  double eRotLambda_u{0.0};
  double eL2_p{0.0};
  double eH1semi_p{0.0};
  double h{0.0};
  int velocity_dofs{0};
  int potential_dofs{0};
  std::vector<ExclusionDisk> exclusions;

  [[nodiscard]] double value(ErrorNorm n) const;
};

/// Errors of `solution` against `exact`, integrated with a tensor Gauss rule of
/// (max degree + 3) points per direction unless overridden. Quadrature points
/// strictly inside an exclusion disk are skipped.
ErrorReport compute_errors(const DiscreteSolution &solution, const ExactSolution &exact,
                           std::span<const ExclusionDisk> exclusions = {},
                           std::optional<int> quadrature_order = std::nullopt);

/// Rate marker for an exact (zero) error.
inline constexpr double kExactRate = std::numeric_limits<double>::infinity();

/// ln(e_coarse / e_fine) / ln(h_coarse / h_fine); kExactRate if either error is 0.
[[nodiscard]] double pairwise_rate(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Least-squares slope of ln e against ln h over rows with e > 0; NaN when
/// fewer than two such rows remain.
[[nodiscard]] double least_squares_slope(std::span<const double> h, std::span<const double> e);

struct NormRate {
  double pairwise{std::numeric_limits<double>::quiet_NaN()};
  double slope{std::numeric_limits<double>::quiet_NaN()};
};

struct ConvergenceRow {
  int nx{0};
  double h{0.0};
  ErrorReport errors;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows; ///< decreasing h
  std::array<NormRate, kAllNorms.size()> rates{};

  [[nodiscard]] const NormRate &rate(ErrorNorm n) const { return rates[static_cast<std::size_t>(n)]; }
};

/// Sorts rows by decreasing h and fits every norm. Throws InvalidArgument
/// with fewer than two rows.
ConvergenceTable fit_rates(std::vector<ConvergenceRow> rows);

/// B(w, w_bar) and alpha ||w||^2 for a reduced-system vector w = (u, p) with
/// w_bar = (u, -p); `gram` is the product-norm matrix on the same unknowns.
struct WitnessValue {
  double lhs{0.0};
  double rhs{0.0};
};
WitnessValue coercivity_witness(const LinearSystem &system, const CsrMatrix &gram, std::span<const double> w,
                                double alpha);

struct StabilityResult {
  double alpha{0.0};
  double min_ratio{std::numeric_limits<double>::infinity()};
  int trials{0};
  int violations{0}; ///< trials with lhs/rhs below 1 - kWitnessTolerance
};

/// Roundoff allowance on lhs/rhs. For constant media the bound is attained
/// exactly, so the ratio sits at 1 to machine precision.
inline constexpr double kWitnessTolerance = 1e-12;

/// alpha = min(lambda_min, kappa_min) / 2.
[[nodiscard]] double coercivity_constant(const MediumModel &medium);

/// Draws `trials` vectors uniform on [-1, 1] per free DOF (fixed seed) and
/// reports min lhs/rhs of the coercivity witness in the method's natural norm.
StabilityResult stability_diagnostic(const FormulationSpec &spec, std::shared_ptr<const Mesh> mesh,
                                     const MediumModel &medium, int trials, std::uint64_t seed = 20240521);

} // namespace darcy
