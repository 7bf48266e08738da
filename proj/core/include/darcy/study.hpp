#pragma once

#include "darcy/analysis.hpp"
#include "darcy/cases.hpp"
#include "darcy/formulation.hpp"
#include "darcy/solver.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace darcy {

enum class CaseId : std::uint8_t { Homogeneous, NonhomK1_1, NonhomK1_10, FiveSpot, Custom };

/// homogeneous, nonhom_k1_1, nonhom_k1_10, fivespot, custom.
[[nodiscard]] std::string_view case_name(CaseId id);
/// Throws InvalidArgument for names outside the registry.
[[nodiscard]] CaseId parse_case(std::string_view name);

struct CaseSpec {
  CaseId id{CaseId::Homogeneous};
  double k1{0.0}; ///< custom only
  double k2{1.0}; ///< custom only
};

[[nodiscard]] std::shared_ptr<const ExactSolution> make_case(const CaseSpec &spec);

/// The two quarter disks around the wells of the five-spot case; empty for
/// every other case.
[[nodiscard]] std::vector<ExclusionDisk> default_exclusions(const ExactSolution &exact);

struct DegreePair {
  int l{1};
  int k{1};
  friend bool operator==(const DegreePair &, const DegreePair &) = default;
};

struct RunConfig {
  CaseSpec case_spec;
  std::vector<Method> methods{Method::Cgls};
  std::vector<DegreePair> degrees{{1, 1}};
  std::vector<int> meshes{8};
  std::optional<int> quadrature;
  Deltas deltas;
  bool exclude{true};
  bool deterministic{true};
  SolveOptions solver;

  /// Throws InvalidArgument on an empty or non-increasing mesh list, or a
  /// degree pair rejected by a method. Primal ignores l.
  void validate() const;
  /// Formulation for (method, degrees); Primal gets l = 0.
  [[nodiscard]] FormulationSpec formulation(Method method, DegreePair degrees) const;
};

struct RunResult {
  Method method{Method::Cgls};
  DegreePair degrees;
  int nx{0};
  int system_size{0};
  ErrorReport errors;
  SolveStats stats;
};

/// Assemble, solve and measure one mesh. Exceptions propagate.
RunResult run_single(const FormulationSpec &spec, const ExactSolution &exact, int nx, const RunConfig &config);

/// Same, also returning the discrete solution.
RunResult run_single(const FormulationSpec &spec, const ExactSolution &exact, int nx, const RunConfig &config,
                     std::optional<DiscreteSolution> &solution);

struct RunFailure {
  Method method{Method::Cgls};
  DegreePair degrees;
  int nx{0};
  std::string message;
};

struct StudyTable {
  Method method{Method::Cgls};
  DegreePair degrees;
  std::vector<RunResult> runs; ///< successful runs in mesh order
  ConvergenceTable table;      ///< rates stay NaN with fewer than two runs
};

struct StudyResult {
  std::string case_label;
  std::vector<StudyTable> tables; ///< method-major, then degree pair
  std::vector<RunFailure> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
};

/// Every (method, degree pair, mesh) of the configuration. Runs execute
/// concurrently unless `config.deterministic`; results are ordered by the
/// configuration either way.
StudyResult run_study(const RunConfig &config);

} // namespace darcy
