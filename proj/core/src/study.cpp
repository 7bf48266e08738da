#include "darcy/study.hpp"

#include "darcy/errors.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace darcy {

std::string_view case_name(CaseId id) {
  switch (id) {
  case CaseId::Homogeneous: return "homogeneous";
  case CaseId::NonhomK1_1: return "nonhom_k1_1";
  case CaseId::NonhomK1_10: return "nonhom_k1_10";
  case CaseId::FiveSpot: return "fivespot";
  case CaseId::Custom: return "custom";
  }
  return "";
}

CaseId parse_case(std::string_view name) {
  for (CaseId id : {CaseId::Homogeneous, CaseId::NonhomK1_1, CaseId::NonhomK1_10, CaseId::FiveSpot, CaseId::Custom}) {
    if (case_name(id) == name) return id;
  }
  throw InvalidArgument("unknown case '" + std::string(name) + "'");
}

std::shared_ptr<const ExactSolution> make_case(const CaseSpec &spec) {
  switch (spec.id) {
  case CaseId::Homogeneous: return make_manufactured(0.0, 1.0);
  case CaseId::NonhomK1_1: return make_manufactured(1.0, 1.0);
  case CaseId::NonhomK1_10: return make_manufactured(10.0, 1.0);
  case CaseId::FiveSpot: return make_five_spot();
  case CaseId::Custom: return make_manufactured(spec.k1, spec.k2);
  }
  throw InvalidArgument("unknown case");
}

std::vector<ExclusionDisk> default_exclusions(const ExactSolution &exact) {
  const auto *five = dynamic_cast<const FiveSpotCase *>(&exact);
  if (!five) return {};
  const double r = five->exclusion_radius();
  return {{{0.0, 0.0}, r}, {{five->side(), five->side()}, r}};
}

void RunConfig::validate() const {
  if (methods.empty()) throw InvalidArgument("no method given");
  if (degrees.empty()) throw InvalidArgument("no degree pair given");
  if (meshes.empty()) throw InvalidArgument("mesh list is empty");
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    if (meshes[i] < 1) throw InvalidArgument("mesh sizes must be positive");
    if (i > 0 && meshes[i] <= meshes[i - 1]) throw InvalidArgument("mesh sizes must be strictly increasing");
  }
  if (quadrature && (*quadrature < 1 || *quadrature > 8)) {
    throw InvalidArgument("quadrature order must be in 1..8");
  }
  for (Method m : methods) {
    for (const DegreePair &d : degrees) (void)formulation(m, d);
  }
}

FormulationSpec RunConfig::formulation(Method method, DegreePair degrees) const {
  const int l = method == Method::Primal ? 0 : degrees.l;
  return {method, l, degrees.k, deltas};
}

RunResult run_single(const FormulationSpec &spec, const ExactSolution &exact, int nx, const RunConfig &config,
                     std::optional<DiscreteSolution> &solution) {
  auto mesh = std::make_shared<const Mesh>(exact.lx(), exact.ly(), nx, nx);
  AssemblyOptions options;
  options.quadrature_order = config.quadrature;
  const LinearSystem system =
      assemble(spec, mesh, exact.medium(), exact.discrete_source(*mesh), exact.boundary_flux(), options);
  solution.emplace(solve(system, config.solver));

  std::vector<ExclusionDisk> disks;
  if (config.exclude) disks = default_exclusions(exact);

  RunResult r;
  r.method = spec.method();
  r.degrees = {spec.velocity_degree(), spec.potential_degree()};
  r.nx = nx;
  r.system_size = system.size();
  r.errors = compute_errors(*solution, exact, disks);
  r.stats = solution->stats();
  return r;
}

RunResult run_single(const FormulationSpec &spec, const ExactSolution &exact, int nx, const RunConfig &config) {
  std::optional<DiscreteSolution> solution;
  return run_single(spec, exact, nx, config, solution);
}

namespace {

struct Outcome {
  std::optional<RunResult> result;
  std::string error;
};

Outcome run_guarded(const FormulationSpec &spec, const ExactSolution &exact, int nx, const RunConfig &config) {
  try {
    return {run_single(spec, exact, nx, config), {}};
  } catch (const std::exception &e) {
    return {std::nullopt, e.what()};
  }
}

} // namespace

StudyResult run_study(const RunConfig &config) {
  config.validate();
  const auto exact = make_case(config.case_spec);

  struct Job {
    std::size_t table;
    FormulationSpec spec;
    int nx;
  };
  StudyResult study;
  study.case_label = exact->name();
  std::vector<Job> jobs;
  for (Method m : config.methods) {
    for (const DegreePair &d : config.degrees) {
      const FormulationSpec spec = config.formulation(m, d);
      StudyTable t;
      t.method = m;
      t.degrees = {spec.velocity_degree(), spec.potential_degree()};
      study.tables.push_back(std::move(t));
      for (int nx : config.meshes) jobs.push_back({study.tables.size() - 1, spec, nx});
    }
  }

  std::vector<Outcome> outcomes(jobs.size());
  const unsigned workers = config.deterministic ? 1u : std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = run_guarded(jobs[i].spec, *exact, jobs[i].nx, config);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, jobs.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          outcomes[i] = run_guarded(jobs[i].spec, *exact, jobs[i].nx, config);
        }
      });
    }
    for (auto &t : pool) t.join();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    StudyTable &t = study.tables[jobs[i].table];
    if (outcomes[i].result) {
      t.runs.push_back(std::move(*outcomes[i].result));
    } else {
      study.failures.push_back({t.method, t.degrees, jobs[i].nx, outcomes[i].error});
    }
  }
  for (StudyTable &t : study.tables) {
    std::vector<ConvergenceRow> rows;
    for (const RunResult &r : t.runs) rows.push_back({r.nx, r.errors.h, r.errors});
    if (rows.size() >= 2) {
      t.table = fit_rates(std::move(rows));
    } else {
      t.table.rows = std::move(rows);
    }
  }
  return study;
}

} // namespace darcy
