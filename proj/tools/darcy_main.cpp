#include "report_io.hpp"

#include "darcy/analysis.hpp"
#include "darcy/assembly.hpp"
#include "darcy/errors.hpp"
#include "darcy/study.hpp"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace darcy;

struct Options {
  std::vector<std::string> methods{"cgls"};
  std::vector<std::string> degrees{"1,1"};
  int nx{16};
  std::vector<int> meshes;
  std::string case_name{"homogeneous"};
  std::optional<double> k1;
  std::optional<double> k2;
  Deltas deltas;
  std::optional<int> quadrature;
  std::string format{"csv"};
  std::string out;
  bool deterministic{false};
  bool exclude{true};
  std::string solver{"direct"};
  std::string dump_fields;
};

DegreePair parse_degrees(const std::string &text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("degrees must be given as l,k (got '" + text + "')");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception &) {
    throw InvalidArgument("degrees must be given as l,k (got '" + text + "')");
  }
}

RunConfig make_config(const Options &o, std::vector<int> meshes) {
  RunConfig c;
  c.case_spec.id = parse_case(o.case_name);
  if (o.k1 || o.k2) {
    if (c.case_spec.id != CaseId::Custom) throw InvalidArgument("--k1/--k2 require --case custom");
  }
  c.case_spec.k1 = o.k1.value_or(0.0);
  c.case_spec.k2 = o.k2.value_or(1.0);
  c.methods.clear();
  for (const auto &m : o.methods) c.methods.push_back(parse_method(m));
  c.degrees.clear();
  for (const auto &d : o.degrees) c.degrees.push_back(parse_degrees(d));
  c.meshes = std::move(meshes);
  c.quadrature = o.quadrature;
  c.deltas = o.deltas;
  c.exclude = o.exclude;
  c.deterministic = o.deterministic;
  if (o.solver == "minres") {
    c.solver.kind = SolverKind::Minres;
  } else if (o.solver != "direct") {
    throw InvalidArgument("unknown solver '" + o.solver + "'");
  }
  c.validate();
  return c;
}

std::vector<int> default_meshes(const Options &o, bool fivespot) {
  if (!o.meshes.empty()) return o.meshes;
  const bool linear = parse_degrees(o.degrees.front()).k == 1;
  if (fivespot) return linear ? std::vector<int>{16, 32, 64, 128} : std::vector<int>{8, 16, 32, 64};
  return linear ? std::vector<int>{8, 16, 32, 64} : std::vector<int>{4, 8, 16, 32};
}

void emit(const Options &o, const StudyResult &study) {
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw InvalidArgument("cannot open '" + o.out + "' for writing");
  }
  std::ostream &os = o.out.empty() ? std::cout : file;
  if (o.format == "json") {
    io::write_json(os, study);
  } else {
    io::write_csv(os, study);
  }
}

int report_failures(const StudyResult &study) {
  for (const RunFailure &f : study.failures) {
    std::cerr << "failed: method=" << method_name(f.method) << " l=" << f.degrees.l << " k=" << f.degrees.k
              << " nx=" << f.nx << ": " << f.message << '\n';
  }
  return study.ok() ? 0 : 1;
}

int cmd_run(const Options &o) {
  const RunConfig config = make_config(o, {o.nx});
  if (o.dump_fields.empty()) {
    const StudyResult study = run_study(config);
    emit(o, study);
    return report_failures(study);
  }
  if (config.methods.size() != 1 || config.degrees.size() != 1) {
    throw InvalidArgument("--dump-fields needs a single method and degree pair");
  }
  const auto exact = make_case(config.case_spec);
  const FormulationSpec spec = config.formulation(config.methods.front(), config.degrees.front());
  std::optional<DiscreteSolution> solution;
  StudyResult study;
  study.case_label = exact->name();
  StudyTable table;
  table.method = spec.method();
  table.degrees = {spec.velocity_degree(), spec.potential_degree()};
  try {
    RunResult r = run_single(spec, *exact, o.nx, config, solution);
    table.table.rows.push_back({r.nx, r.errors.h, r.errors});
    table.runs.push_back(std::move(r));
  } catch (const std::exception &e) {
    study.failures.push_back({table.method, table.degrees, o.nx, e.what()});
  }
  study.tables.push_back(std::move(table));
  emit(o, study);
  if (solution) {
    std::ofstream fields(o.dump_fields);
    if (!fields) throw InvalidArgument("cannot open '" + o.dump_fields + "' for writing");
    io::write_fields(fields, *solution);
  }
  return report_failures(study);
}

int cmd_convergence(const Options &o, bool fivespot) {
  Options local = o;
  if (fivespot) local.case_name = "fivespot";
  const RunConfig config = make_config(local, default_meshes(local, fivespot));
  if (config.meshes.size() < 2) throw InvalidArgument("a convergence study needs at least two meshes");
  const StudyResult study = run_study(config);
  emit(local, study);
  return report_failures(study);
}

int cmd_mesh_info(const Options &o) {
  const RunConfig config = make_config(o, {o.nx});
  const auto exact = make_case(config.case_spec);
  const auto mesh = std::make_shared<const Mesh>(exact->lx(), exact->ly(), o.nx, o.nx);
  std::cout << "domain " << mesh->lx() << " x " << mesh->ly() << '\n'
            << "cells " << mesh->nx() << " x " << mesh->ny() << " (" << mesh->num_quads() << ")\n"
            << "h " << io::format_number(mesh->h()) << '\n'
            << "vertices " << mesh->num_nodes() << '\n'
            << "boundary_edges " << mesh->boundary_edges().size() << '\n';
  for (Method m : config.methods) {
    for (const DegreePair &d : config.degrees) {
      const FormulationSpec spec = config.formulation(m, d);
      const LinearSystem system = assemble(spec, mesh, exact->medium(), exact->discrete_source(*mesh),
                                           exact->boundary_flux());
      std::cout << method_name(m) << " l=" << spec.velocity_degree() << " k=" << spec.potential_degree()
                << " velocity_dofs=" << (system.velocity_dofs ? system.velocity_dofs->size() : 0)
                << " free_velocity=" << system.num_free_velocity
                << " potential_dofs=" << system.potential_dofs.size() << " system=" << system.size()
                << " nnz=" << system.matrix.nnz() << '\n';
    }
  }
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) throw InvalidArgument("cannot open '" + o.out + "' for writing");
    write_mesh(file, *mesh);
  }
  return 0;
}

int cmd_dump_system(const Options &o) {
  const RunConfig config = make_config(o, {o.nx});
  if (config.methods.size() != 1 || config.degrees.size() != 1) {
    throw InvalidArgument("dump-system needs a single method and degree pair");
  }
  const auto exact = make_case(config.case_spec);
  const auto mesh = std::make_shared<const Mesh>(exact->lx(), exact->ly(), o.nx, o.nx);
  AssemblyOptions options;
  options.quadrature_order = config.quadrature;
  const LinearSystem system =
      assemble(config.formulation(config.methods.front(), config.degrees.front()), mesh, exact->medium(),
               exact->discrete_source(*mesh), exact->boundary_flux(), options);
  const std::string prefix = o.out.empty() ? "system" : o.out;
  std::ofstream matrix(prefix + "_matrix.txt");
  std::ofstream rhs(prefix + "_rhs.txt");
  if (!matrix || !rhs) throw InvalidArgument("cannot write '" + prefix + "_*.txt'");
  write_system(matrix, rhs, system);
  std::cout << "wrote " << prefix << "_matrix.txt (" << system.size() << " x " << system.size() << ", "
            << system.matrix.nnz() << " nonzeros) and " << prefix << "_rhs.txt\n";
  return 0;
}

void add_common(CLI::App *cmd, Options &o, bool many_meshes) {
  cmd->add_option("--method", o.methods, "Method(s): primal, cgls, gls_hdiv, mgls, hvm, shvm, dgls, stokes")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--degrees", o.degrees, "Velocity and potential degrees as l,k (repeatable)")
      ->capture_default_str();
  if (many_meshes) {
    cmd->add_option("--meshes", o.meshes, "Cells per direction, strictly increasing (e.g. 8,16,32)")
        ->delimiter(',');
  } else {
    cmd->add_option("--nx", o.nx, "Cells per direction")->check(CLI::PositiveNumber)->capture_default_str();
  }
  cmd->add_option("--case", o.case_name, "homogeneous, nonhom_k1_1, nonhom_k1_10, fivespot or custom")
      ->capture_default_str();
  cmd->add_option("--k1", o.k1, "Custom case: conductivity amplitude");
  cmd->add_option("--k2", o.k2, "Custom case: conductivity offset");
  cmd->add_option("--delta1", o.deltas.d1, "Darcy residual weight (mgls, dgls)")->capture_default_str();
  cmd->add_option("--delta2", o.deltas.d2, "Mass balance residual weight (mgls, dgls)")->capture_default_str();
  cmd->add_option("--delta3", o.deltas.d3, "Curl residual weight (dgls)")->capture_default_str();
  cmd->add_option("--quadrature", o.quadrature, "Gauss points per direction for assembly")
      ->check(CLI::Range(1, 8));
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output file (standard output if omitted)");
  cmd->add_flag("--deterministic", o.deterministic, "Run everything on one thread");
  cmd->add_flag("--exclude,!--no-exclude", o.exclude, "Exclude the well disks from five-spot errors");
  cmd->add_option("--solver", o.solver, "Linear solver")
      ->check(CLI::IsMember({"direct", "minres"}))
      ->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Stabilized mixed finite element solver for Darcy flow"};
  app.require_subcommand(1);

  Options o;
  auto *run = app.add_subcommand("run", "Solve on one mesh and report errors");
  add_common(run, o, false);
  run->add_option("--dump-fields", o.dump_fields, "Write x y u1 u2 p at every mesh vertex");

  auto *conv = app.add_subcommand("convergence", "Error table and rates over a mesh sequence");
  add_common(conv, o, true);

  auto *five = app.add_subcommand("fivespot", "Quarter five-spot study with well exclusion disks");
  add_common(five, o, true);

  auto *info = app.add_subcommand("mesh-info", "Mesh and system sizes");
  add_common(info, o, false);

  auto *dump = app.add_subcommand("dump-system", "Write the assembled matrix and right-hand side");
  add_common(dump, o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(o);
    if (conv->parsed()) return cmd_convergence(o, false);
    if (five->parsed()) return cmd_convergence(o, true);
    if (info->parsed()) return cmd_mesh_info(o);
    if (dump->parsed()) return cmd_dump_system(o);
  } catch (const InvalidArgument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
