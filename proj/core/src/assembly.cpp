#include "darcy/assembly.hpp"

#include "darcy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace darcy {

double CsrMatrix::at(int r, int c) const {
  const int k = find(r, c);
  return k < 0 ? 0.0 : val[static_cast<std::size_t>(k)];
}

int CsrMatrix::find(int r, int c) const {
  const auto begin = col.begin() + row_ptr[static_cast<std::size_t>(r)];
  const auto end = col.begin() + row_ptr[static_cast<std::size_t>(r) + 1];
  const auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return -1;
  return static_cast<int>(it - col.begin());
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
  for (int r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int k = row_ptr[static_cast<std::size_t>(r)]; k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      s += val[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col[static_cast<std::size_t>(k)])];
    }
    y[static_cast<std::size_t>(r)] = s;
  }
  return y;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : val) m = std::max(m, std::abs(v));
  return m;
}

double CsrMatrix::asymmetry() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int k = row_ptr[static_cast<std::size_t>(r)]; k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      const int c = col[static_cast<std::size_t>(k)];
      worst = std::max(worst, std::abs(val[static_cast<std::size_t>(k)] - at(c, r)));
    }
  }
  return worst / scale;
}

Eigen::SparseMatrix<double> CsrMatrix::to_eigen() const {
  const Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor>> view(
      rows, cols, nnz(), row_ptr.data(), col.data(), val.data());
  Eigen::SparseMatrix<double> out(view);
  out.makeCompressed();
  return out;
}

int LinearSystem::potential_unknown(int d) const {
  if (gauge == PotentialGauge::PinFirstNode) return d == 0 ? -1 : potential_offset + d - 1;
  return potential_offset + d;
}

namespace {

constexpr double kCornerFluxTolerance = 1e-12;

CellGeometry cell_geometry(const Mesh &mesh, int quad) {
  return {mesh.quad_origin(quad), mesh.hx(), mesh.hy()};
}

// Reference coordinates of a point on a cell side, t in [-1, 1].
Point2 side_point(BoundarySide side, double t) {
  switch (side) {
  case BoundarySide::Bottom: return {t, -1.0};
  case BoundarySide::Right: return {1.0, t};
  case BoundarySide::Top: return {t, 1.0};
  case BoundarySide::Left: return {-1.0, t};
  }
  return {};
}

double side_length(const Mesh &mesh, BoundarySide side) {
  return (side == BoundarySide::Bottom || side == BoundarySide::Top) ? mesh.hx() : mesh.hy();
}

// Local unknown indices of a cell (velocity block then potential), -1 where
// the DOF is eliminated or pinned.
std::vector<int> cell_unknowns(const LinearSystem &sys, int quad) {
  std::vector<int> out;
  if (sys.velocity_dofs) {
    for (int d : sys.velocity_dofs->cell_dofs(quad)) out.push_back(sys.velocity_unknown[static_cast<std::size_t>(d)]);
  }
  for (int d : sys.potential_dofs.cell_dofs(quad)) out.push_back(sys.potential_unknown(d));
  return out;
}

CsrMatrix build_pattern(const LinearSystem &sys) {
  const int n = sys.num_free_velocity + sys.num_potential_unknowns + (sys.multiplier >= 0 ? 1 : 0);
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int quad = 0; quad < sys.mesh->num_quads(); ++quad) {
    const auto unknowns = cell_unknowns(sys, quad);
    for (int r : unknowns) {
      if (r < 0) continue;
      auto &row = rows[static_cast<std::size_t>(r)];
      for (int c : unknowns) {
        if (c >= 0) row.push_back(c);
      }
    }
  }
  if (sys.multiplier >= 0) {
    auto &mrow = rows[static_cast<std::size_t>(sys.multiplier)];
    for (int d = 0; d < sys.potential_dofs.size(); ++d) {
      const int r = sys.potential_unknown(d);
      rows[static_cast<std::size_t>(r)].push_back(sys.multiplier);
      mrow.push_back(r);
    }
  }
  CsrMatrix m;
  m.rows = n;
  m.cols = n;
  m.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int r = 0; r < n; ++r) {
    auto &row = rows[static_cast<std::size_t>(r)];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    m.row_ptr[static_cast<std::size_t>(r) + 1] = m.row_ptr[static_cast<std::size_t>(r)] + static_cast<int>(row.size());
  }
  m.col.reserve(static_cast<std::size_t>(m.row_ptr.back()));
  for (auto &row : rows) {
    m.col.insert(m.col.end(), row.begin(), row.end());
    std::vector<int>().swap(row);
  }
  m.val.assign(m.col.size(), 0.0);
  return m;
}

void prescribe_velocity(LinearSystem &sys, const NormalFlux &flux) {
  const DofMap &vel = *sys.velocity_dofs;
  sys.velocity_unknown.assign(static_cast<std::size_t>(vel.size()), 0);
  sys.velocity_prescribed.assign(static_cast<std::size_t>(vel.size()), 0.0);
  std::vector<bool> fixed(static_cast<std::size_t>(vel.size()), false);

  for (int node = 0; node < vel.num_lattice_nodes(); ++node) {
    const auto sides = vel.boundary_sides(node);
    if (sides == 0) continue;
    const Point2 x = vel.lattice_position(node);
    for (int s = 0; s < 4; ++s) {
      const auto side = static_cast<BoundarySide>(s);
      if ((sides & side_bit(side)) == 0) continue;
      const Vec2 n = outward_normal(side);
      const double g = flux(x, n);
      if (vel.is_corner(node) && std::abs(g) > kCornerFluxTolerance) {
        throw IllPosedBoundary("nonzero normal flux " + std::to_string(g) + " at corner (" +
                               std::to_string(x.x) + ", " + std::to_string(x.y) + ")");
      }
      const int comp = (n.x != 0.0) ? 0 : 1;
      const auto dof = static_cast<std::size_t>(2 * node + comp);
      fixed[dof] = true;
      sys.velocity_prescribed[dof] = g * (comp == 0 ? n.x : n.y);
    }
  }
  int next = 0;
  for (std::size_t d = 0; d < fixed.size(); ++d) {
    sys.velocity_unknown[d] = fixed[d] ? -1 : next++;
  }
  sys.num_free_velocity = next;
}

// Adds <g_h, q> over the boundary, g_h = u_h . n built from the prescribed
// velocity DOFs. Needed by SHVM, whose (u, grad q) coupling carries the flux
// naturally.
void add_interpolated_flux_load(LinearSystem &sys, const QuadratureRule &rule) {
  const Mesh &mesh = *sys.mesh;
  const DofMap &vel = *sys.velocity_dofs;
  const ReferenceElement vel_ref(vel.degree());
  const ReferenceElement pot_ref(sys.potential_dofs.degree());
  for (const auto &edge : mesh.boundary_edges()) {
    const auto vdofs = vel.cell_dofs(edge.quad);
    const auto pdofs = sys.potential_dofs.cell_dofs(edge.quad);
    const double half_len = 0.5 * side_length(mesh, edge.side);
    for (const auto &qp : rule.rule_1d()) {
      const Point2 xi = side_point(edge.side, qp.x);
      const ShapeValues sv = vel_ref.eval(xi);
      double flux = 0.0;
      for (std::size_t a = 0; a < sv.values.size(); ++a) {
        for (int c = 0; c < 2; ++c) {
          const auto d = static_cast<std::size_t>(vdofs[2 * a + static_cast<std::size_t>(c)]);
          if (sys.velocity_unknown[d] >= 0) continue;
          flux += sys.velocity_prescribed[d] * sv.values[a] * (c == 0 ? edge.normal.x : edge.normal.y);
        }
      }
      const ShapeValues sp = pot_ref.eval(xi);
      for (std::size_t b = 0; b < sp.values.size(); ++b) {
        const int r = sys.potential_unknown(pdofs[b]);
        if (r >= 0) sys.rhs[static_cast<std::size_t>(r)] += qp.w * half_len * flux * sp.values[b];
      }
    }
  }
}

// Primal natural condition: (K grad p, grad q) = (f, q) - <g, q>.
void add_primal_flux_load(LinearSystem &sys, const QuadratureRule &rule, const NormalFlux &flux) {
  const Mesh &mesh = *sys.mesh;
  const ReferenceElement pot_ref(sys.potential_dofs.degree());
  for (const auto &edge : mesh.boundary_edges()) {
    const auto pdofs = sys.potential_dofs.cell_dofs(edge.quad);
    const CellGeometry cell = cell_geometry(mesh, edge.quad);
    const double half_len = 0.5 * side_length(mesh, edge.side);
    for (const auto &qp : rule.rule_1d()) {
      const Point2 xi = side_point(edge.side, qp.x);
      const double g = flux(cell.map(xi), edge.normal);
      const ShapeValues sp = pot_ref.eval(xi);
      for (std::size_t b = 0; b < sp.values.size(); ++b) {
        const int r = sys.potential_unknown(pdofs[b]);
        if (r >= 0) sys.rhs[static_cast<std::size_t>(r)] -= qp.w * half_len * g * sp.values[b];
      }
    }
  }
}

} // namespace

LinearSystem assemble(const FormulationSpec &spec, std::shared_ptr<const Mesh> mesh_ptr,
                      const MediumModel &medium, const ScalarField &source, const NormalFlux &flux,
                      const AssemblyOptions &options) {
  if (!mesh_ptr) throw InvalidArgument("assemble: null mesh");
  const Mesh &mesh = *mesh_ptr;
  const int order = options.quadrature_order.value_or(spec.default_quadrature_order());
  const QuadratureRule rule(order);

  LinearSystem sys{spec,
                   mesh_ptr,
                   medium,
                   spec.is_mixed() ? std::optional<DofMap>(DofMap(mesh, spec.velocity_degree(), FieldKind::Vector))
                                   : std::nullopt,
                   DofMap(mesh, spec.potential_degree(), FieldKind::Scalar),
                   order,
                   options.gauge,
                   {},
                   {},
                   {},
                   {},
                   0,
                   0,
                   0,
                   -1,
                   {}};

  if (sys.velocity_dofs) prescribe_velocity(sys, flux);
  sys.potential_offset = sys.num_free_velocity;
  const int np = sys.potential_dofs.size();
  sys.num_potential_unknowns = options.gauge == PotentialGauge::PinFirstNode ? np - 1 : np;
  if (options.gauge == PotentialGauge::MeanMultiplier) {
    sys.multiplier = sys.potential_offset + sys.num_potential_unknowns;
  }

  sys.matrix = build_pattern(sys);
  sys.rhs.assign(static_cast<std::size_t>(sys.matrix.rows), 0.0);
  sys.potential_weights.assign(static_cast<std::size_t>(np), 0.0);

  const ElementKernel kernel(spec, rule);
  for (int quad = 0; quad < mesh.num_quads(); ++quad) {
    const CellGeometry cell = cell_geometry(mesh, quad);
    const LocalContribution local = kernel.compute(cell, medium, source);
    const auto unknowns = cell_unknowns(sys, quad);

    std::vector<double> prescribed(unknowns.size(), 0.0);
    if (sys.velocity_dofs) {
      const auto vdofs = sys.velocity_dofs->cell_dofs(quad);
      for (std::size_t j = 0; j < vdofs.size(); ++j) {
        prescribed[j] = sys.velocity_prescribed[static_cast<std::size_t>(vdofs[j])];
      }
    }
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
      const int r = unknowns[i];
      if (r < 0) continue;
      double rhs = local.load(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < unknowns.size(); ++j) {
        const double a = local.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const int c = unknowns[j];
        if (c >= 0) {
          sys.matrix.val[static_cast<std::size_t>(sys.matrix.find(r, c))] += a;
        } else if (static_cast<int>(j) < local.velocity_size) {
          rhs -= a * prescribed[j];
        }
      }
      sys.rhs[static_cast<std::size_t>(r)] += rhs;
    }

    const Eigen::VectorXd integrals = kernel.potential_integrals(cell);
    const auto pdofs = sys.potential_dofs.cell_dofs(quad);
    for (std::size_t b = 0; b < pdofs.size(); ++b) {
      sys.potential_weights[static_cast<std::size_t>(pdofs[b])] += integrals(static_cast<Eigen::Index>(b));
    }
  }

  if (spec.method() == Method::Shvm) add_interpolated_flux_load(sys, rule);
  if (spec.method() == Method::Primal) add_primal_flux_load(sys, rule, flux);

  if (sys.multiplier >= 0) {
    for (int d = 0; d < np; ++d) {
      const int r = sys.potential_unknown(d);
      const double w = sys.potential_weights[static_cast<std::size_t>(d)];
      sys.matrix.val[static_cast<std::size_t>(sys.matrix.find(r, sys.multiplier))] = w;
      sys.matrix.val[static_cast<std::size_t>(sys.matrix.find(sys.multiplier, r))] = w;
    }
  }
  return sys;
}

CsrMatrix assemble_norm_matrix(const LinearSystem &system, ProductNorm norm) {
  CsrMatrix gram = system.matrix;
  std::fill(gram.val.begin(), gram.val.end(), 0.0);
  const QuadratureRule rule(system.quadrature_order);
  const ElementKernel kernel(system.spec, rule);
  const Mesh &mesh = *system.mesh;
  for (int quad = 0; quad < mesh.num_quads(); ++quad) {
    const Eigen::MatrixXd local = kernel.norm_matrix(cell_geometry(mesh, quad), system.medium, norm);
    const auto unknowns = cell_unknowns(system, quad);
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
      if (unknowns[i] < 0) continue;
      for (std::size_t j = 0; j < unknowns.size(); ++j) {
        if (unknowns[j] < 0) continue;
        gram.val[static_cast<std::size_t>(gram.find(unknowns[i], unknowns[j]))] +=
            local(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return gram;
}

void write_system(std::ostream &matrix_out, std::ostream &rhs_out, const LinearSystem &system) {
  const auto p1 = matrix_out.precision(17);
  const auto p2 = rhs_out.precision(17);
  const CsrMatrix &m = system.matrix;
  for (int r = 0; r < m.rows; ++r) {
    for (int k = m.row_ptr[static_cast<std::size_t>(r)]; k < m.row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      matrix_out << r << ' ' << m.col[static_cast<std::size_t>(k)] << ' ' << m.val[static_cast<std::size_t>(k)] << '\n';
    }
  }
  for (double v : system.rhs) rhs_out << v << '\n';
  matrix_out.precision(p1);
  rhs_out.precision(p2);
}

} // namespace darcy
