#include "darcy/solver.hpp"

#include "darcy/errors.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#ifdef DARCY_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include <cmath>
#include <string>

namespace darcy {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

double relative_residual(const SpMat &a, const Eigen::VectorXd &x, const Eigen::VectorXd &b) {
  const double nb = b.norm();
  const double nr = (b - a * x).norm();
  return nb > 0.0 ? nr / nb : nr;
}

// Jacobi preconditioner built from |a_ii|; zero diagonals (the multiplier)
// fall back to 1.
class AbsDiagonalPreconditioner {
public:
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

  AbsDiagonalPreconditioner() = default;
  template <typename M> explicit AbsDiagonalPreconditioner(const M &m) { compute(m); }

  template <typename M> AbsDiagonalPreconditioner &analyzePattern(const M &) { return *this; }
  template <typename M> AbsDiagonalPreconditioner &factorize(const M &m) {
    inv_.resize(m.cols());
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      const double d = std::abs(m.coeff(i, i));
      inv_(i) = d > 0.0 ? 1.0 / d : 1.0;
    }
    return *this;
  }
  template <typename M> AbsDiagonalPreconditioner &compute(const M &m) { return factorize(m); }

  template <typename Rhs> Eigen::VectorXd solve(const Rhs &b) const { return inv_.cwiseProduct(b); }

  [[nodiscard]] Eigen::ComputationInfo info() const { return Eigen::Success; }
  [[nodiscard]] Eigen::Index rows() const { return inv_.size(); }
  [[nodiscard]] Eigen::Index cols() const { return inv_.size(); }

private:
  Eigen::VectorXd inv_;
};

template <typename Factorization>
bool refine(const Factorization &f, const SpMat &a, const Eigen::VectorXd &b, Eigen::VectorXd &x,
            const SolveOptions &options, SolveStats &stats) {
  double res = relative_residual(a, x, b);
  int steps = 0;
  while (steps < options.max_refinement_steps && res > 1e-3 * options.residual_tolerance) {
    const Eigen::VectorXd r = b - a * x;
    const Eigen::VectorXd dx = f.solve(r);
    if (!dx.allFinite()) break;
    const Eigen::VectorXd candidate = x + dx;
    const double next = relative_residual(a, candidate, b);
    ++steps;
    if (!(next < res)) break;
    x = candidate;
    res = next;
  }
  stats.relative_residual = res;
  stats.refinement_steps = steps;
  return x.allFinite() && res <= options.residual_tolerance;
}

bool solve_lu(const SpMat &a, const Eigen::VectorXd &b, Eigen::VectorXd &x, const SolveOptions &options,
              SolveStats &stats) {
#ifdef DARCY_HAVE_UMFPACK
  Eigen::UmfPackLU<SpMat> lu;
  lu.compute(a);
  stats.backend = "umfpack";
#else
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  stats.backend = "sparse-lu";
#endif
  if (lu.info() != Eigen::Success) return false;
  x = lu.solve(b);
  return refine(lu, a, b, x, options, stats);
}

bool solve_ldlt(const SpMat &a, const Eigen::VectorXd &b, Eigen::VectorXd &x, const SolveOptions &options,
                SolveStats &stats) {
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
  ldlt.compute(a);
  stats.backend = "sparse-ldlt";
  if (ldlt.info() != Eigen::Success) return false;
  x = ldlt.solve(b);
  return refine(ldlt, a, b, x, options, stats);
}

bool solve_minres(const SpMat &a, const Eigen::VectorXd &b, Eigen::VectorXd &x, const SolveOptions &options,
                  SolveStats &stats) {
  Eigen::MINRES<SpMat, Eigen::Lower | Eigen::Upper, AbsDiagonalPreconditioner> minres;
  minres.setMaxIterations(options.max_iterations);
  minres.setTolerance(0.1 * options.residual_tolerance);
  minres.compute(a);
  stats.backend = "minres";
  x = Eigen::VectorXd::Zero(b.size());
  double res = relative_residual(a, x, b);
  for (int restart = 0; restart < 5 && res > options.residual_tolerance; ++restart) {
    x += minres.solve(b - a * x);
    stats.iterations += static_cast<int>(minres.iterations());
    res = relative_residual(a, x, b);
  }
  stats.relative_residual = res;
  return x.allFinite() && res <= options.residual_tolerance;
}

} // namespace

std::vector<double> solve_linear(const CsrMatrix &matrix, std::span<const double> rhs, bool symmetric,
                                 const SolveOptions &options, SolveStats *stats_out) {
  if (matrix.rows != matrix.cols || static_cast<std::size_t>(matrix.rows) != rhs.size()) {
    throw InvalidArgument("solve_linear: dimension mismatch");
  }
  const SpMat a = matrix.to_eigen();
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd x;
  SolveStats stats;

  bool ok = false;
  if (options.kind == SolverKind::Minres) {
    if (!symmetric) throw InvalidArgument("solve_linear: MINRES needs a symmetric system");
    ok = solve_minres(a, b, x, options, stats);
  } else {
    if (symmetric) ok = solve_ldlt(a, b, x, options, stats);
    if (!ok) ok = solve_lu(a, b, x, options, stats);
  }
  if (!ok) {
    throw SingularSystem("linear solve failed (" + stats.backend +
                         ", relative residual " + std::to_string(stats.relative_residual) + ")");
  }
  if (stats_out) *stats_out = stats;
  return {x.data(), x.data() + x.size()};
}

DiscreteSolution::DiscreteSolution(FormulationSpec spec, std::shared_ptr<const Mesh> mesh, MediumModel medium,
                                   std::vector<double> velocity, std::vector<double> potential, SolveStats stats)
    : spec_(spec), mesh_(std::move(mesh)), medium_(medium),
      potential_dofs_(*mesh_, spec_.potential_degree(), FieldKind::Scalar), velocity_(std::move(velocity)),
      potential_(std::move(potential)), stats_(std::move(stats)), potential_ref_(spec_.potential_degree()) {
  if (spec_.is_mixed()) {
    velocity_dofs_.emplace(*mesh_, spec_.velocity_degree(), FieldKind::Vector);
    velocity_ref_.emplace(spec_.velocity_degree());
    if (static_cast<int>(velocity_.size()) != velocity_dofs_->size()) {
      throw InvalidArgument("DiscreteSolution: velocity size mismatch");
    }
  }
  if (static_cast<int>(potential_.size()) != potential_dofs_.size()) {
    throw InvalidArgument("DiscreteSolution: potential size mismatch");
  }
}

double DiscreteSolution::potential_integral() const {
  const QuadratureRule rule(potential_dofs_.degree() + 1);
  std::vector<ShapeValues> basis;
  for (const auto &xi : rule.points()) basis.push_back(potential_ref_.eval(xi));
  double total = 0.0;
  for (int quad = 0; quad < mesh_->num_quads(); ++quad) {
    const auto dofs = potential_dofs_.cell_dofs(quad);
    const double jac = 0.25 * mesh_->hx() * mesh_->hy();
    for (int q = 0; q < rule.size(); ++q) {
      double p = 0.0;
      for (std::size_t b = 0; b < dofs.size(); ++b) {
        p += basis[static_cast<std::size_t>(q)].values[b] * potential_[static_cast<std::size_t>(dofs[b])];
      }
      total += rule.weights()[static_cast<std::size_t>(q)] * jac * p;
    }
  }
  return total;
}

FieldValues DiscreteSolution::evaluate(const Point2 &x) const {
  const int quad = mesh_->locate(x);
  return evaluate_in_cell(quad, physical_to_reference(*mesh_, quad, x));
}

FieldValues DiscreteSolution::evaluate_in_cell(int quad, const Point2 &xi) const {
  const ShapeValues pb = potential_ref_.eval(xi);
  if (velocity_ref_) {
    const ShapeValues vb = velocity_ref_->eval(xi);
    return evaluate_in_cell(quad, xi, &vb, pb);
  }
  return evaluate_in_cell(quad, xi, nullptr, pb);
}

FieldValues DiscreteSolution::evaluate_in_cell(int quad, const Point2 &xi, const ShapeValues *velocity_basis,
                                               const ShapeValues &potential_basis) const {
  const double sx = 2.0 / mesh_->hx();
  const double sy = 2.0 / mesh_->hy();
  FieldValues out;

  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
  const auto pdofs = potential_dofs_.cell_dofs(quad);
  for (std::size_t b = 0; b < pdofs.size(); ++b) {
    const double c = potential_[static_cast<std::size_t>(pdofs[b])];
    out.p += c * potential_basis.values[b];
    out.grad_p.x += c * potential_basis.gradients[b].x * sx;
    out.grad_p.y += c * potential_basis.gradients[b].y * sy;
    if (!velocity_dofs_) {
      hxx += c * potential_basis.hessians[b][0] * sx * sx;
      hxy += c * potential_basis.hessians[b][1] * sx * sy;
      hyy += c * potential_basis.hessians[b][2] * sy * sy;
    }
  }

  if (velocity_dofs_) {
    const auto vdofs = velocity_dofs_->cell_dofs(quad);
    const ShapeValues &vb = *velocity_basis;
    for (std::size_t a = 0; a < vb.values.size(); ++a) {
      const double cx = velocity_[static_cast<std::size_t>(vdofs[2 * a])];
      const double cy = velocity_[static_cast<std::size_t>(vdofs[2 * a + 1])];
      const double gx = vb.gradients[a].x * sx;
      const double gy = vb.gradients[a].y * sy;
      out.u.x += cx * vb.values[a];
      out.u.y += cy * vb.values[a];
      out.grad_u[0][0] += cx * gx;
      out.grad_u[0][1] += cx * gy;
      out.grad_u[1][0] += cy * gx;
      out.grad_u[1][1] += cy * gy;
    }
  } else {
    const Point2 x = reference_to_physical(*mesh_, quad, xi);
    const double k = medium_.kappa(x);
    const Vec2 dk = medium_.grad_kappa(x);
    out.u = -k * out.grad_p;
    out.grad_u = {{{-dk.x * out.grad_p.x - k * hxx, -dk.y * out.grad_p.x - k * hxy},
                   {-dk.x * out.grad_p.y - k * hxy, -dk.y * out.grad_p.y - k * hyy}}};
  }
  out.div_u = out.grad_u[0][0] + out.grad_u[1][1];
  out.rot_u = out.grad_u[1][0] - out.grad_u[0][1];
  return out;
}

DiscreteSolution solve(const LinearSystem &system, const SolveOptions &options) {
  SolveStats stats;
  const auto x = solve_linear(system.matrix, system.rhs, system.symmetric(), options, &stats);

  std::vector<double> velocity;
  if (system.velocity_dofs) {
    velocity.resize(static_cast<std::size_t>(system.velocity_dofs->size()));
    for (std::size_t d = 0; d < velocity.size(); ++d) {
      const int u = system.velocity_unknown[d];
      velocity[d] = u >= 0 ? x[static_cast<std::size_t>(u)] : system.velocity_prescribed[d];
    }
  }

  const int np = system.potential_dofs.size();
  std::vector<double> potential(static_cast<std::size_t>(np), 0.0);
  double integral = 0.0;
  double area = 0.0;
  for (int d = 0; d < np; ++d) {
    const int r = system.potential_unknown(d);
    const double w = system.potential_weights[static_cast<std::size_t>(d)];
    potential[static_cast<std::size_t>(d)] = r >= 0 ? x[static_cast<std::size_t>(r)] : 0.0;
    integral += w * potential[static_cast<std::size_t>(d)];
    area += w;
  }
  if (system.gauge == PotentialGauge::PinFirstNode) {
    const double mean = integral / area;
    for (double &p : potential) p -= mean;
    integral = 0.0;
    for (int d = 0; d < np; ++d) {
      integral += system.potential_weights[static_cast<std::size_t>(d)] * potential[static_cast<std::size_t>(d)];
    }
  }
  stats.potential_mean = integral;
  if (!(std::abs(integral) <= options.mean_tolerance)) {
    throw SingularSystem("potential mean constraint violated: " + std::to_string(integral));
  }
  return {system.spec, system.mesh, system.medium, std::move(velocity), std::move(potential), stats};
}

DiscreteSolution interpolate(const FormulationSpec &spec, std::shared_ptr<const Mesh> mesh,
                             const ExactSolution &exact) {
  std::vector<double> velocity;
  if (spec.is_mixed()) {
    const DofMap vel(*mesh, spec.velocity_degree(), FieldKind::Vector);
    velocity.resize(static_cast<std::size_t>(vel.size()));
    for (int n = 0; n < vel.num_lattice_nodes(); ++n) {
      const Vec2 u = exact.velocity(vel.lattice_position(n));
      velocity[static_cast<std::size_t>(2 * n)] = u.x;
      velocity[static_cast<std::size_t>(2 * n + 1)] = u.y;
    }
  }
  const DofMap pot(*mesh, spec.potential_degree(), FieldKind::Scalar);
  std::vector<double> potential(static_cast<std::size_t>(pot.size()));
  for (int n = 0; n < pot.num_lattice_nodes(); ++n) {
    potential[static_cast<std::size_t>(n)] = exact.pressure(pot.lattice_position(n));
  }
  return {spec, std::move(mesh), exact.medium(), std::move(velocity), std::move(potential)};
}

std::vector<double> to_unknowns(const LinearSystem &system, const DiscreteSolution &solution) {
  std::vector<double> x(static_cast<std::size_t>(system.size()), 0.0);
  for (std::size_t d = 0; d < system.velocity_unknown.size(); ++d) {
    const int u = system.velocity_unknown[d];
    if (u >= 0) x[static_cast<std::size_t>(u)] = solution.velocity()[d];
  }
  for (int d = 0; d < system.potential_dofs.size(); ++d) {
    const int r = system.potential_unknown(d);
    if (r >= 0) x[static_cast<std::size_t>(r)] = solution.potential()[static_cast<std::size_t>(d)];
  }
  return x;
}

} // namespace darcy
