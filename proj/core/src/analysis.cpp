#include "darcy/analysis.hpp"

#include "darcy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace darcy {

std::string_view norm_name(ErrorNorm n) {
  switch (n) {
  case ErrorNorm::L2U: return "eL2_u";
  case ErrorNorm::H1SemiU: return "eH1semi_u";
  case ErrorNorm::DivU: return "eDiv_u";
  case ErrorNorm::RotLambdaU: return "eRotLambda_u";
  case ErrorNorm::L2P: return "eL2_p";
  case ErrorNorm::H1SemiP: return "eH1semi_p";
  }
  return "";
}

double ErrorReport::value(ErrorNorm n) const {
  switch (n) {
  case ErrorNorm::L2U: return eL2_u;
  case ErrorNorm::H1SemiU: return eH1semi_u;
  case ErrorNorm::DivU: return eDiv_u;
  case ErrorNorm::RotLambdaU: return eRotLambda_u;
  case ErrorNorm::L2P: return eL2_p;
  case ErrorNorm::H1SemiP: return eH1semi_p;
  }
  return 0.0;
}

ErrorReport compute_errors(const DiscreteSolution &solution, const ExactSolution &exact,
                           std::span<const ExclusionDisk> exclusions, std::optional<int> quadrature_order) {
  const FormulationSpec &spec = solution.spec();
  const Mesh &mesh = solution.mesh();
  const MediumModel &medium = solution.medium();
  const QuadratureRule rule(quadrature_order.value_or(spec.max_degree() + 3));

  const ReferenceElement pot_ref(spec.potential_degree());
  std::vector<ShapeValues> pot_basis;
  std::vector<ShapeValues> vel_basis;
  for (const auto &xi : rule.points()) {
    pot_basis.push_back(pot_ref.eval(xi));
    if (spec.is_mixed()) vel_basis.push_back(ReferenceElement(spec.velocity_degree()).eval(xi));
  }

  double l2u = 0.0, h1u = 0.0, divu = 0.0, rotu = 0.0, l2p = 0.0, h1p = 0.0;
  const double jac = 0.25 * mesh.hx() * mesh.hy();
  for (int quad = 0; quad < mesh.num_quads(); ++quad) {
    for (int q = 0; q < rule.size(); ++q) {
      const auto qi = static_cast<std::size_t>(q);
      const Point2 &xi = rule.points()[qi];
      const Point2 x = reference_to_physical(mesh, quad, xi);
      if (std::any_of(exclusions.begin(), exclusions.end(), [&](const ExclusionDisk &d) { return d.contains(x); })) {
        continue;
      }
      const double w = rule.weights()[qi] * jac;
      const FieldValues fh =
          solution.evaluate_in_cell(quad, xi, spec.is_mixed() ? &vel_basis[qi] : nullptr, pot_basis[qi]);

      const Vec2 u = exact.velocity(x);
      const Mat2 gu = exact.velocity_gradient(x);
      const Vec2 du = u - fh.u;
      l2u += w * dot(du, du);
      double g2 = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const double d = gu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                           fh.grad_u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          g2 += d * d;
        }
      }
      h1u += w * g2;
      const double dd = (gu[0][0] + gu[1][1]) - fh.div_u;
      divu += w * dd * dd;

      const Vec2 dl = medium.grad_lambda(x);
      const double rot_h = medium.lambda(x) * fh.rot_u + dl.x * fh.u.y - dl.y * fh.u.x;
      const double dr = exact.rot_lambda_velocity(x) - rot_h;
      rotu += w * dr * dr;

      const double dp = exact.pressure(x) - fh.p;
      l2p += w * dp * dp;
      const Vec2 dgp = exact.pressure_gradient(x) - fh.grad_p;
      h1p += w * dot(dgp, dgp);
    }
  }

  ErrorReport r;
  r.eL2_u = std::sqrt(l2u);
  r.eH1semi_u = std::sqrt(h1u);
  r.eDiv_u = std::sqrt(divu);
  r.eRotLambda_u = std::sqrt(rotu);
  r.eL2_p = std::sqrt(l2p);
  r.eH1semi_p = std::sqrt(h1p);
  r.h = mesh.h();
  r.velocity_dofs = solution.velocity_dofs() ? solution.velocity_dofs()->size() : 0;
  r.potential_dofs = solution.potential_dofs().size();
  r.exclusions.assign(exclusions.begin(), exclusions.end());
  return r;
}

double pairwise_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (e_coarse == 0.0 || e_fine == 0.0) return kExactRate;
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

double least_squares_slope(std::span<const double> h, std::span<const double> e) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < std::min(h.size(), e.size()); ++i) {
    if (!(e[i] > 0.0)) continue;
    const double x = std::log(h[i]);
    const double y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

ConvergenceTable fit_rates(std::vector<ConvergenceRow> rows) {
  if (rows.size() < 2) throw InvalidArgument("fit_rates: need at least two rows");
  std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.h > b.h; });
  ConvergenceTable table;
  table.rows = std::move(rows);
  std::vector<double> h;
  for (const auto &r : table.rows) h.push_back(r.h);
  for (ErrorNorm n : kAllNorms) {
    std::vector<double> e;
    for (const auto &r : table.rows) e.push_back(r.errors.value(n));
    const std::size_t last = e.size() - 1;
    NormRate &rate = table.rates[static_cast<std::size_t>(n)];
    rate.pairwise = pairwise_rate(e[last - 1], e[last], h[last - 1], h[last]);
    rate.slope = least_squares_slope(h, e);
  }
  return table;
}

WitnessValue coercivity_witness(const LinearSystem &system, const CsrMatrix &gram, std::span<const double> w,
                                double alpha) {
  std::vector<double> wbar(w.begin(), w.end());
  for (int r = system.potential_offset; r < system.potential_offset + system.num_potential_unknowns; ++r) {
    wbar[static_cast<std::size_t>(r)] = -wbar[static_cast<std::size_t>(r)];
  }
  const auto aw = system.matrix.multiply(w);
  const auto gw = gram.multiply(w);
  WitnessValue v;
  for (std::size_t i = 0; i < w.size(); ++i) {
    v.lhs += wbar[i] * aw[i];
    v.rhs += w[i] * gw[i];
  }
  v.rhs *= alpha;
  return v;
}

double coercivity_constant(const MediumModel &medium) {
  return 0.5 * std::min(medium.lambda_min(), medium.kappa_min());
}

StabilityResult stability_diagnostic(const FormulationSpec &spec, std::shared_ptr<const Mesh> mesh,
                                     const MediumModel &medium, int trials, std::uint64_t seed) {
  const ScalarField zero_source = [](const Point2 &) { return 0.0; };
  const NormalFlux zero_flux = [](const Point2 &, const Vec2 &) { return 0.0; };
  const LinearSystem system = assemble(spec, std::move(mesh), medium, zero_source, zero_flux);
  const CsrMatrix gram = assemble_norm_matrix(system, natural_norm(spec.method()));

  StabilityResult result;
  result.alpha = coercivity_constant(medium);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(system.size()), 0.0);
  const int free = system.potential_offset + system.num_potential_unknowns;
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < free; ++i) w[static_cast<std::size_t>(i)] = dist(rng);
    const WitnessValue v = coercivity_witness(system, gram, w, result.alpha);
    ++result.trials;
    if (!(v.rhs > 0.0)) continue;
    const double ratio = v.lhs / v.rhs;
    result.min_ratio = std::min(result.min_ratio, ratio);
    if (ratio < 1.0 - kWitnessTolerance) ++result.violations;
  }
  return result;
}

} // namespace darcy
