#include "darcy/formulation.hpp"

#include "darcy/errors.hpp"

#include <algorithm>
#include <string>

namespace darcy {

std::string_view method_name(Method m) {
  switch (m) {
  case Method::Primal: return "primal";
  case Method::Cgls: return "cgls";
  case Method::GlsHdiv: return "gls_hdiv";
  case Method::Mgls: return "mgls";
  case Method::Hvm: return "hvm";
  case Method::Shvm: return "shvm";
  case Method::Dgls: return "dgls";
  case Method::StokesComp: return "stokes";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::tolower(c));
  });
  if (key == "primal" || key == "galerkin") return Method::Primal;
  if (key == "cgls") return Method::Cgls;
  if (key == "gls_hdiv" || key == "glshdiv" || key == "gls") return Method::GlsHdiv;
  if (key == "mgls") return Method::Mgls;
  if (key == "hvm") return Method::Hvm;
  if (key == "shvm") return Method::Shvm;
  if (key == "dgls") return Method::Dgls;
  if (key == "stokes" || key == "stokes_comp") return Method::StokesComp;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

FormulationSpec::FormulationSpec(Method method, int velocity_degree, int potential_degree, Deltas deltas)
    : method_(method), velocity_degree_(velocity_degree), potential_degree_(potential_degree), deltas_(deltas) {
  if (potential_degree < 1 || potential_degree > 3) {
    throw InvalidArgument("potential degree must be 1, 2 or 3");
  }
  if (method == Method::Primal) {
    if (velocity_degree != 0) throw InvalidArgument("primal method has no velocity field (l must be 0)");
  } else if (velocity_degree < 1 || velocity_degree > 3) {
    throw InvalidArgument("velocity degree must be 1, 2 or 3");
  }
  if (method == Method::StokesComp && velocity_degree != potential_degree + 1) {
    throw InvalidArgument("Stokes-compatible method needs Taylor-Hood degrees l = k + 1");
  }
  if (method == Method::Mgls && !(deltas.d1 > 0.0 && deltas.d2 > 0.0)) {
    throw InvalidArgument("MGLS weights delta1, delta2 must be positive");
  }
  if (method == Method::Dgls && !(deltas.d1 > 0.0 && deltas.d2 > 0.0 && deltas.d3 > 0.0)) {
    throw InvalidArgument("DGLS weights delta1..3 must be positive");
  }
  // Fixed weights for the parameter-free methods.
  if (method != Method::Mgls && method != Method::Dgls) deltas_ = Deltas{};
}

int FormulationSpec::max_degree() const { return std::max(velocity_degree_, potential_degree_); }

ProductNorm natural_norm(Method m) {
  switch (m) {
  case Method::Cgls:
  case Method::Dgls:
  case Method::StokesComp: return ProductNorm::UHcurlDiv;
  case Method::GlsHdiv:
  case Method::Mgls: return ProductNorm::UHdiv;
  default: return ProductNorm::UL2;
  }
}

namespace {

// B({u,p};{v,q}) = mass (lambda u, v)
//                + div_vp (div v, p) + div_uq (div u, q)
//                + grad_vp (v, grad p) + grad_uq (u, grad q)
//                + darcy (K(lambda u + grad p), darcy_sign lambda v + grad q)
//                + mass_res (lambda div u, div v) + curl_res (K rot(lambda u), rot(lambda v))
//                + primal (K grad p, grad q)
// F({v,q})       = load_q (f, q) + load_div (lambda f, div v) + load_div_plain (f, div v)
struct FormCoefficients {
  double mass = 0.0;
  double div_vp = 0.0;
  double div_uq = 0.0;
  double grad_vp = 0.0;
  double grad_uq = 0.0;
  double darcy = 0.0;
  double darcy_sign = 1.0;
  double mass_res = 0.0;
  double curl_res = 0.0;
  double primal = 0.0;
  double load_q = 0.0;
  double load_div = 0.0;
  double load_div_plain = 0.0;
};

FormCoefficients coefficients(const FormulationSpec &spec) {
  FormCoefficients c;
  const Deltas &d = spec.deltas();
  switch (spec.method()) {
  case Method::Primal:
    c.primal = 1.0;
    c.load_q = 1.0;
    break;
  case Method::Cgls:
    c.curl_res = 0.5;
    [[fallthrough]];
  case Method::GlsHdiv:
    c.mass = 1.0;
    c.div_vp = -1.0;
    c.div_uq = -1.0;
    c.darcy = -0.5;
    c.mass_res = 0.5;
    c.load_q = -1.0;
    c.load_div = 0.5;
    break;
  case Method::Mgls:
    c.mass = 1.0;
    c.div_vp = -1.0;
    c.div_uq = -1.0;
    c.darcy = d.d1;
    c.mass_res = d.d2;
    c.load_q = -1.0;
    c.load_div = d.d2;
    break;
  case Method::Hvm:
    c.mass = 1.0;
    c.div_vp = -1.0;
    c.div_uq = 1.0;
    c.darcy = 0.5;
    c.darcy_sign = -1.0;
    c.load_q = 1.0;
    break;
  case Method::Shvm:
    // The boundary flux term <g, q> is added by the assembler.
    c.mass = 1.0;
    c.grad_vp = 1.0;
    c.grad_uq = 1.0;
    c.darcy = -0.5;
    c.load_q = -1.0;
    break;
  case Method::Dgls:
    c.mass = 1.0;
    c.div_vp = -1.0;
    c.div_uq = 1.0;
    c.darcy = d.d1;
    c.mass_res = d.d2;
    c.curl_res = d.d3;
    c.load_q = 1.0;
    c.load_div = d.d2;
    break;
  case Method::StokesComp:
    // b(v,q) = -(div v, q) in both blocks; the mass equation reads
    // b(u,q) = -(f,q) so that div u = f.
    c.mass = 1.0;
    c.mass_res = 0.5;
    c.curl_res = 0.5;
    c.div_vp = -1.0;
    c.div_uq = -1.0;
    c.load_q = -1.0;
    c.load_div_plain = 0.5;
    break;
  }
  return c;
}

} // namespace

struct ElementKernel::PointData {
  double weight = 0.0;
  Point2 x;
  double kappa = 0.0;
  double lambda = 0.0;
  Vec2 grad_lambda;
  // Per velocity local DOF (2a + c).
  std::vector<Vec2> v_value;
  std::vector<double> v_div;
  std::vector<double> v_rot_lambda;
  // Per potential local DOF.
  std::vector<double> q_value;
  std::vector<Vec2> q_grad;
};

ElementKernel::ElementKernel(const FormulationSpec &spec, const QuadratureRule &quadrature)
    : spec_(spec), quadrature_(quadrature), velocity_size_(0), potential_size_(0) {
  const ReferenceElement pot(spec.potential_degree());
  potential_size_ = pot.size();
  for (const auto &xi : quadrature_.points()) potential_basis_.push_back(pot.eval(xi));
  if (spec.is_mixed()) {
    const ReferenceElement vel(spec.velocity_degree());
    velocity_size_ = 2 * vel.size();
    for (const auto &xi : quadrature_.points()) velocity_basis_.push_back(vel.eval(xi));
  }
}

void ElementKernel::fill_point(const CellGeometry &cell, const MediumModel &medium, int q, PointData &pd) const {
  const auto qi = static_cast<std::size_t>(q);
  const double jx = 2.0 / cell.hx;
  const double jy = 2.0 / cell.hy;
  pd.weight = quadrature_.weights()[qi] * 0.25 * cell.hx * cell.hy;
  pd.x = cell.map(quadrature_.points()[qi]);
  pd.kappa = medium.kappa(pd.x);
  pd.lambda = 1.0 / pd.kappa;
  pd.grad_lambda = medium.grad_lambda(pd.x);

  pd.v_value.resize(static_cast<std::size_t>(velocity_size_));
  pd.v_div.resize(static_cast<std::size_t>(velocity_size_));
  pd.v_rot_lambda.resize(static_cast<std::size_t>(velocity_size_));
  if (velocity_size_ > 0) {
    const ShapeValues &sv = velocity_basis_[qi];
    for (std::size_t a = 0; a < sv.values.size(); ++a) {
      const double phi = sv.values[a];
      const double dx = sv.gradients[a].x * jx;
      const double dy = sv.gradients[a].y * jy;
      // x component: v = (phi, 0), div v = dphi/dx, rot v = -dphi/dy
      pd.v_value[2 * a] = {phi, 0.0};
      pd.v_div[2 * a] = dx;
      pd.v_rot_lambda[2 * a] = -pd.lambda * dy - pd.grad_lambda.y * phi;
      // y component: v = (0, phi), div v = dphi/dy, rot v = dphi/dx
      pd.v_value[2 * a + 1] = {0.0, phi};
      pd.v_div[2 * a + 1] = dy;
      pd.v_rot_lambda[2 * a + 1] = pd.lambda * dx + pd.grad_lambda.x * phi;
    }
  }

  const ShapeValues &sp = potential_basis_[qi];
  pd.q_value.assign(sp.values.begin(), sp.values.end());
  pd.q_grad.resize(sp.gradients.size());
  for (std::size_t b = 0; b < sp.gradients.size(); ++b) {
    pd.q_grad[b] = {sp.gradients[b].x * jx, sp.gradients[b].y * jy};
  }
}

LocalContribution ElementKernel::compute(const CellGeometry &cell, const MediumModel &medium,
                                         const ScalarField &source) const {
  const FormCoefficients c = coefficients(spec_);
  const int nv = velocity_size_;
  const int np = potential_size_;
  LocalContribution out;
  out.velocity_size = nv;
  out.potential_size = np;
  out.matrix = Eigen::MatrixXd::Zero(nv + np, nv + np);
  out.load = Eigen::VectorXd::Zero(nv + np);
  auto &A = out.matrix;
  auto &F = out.load;

  PointData pd;
  for (int q = 0; q < quadrature_.size(); ++q) {
    fill_point(cell, medium, q, pd);
    const double w = pd.weight;
    const double k = pd.kappa;
    const double l = pd.lambda;
    const double f = source(pd.x);

    // Velocity test rows.
    for (int i = 0; i < nv; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const Vec2 vi = pd.v_value[ii];
      const double div_i = pd.v_div[ii];
      const double rot_i = pd.v_rot_lambda[ii];
      for (int j = 0; j < nv; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double vv = dot(pd.v_value[jj], vi);
        double a = c.mass * l * vv;
        a += c.darcy * c.darcy_sign * k * l * l * vv;
        a += c.mass_res * l * pd.v_div[jj] * div_i;
        a += c.curl_res * k * pd.v_rot_lambda[jj] * rot_i;
        A(i, j) += w * a;
      }
      for (int j = 0; j < np; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double gv = dot(pd.q_grad[jj], vi);
        double a = c.div_vp * div_i * pd.q_value[jj];
        a += c.grad_vp * gv;
        a += c.darcy * c.darcy_sign * k * l * gv;
        A(i, nv + j) += w * a;
      }
      F(i) += w * (c.load_div * l + c.load_div_plain) * f * div_i;
    }

    // Potential test rows.
    for (int i = 0; i < np; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const Vec2 gi = pd.q_grad[ii];
      const double qi = pd.q_value[ii];
      for (int j = 0; j < nv; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        const double ug = dot(pd.v_value[jj], gi);
        double a = c.div_uq * pd.v_div[jj] * qi;
        a += c.grad_uq * ug;
        a += c.darcy * k * l * ug;
        A(nv + i, j) += w * a;
      }
      for (int j = 0; j < np; ++j) {
        const double gg = dot(pd.q_grad[static_cast<std::size_t>(j)], gi);
        A(nv + i, nv + j) += w * (c.darcy + c.primal) * k * gg;
      }
      F(nv + i) += w * c.load_q * f * qi;
    }
  }
  return out;
}

Eigen::MatrixXd ElementKernel::norm_matrix(const CellGeometry &cell, const MediumModel &medium,
                                           ProductNorm norm) const {
  const int nv = velocity_size_;
  const int np = potential_size_;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(nv + np, nv + np);
  const bool with_div = norm != ProductNorm::UL2;
  const bool with_rot = norm == ProductNorm::UHcurlDiv;
  PointData pd;
  for (int q = 0; q < quadrature_.size(); ++q) {
    fill_point(cell, medium, q, pd);
    const double w = pd.weight;
    for (int i = 0; i < nv; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      for (int j = 0; j < nv; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        double g = dot(pd.v_value[ii], pd.v_value[jj]);
        if (with_div) g += pd.v_div[ii] * pd.v_div[jj];
        if (with_rot) g += pd.v_rot_lambda[ii] * pd.v_rot_lambda[jj];
        G(i, j) += w * g;
      }
    }
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < np; ++j) {
        G(nv + i, nv + j) += w * dot(pd.q_grad[static_cast<std::size_t>(i)], pd.q_grad[static_cast<std::size_t>(j)]);
      }
    }
  }
  return G;
}

Eigen::VectorXd ElementKernel::potential_integrals(const CellGeometry &cell) const {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(potential_size_);
  const double scale = 0.25 * cell.hx * cell.hy;
  for (int q = 0; q < quadrature_.size(); ++q) {
    const auto qi = static_cast<std::size_t>(q);
    const double w = quadrature_.weights()[qi] * scale;
    for (int i = 0; i < potential_size_; ++i) r(i) += w * potential_basis_[qi].values[static_cast<std::size_t>(i)];
  }
  return r;
}

LocalContribution local_kernel(const FormulationSpec &spec, const CellGeometry &cell,
                               const QuadratureRule &quadrature, const MediumModel &medium,
                               const ScalarField &source) {
  return ElementKernel(spec, quadrature).compute(cell, medium, source);
}

} // namespace darcy
