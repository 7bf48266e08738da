#include "darcy/cases.hpp"

#include "darcy/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace darcy {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

double ExactSolution::rot_lambda_velocity(const Point2 &p) const {
  const Vec2 u = velocity(p);
  const Mat2 g = velocity_gradient(p);
  const Vec2 dl = medium().grad_lambda(p);
  const double rot = g[1][0] - g[0][1];
  return medium().lambda(p) * rot + dl.x * u.y - dl.y * u.x;
}

ScalarField ExactSolution::discrete_source(const Mesh &) const {
  return [this](const Point2 &p) { return source(p); };
}

NormalFlux ExactSolution::boundary_flux() const {
  return [this](const Point2 &p, const Vec2 &n) { return dot(velocity(p), n); };
}

// ---------------------------------------------------------------------------

ManufacturedCase::ManufacturedCase(double k1, double k2) : medium_(k1, k2, 2.0, 2.0) {}

std::string ManufacturedCase::name() const {
  std::ostringstream os;
  os << "manufactured(k1=" << medium_.k1() << ",k2=" << medium_.k2() << ")";
  return os.str();
}

double ManufacturedCase::pressure(const Point2 &p) const {
  return std::sin(pi * p.x) * std::sin(pi * p.y) / (2.0 * pi * pi);
}

Vec2 ManufacturedCase::pressure_gradient(const Point2 &p) const {
  const double sx = std::sin(pi * p.x), cx = std::cos(pi * p.x);
  const double sy = std::sin(pi * p.y), cy = std::cos(pi * p.y);
  return {cx * sy / (2.0 * pi), sx * cy / (2.0 * pi)};
}

Vec2 ManufacturedCase::velocity(const Point2 &p) const {
  return -medium_.kappa(p) * pressure_gradient(p);
}

Mat2 ManufacturedCase::velocity_gradient(const Point2 &p) const {
  const double sx = std::sin(pi * p.x), cx = std::cos(pi * p.x);
  const double sy = std::sin(pi * p.y), cy = std::cos(pi * p.y);
  const double k = medium_.kappa(p);
  const Vec2 dk = medium_.grad_kappa(p);
  const Vec2 gp = pressure_gradient(p);
  const double pxx = -0.5 * sx * sy;
  const double pxy = 0.5 * cx * cy;
  const double pyy = -0.5 * sx * sy;
  // d u_i / d x_j = -d_j kappa d_i p - kappa d_ij p
  return {{{-dk.x * gp.x - k * pxx, -dk.y * gp.x - k * pxy},
           {-dk.x * gp.y - k * pxy, -dk.y * gp.y - k * pyy}}};
}

double ManufacturedCase::source(const Point2 &p) const {
  // -div(kappa grad p) = kappa sin(pi x) sin(pi y) - grad kappa . grad p
  const double lap_term = medium_.kappa(p) * std::sin(pi * p.x) * std::sin(pi * p.y);
  return lap_term - dot(medium_.grad_kappa(p), pressure_gradient(p));
}

// ---------------------------------------------------------------------------

FiveSpotCase::FiveSpotCase()
    : elliptic_(1.0 / std::numbers::sqrt2), side_(elliptic_.quarter_period()),
      medium_(MediumModel::homogeneous(1.0, side_, side_)) {}

FiveSpotCase::Derivs FiveSpotCase::cn_squared(double t) const {
  const auto [s, c, d] = elliptic_(t);
  const double k2 = elliptic_.modulus() * elliptic_.modulus();
  // (cn^2)' = -2 cn sn dn, using cn' = -sn dn, sn' = cn dn, dn' = -k^2 sn cn.
  return {c * c, -2.0 * c * s * d, 2.0 * (s * s * d * d - c * c * d * d + k2 * s * s * c * c)};
}

double FiveSpotCase::pressure(const Point2 &p) const {
  const double a = cn_squared(p.x).a;
  const double b = cn_squared(p.y).a;
  return std::log((1.0 - a * b) / (a + b)) / (4.0 * pi);
}

Vec2 FiveSpotCase::pressure_gradient(const Point2 &p) const {
  const auto X = cn_squared(p.x);
  const auto Y = cn_squared(p.y);
  const double one_minus = 1.0 - X.a * Y.a;
  const double sum = X.a + Y.a;
  const double gx = Y.a / one_minus + 1.0 / sum;
  const double gy = X.a / one_minus + 1.0 / sum;
  return {-X.da * gx / (4.0 * pi), -Y.da * gy / (4.0 * pi)};
}

Vec2 FiveSpotCase::velocity(const Point2 &p) const { return -1.0 * pressure_gradient(p); }

Mat2 FiveSpotCase::velocity_gradient(const Point2 &p) const {
  const auto X = cn_squared(p.x);
  const auto Y = cn_squared(p.y);
  const double one_minus = 1.0 - X.a * Y.a;
  const double sum = X.a + Y.a;
  const double inv_om2 = 1.0 / (one_minus * one_minus);
  const double inv_s2 = 1.0 / (sum * sum);
  const double gx = Y.a / one_minus + 1.0 / sum;
  const double gy = X.a / one_minus + 1.0 / sum;
  const double gx_a = Y.a * Y.a * inv_om2 - inv_s2;
  const double gy_b = X.a * X.a * inv_om2 - inv_s2;
  const double g_cross = inv_om2 - inv_s2;
  const double c = 1.0 / (4.0 * pi);
  const double pxx = -c * (X.dda * gx + X.da * X.da * gx_a);
  const double pyy = -c * (Y.dda * gy + Y.da * Y.da * gy_b);
  const double pxy = -c * X.da * Y.da * g_cross;
  return {{{-pxx, -pxy}, {-pxy, -pyy}}};
}

ScalarField FiveSpotCase::discrete_source(const Mesh &mesh) const {
  const double hx = mesh.hx();
  const double hy = mesh.hy();
  const double lx = mesh.lx();
  const double ly = mesh.ly();
  const double density = 0.25 / (hx * hy);
  return [=](const Point2 &p) {
    double f = 0.0;
    if (p.x < hx && p.y < hy) f -= density;
    if (p.x > lx - hx && p.y > ly - hy) f += density;
    return f;
  };
}

NormalFlux FiveSpotCase::boundary_flux() const {
  return [](const Point2 &, const Vec2 &) { return 0.0; };
}

std::shared_ptr<const ManufacturedCase> make_manufactured(double k1, double k2) {
  return std::make_shared<const ManufacturedCase>(k1, k2);
}

std::shared_ptr<const FiveSpotCase> make_five_spot() { return std::make_shared<const FiveSpotCase>(); }

} // namespace darcy
