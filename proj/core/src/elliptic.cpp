#include "darcy/elliptic.hpp"

#include "darcy/errors.hpp"

#include <cmath>
#include <numbers>

namespace darcy {

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

JacobiElliptic::JacobiElliptic(double modulus) : k_(modulus) {
  if (!(modulus >= 0.0 && modulus < 1.0)) {
    throw InvalidArgument("elliptic modulus must lie in [0, 1)");
  }
  double a = 1.0;
  double b = std::sqrt((1.0 - modulus) * (1.0 + modulus));
  double c = modulus;
  ratio_.push_back(c / a);
  // c_n shrinks quadratically; a dozen steps reach 1e-15 for any k < 1 - 1e-12.
  double pow2 = 1.0;
  for (int n = 0; n < 12 && std::abs(c) >= 1e-15; ++n) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    ratio_.push_back(c / a);
  }
  scale_ = pow2 * a;
  quarter_period_ = std::numbers::pi / (2.0 * a);
}

JacobiElliptic::Values JacobiElliptic::operator()(double x) const {
  // sn, cn have period 4K and dn 2K, so reduce into [-2K, 2K).
  const double period = 4.0 * quarter_period_;
  x -= period * std::floor((x + 0.5 * period) / period);

  const auto n = static_cast<int>(ratio_.size()) - 1;
  double phi = scale_ * x;
  double phi_prev = phi;
  for (int i = n; i >= 1; --i) {
    phi_prev = phi;
    phi = 0.5 * (phi + std::asin(ratio_[static_cast<std::size_t>(i)] * std::sin(phi)));
  }
  const double cn = std::cos(phi);
  const double sn = std::sin(phi);
  const double dn = (n >= 1) ? cn / std::cos(phi_prev - phi) : 1.0;
  return {sn, cn, dn};
}

} // namespace darcy
