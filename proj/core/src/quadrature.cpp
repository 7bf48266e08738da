#include "darcy/quadrature.hpp"

#include "darcy/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace darcy {

namespace {

constexpr int kMaxOrder = 8;

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

} // namespace

std::vector<QuadraturePoint1D> gauss_legendre(int n) {
  if (n < 1 || n > kMaxOrder) {
    throw InvalidArgument("gauss rule order must be in [1, 8], got " + std::to_string(n));
  }
  std::vector<QuadraturePoint1D> rule(static_cast<std::size_t>(n));
  if (n == 1) {
    rule[0] = {0.0, 2.0};
    return rule;
  }
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Asymptotic guess for the (i+1)-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto [p, d] = legendre_with_derivative(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[static_cast<std::size_t>(i)] = {-x, w};
    rule[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  if (n % 2 == 1) {
    rule[static_cast<std::size_t>(n / 2)].x = 0.0;
  }
  return rule;
}

QuadratureRule::QuadratureRule(int order_1d) : order_(order_1d), rule_1d_(gauss_legendre(order_1d)) {
  points_.reserve(rule_1d_.size() * rule_1d_.size());
  weights_.reserve(rule_1d_.size() * rule_1d_.size());
  for (const auto &qy : rule_1d_) {
    for (const auto &qx : rule_1d_) {
      points_.push_back({qx.x, qy.x});
      weights_.push_back(qx.w * qy.w);
    }
  }
}

QuadratureRule gauss_rule(int n) { return QuadratureRule(n); }

} // namespace darcy
