#include "darcy/lagrange.hpp"

#include "darcy/errors.hpp"

#include <string>

namespace darcy {

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
  if (degree < 1 || degree > 3) {
    throw InvalidArgument("Lagrange degree must be 1, 2 or 3, got " + std::to_string(degree));
  }
  nodes_1d_.resize(static_cast<std::size_t>(degree + 1));
  for (int i = 0; i <= degree; ++i) {
    nodes_1d_[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / degree;
  }
}

Point2 ReferenceElement::node(int i) const {
  const int n = nodes_per_side();
  return {nodes_1d_[static_cast<std::size_t>(i % n)], nodes_1d_[static_cast<std::size_t>(i / n)]};
}

void ReferenceElement::eval_1d(double t, double *value, double *d1, double *d2) const {
  const int n = nodes_per_side();
  const auto &z = nodes_1d_;
  for (int i = 0; i < n; ++i) {
    double denom = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) denom *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
    }
    // Product rule over the factors (t - z_j), j != i.
    double v = 1.0;
    double dv = 0.0;
    double ddv = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double f = t - z[static_cast<std::size_t>(j)];
      ddv = ddv * f + 2.0 * dv;
      dv = dv * f + v;
      v = v * f;
    }
    value[i] = v / denom;
    d1[i] = dv / denom;
    d2[i] = ddv / denom;
  }
}

ShapeValues ReferenceElement::eval(const Point2 &xi) const {
  const int n = nodes_per_side();
  double vx[4], dx[4], ddx[4], vy[4], dy[4], ddy[4];
  eval_1d(xi.x, vx, dx, ddx);
  eval_1d(xi.y, vy, dy, ddy);

  ShapeValues out;
  const auto count = static_cast<std::size_t>(size());
  out.values.resize(count);
  out.gradients.resize(count);
  out.hessians.resize(count);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      const auto i = static_cast<std::size_t>(b * n + a);
      out.values[i] = vx[a] * vy[b];
      out.gradients[i] = {dx[a] * vy[b], vx[a] * dy[b]};
      out.hessians[i] = {ddx[a] * vy[b], dx[a] * dy[b], vx[a] * ddy[b]};
    }
  }
  return out;
}

ShapeValues shape_eval(int degree, const Point2 &xi) { return ReferenceElement(degree).eval(xi); }

} // namespace darcy
