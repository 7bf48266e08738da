#include "darcy/medium.hpp"

#include "darcy/errors.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace darcy {

namespace {

// Range of t -> (t-2) t over [0, len].
std::pair<double, double> quadratic_range(double len) {
  const double end = (len - 2.0) * len;
  double lo = std::min(0.0, end);
  double hi = std::max(0.0, end);
  if (len > 1.0) lo = std::min(lo, -1.0);
  return {lo, hi};
}

} // namespace

MediumModel::MediumModel(double k1, double k2, double lx, double ly) : k1_(k1), k2_(k2) {
  if (!(k1 >= 0.0)) throw InvalidArgument("conductivity parameter k1 must be >= 0");
  if (!(k2 > 0.0)) throw InvalidArgument("conductivity parameter k2 must be > 0");
  const auto [ax, bx] = quadratic_range(lx);
  const auto [ay, by] = quadratic_range(ly);
  const std::array<double, 4> products{ax * ay, ax * by, bx * ay, bx * by};
  const auto [lo, hi] = std::minmax_element(products.begin(), products.end());
  kappa_min_ = k2 + k1 * *lo;
  kappa_max_ = k2 + k1 * *hi;
  if (!(kappa_min_ > 0.0)) {
    throw InvalidArgument("conductivity is not positive over the domain");
  }
}

} // namespace darcy
