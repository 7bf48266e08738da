#include "darcy/mesh.hpp"

#include "darcy/errors.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace darcy {

Mesh::Mesh(double lx, double ly, int nx, int ny) : lx_(lx), ly_(ly), nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) {
    throw InvalidArgument("mesh: subdivision counts must be >= 1, got " + std::to_string(nx) +
                          "x" + std::to_string(ny));
  }
  if (!(lx > 0.0) || !(ly > 0.0)) {
    throw InvalidArgument("mesh: domain extents must be positive");
  }
  h_ = std::hypot(hx(), hy());

  nodes_.reserve(static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1));
  for (int j = 0; j <= ny; ++j) {
    // Pin the far edge to the exact extent instead of accumulating j*hy.
    const double y = (j == ny) ? ly : ly * static_cast<double>(j) / ny;
    for (int i = 0; i <= nx; ++i) {
      const double x = (i == nx) ? lx : lx * static_cast<double>(i) / nx;
      nodes_.push_back({x, y});
    }
  }

  const auto node = [nx](int i, int j) { return j * (nx + 1) + i; };
  quads_.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      quads_.push_back({node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)});
    }
  }

  // Boundary edges walk the perimeter counterclockwise.
  for (int i = 0; i < nx; ++i) {
    boundary_edges_.push_back({quad_index(i, 0), BoundarySide::Bottom, outward_normal(BoundarySide::Bottom)});
  }
  for (int j = 0; j < ny; ++j) {
    boundary_edges_.push_back({quad_index(nx - 1, j), BoundarySide::Right, outward_normal(BoundarySide::Right)});
  }
  for (int i = nx - 1; i >= 0; --i) {
    boundary_edges_.push_back({quad_index(i, ny - 1), BoundarySide::Top, outward_normal(BoundarySide::Top)});
  }
  for (int j = ny - 1; j >= 0; --j) {
    boundary_edges_.push_back({quad_index(0, j), BoundarySide::Left, outward_normal(BoundarySide::Left)});
  }

  corners_ = {node(0, 0), node(nx, 0), node(nx, ny), node(0, ny)};
}

Point2 Mesh::quad_origin(int quad) const { return nodes_[static_cast<std::size_t>(quads_[static_cast<std::size_t>(quad)][0])]; }

double Mesh::quad_area(int quad) const {
  const auto &q = quads_[static_cast<std::size_t>(quad)];
  const Point2 a = nodes_[static_cast<std::size_t>(q[0])];
  const Point2 c = nodes_[static_cast<std::size_t>(q[2])];
  return (c.x - a.x) * (c.y - a.y);
}

std::uint8_t Mesh::quad_boundary_sides(int quad) const {
  const int i = quad % nx_;
  const int j = quad / nx_;
  std::uint8_t sides = 0;
  if (j == 0) sides |= side_bit(BoundarySide::Bottom);
  if (i == nx_ - 1) sides |= side_bit(BoundarySide::Right);
  if (j == ny_ - 1) sides |= side_bit(BoundarySide::Top);
  if (i == 0) sides |= side_bit(BoundarySide::Left);
  return sides;
}

int Mesh::locate(const Point2 &p) const {
  constexpr double slack = 1e-12;
  if (!(p.x >= -slack * lx_ && p.x <= lx_ * (1.0 + slack) && p.y >= -slack * ly_ &&
        p.y <= ly_ * (1.0 + slack))) {
    throw OutOfDomain("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                      ") lies outside the mesh");
  }
  const int i = std::clamp(static_cast<int>(std::floor(p.x / hx())), 0, nx_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor(p.y / hy())), 0, ny_ - 1);
  return quad_index(i, j);
}

Mesh build_structured_mesh(double lx, double ly, int nx, int ny) { return Mesh(lx, ly, nx, ny); }

Point2 reference_to_physical(const Mesh &mesh, int quad, const Point2 &xi) {
  const Point2 o = mesh.quad_origin(quad);
  return {o.x + 0.5 * (xi.x + 1.0) * mesh.hx(), o.y + 0.5 * (xi.y + 1.0) * mesh.hy()};
}

Point2 physical_to_reference(const Mesh &mesh, int quad, const Point2 &x) {
  const Point2 o = mesh.quad_origin(quad);
  return {2.0 * (x.x - o.x) / mesh.hx() - 1.0, 2.0 * (x.y - o.y) / mesh.hy() - 1.0};
}

void write_mesh(std::ostream &os, const Mesh &mesh) {
  const auto old_precision = os.precision(17);
  for (const auto &n : mesh.nodes()) {
    os << n.x << ' ' << n.y << '\n';
  }
  for (const auto &q : mesh.quads()) {
    os << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
  }
  os.precision(old_precision);
}

} // namespace darcy
