#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace darcy {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2 &operator+=(const Vec2 &o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(const Vec2 &o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

using Point2 = Vec2;

constexpr double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }

/// Row-major 2x2 tensor; `m[i][j]` is d(component i)/d(coordinate j) for gradients.
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Sides of an axis-aligned rectangle, numbered counterclockwise from the bottom.
enum class BoundarySide : std::uint8_t { Bottom = 0, Right = 1, Top = 2, Left = 3 };

constexpr Vec2 outward_normal(BoundarySide side) {
  switch (side) {
  case BoundarySide::Bottom: return {0.0, -1.0};
  case BoundarySide::Right: return {1.0, 0.0};
  case BoundarySide::Top: return {0.0, 1.0};
  case BoundarySide::Left: return {-1.0, 0.0};
  }
  return {};
}

/// Bit set of the sides a boundary entity lies on.
constexpr std::uint8_t side_bit(BoundarySide side) {
  return static_cast<std::uint8_t>(1u << static_cast<unsigned>(side));
}

struct BoundaryEdge {
  int quad{0};
  BoundarySide side{BoundarySide::Bottom};
  Vec2 normal{};
};

/// Structured quadrilateral mesh of [0,lx] x [0,ly].
///
/// Nodes are numbered lexicographically with x fastest. Quad q = j*nx + i has
/// corner nodes (i,j), (i+1,j), (i+1,j+1), (i,j+1) in counterclockwise order,
/// and local sides 0..3 = bottom, right, top, left. Immutable once built.
class Mesh {
public:
  Mesh(double lx, double ly, int nx, int ny);

  [[nodiscard]] int nx() const { return nx_; }
  [[nodiscard]] int ny() const { return ny_; }
  [[nodiscard]] double lx() const { return lx_; }
  [[nodiscard]] double ly() const { return ly_; }
  [[nodiscard]] double hx() const { return lx_ / nx_; }
  [[nodiscard]] double hy() const { return ly_ / ny_; }
  /// Cell diameter; every cell is congruent.
  [[nodiscard]] double h() const { return h_; }

  [[nodiscard]] const std::vector<Point2> &nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<std::array<int, 4>> &quads() const { return quads_; }
  [[nodiscard]] const std::vector<BoundaryEdge> &boundary_edges() const { return boundary_edges_; }
  [[nodiscard]] const std::array<int, 4> &corners() const { return corners_; }

  [[nodiscard]] int num_nodes() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] int num_quads() const { return static_cast<int>(quads_.size()); }

  [[nodiscard]] int quad_index(int i, int j) const { return j * nx_ + i; }
  /// Lower-left corner of a quad.
  [[nodiscard]] Point2 quad_origin(int quad) const;
  [[nodiscard]] double quad_area(int quad) const;
  /// Boundary sides touched by a quad (bit set, see side_bit).
  [[nodiscard]] std::uint8_t quad_boundary_sides(int quad) const;

  /// Quad containing `p`; points on interior cell faces go to the upper/right
  /// cell, points on the far boundary to the last cell. Throws OutOfDomain.
  [[nodiscard]] int locate(const Point2 &p) const;

private:
  double lx_;
  double ly_;
  int nx_;
  int ny_;
  double h_;
  std::vector<Point2> nodes_;
  std::vector<std::array<int, 4>> quads_;
  std::vector<BoundaryEdge> boundary_edges_;
  std::array<int, 4> corners_{};
};

/// Builds an nx x ny mesh of [0,lx] x [0,ly]. Throws InvalidArgument for
/// non-positive counts or extents.
Mesh build_structured_mesh(double lx, double ly, int nx, int ny);

/// Affine map from the reference square [-1,1]^2 onto a cell.
Point2 reference_to_physical(const Mesh &mesh, int quad, const Point2 &xi);
Point2 physical_to_reference(const Mesh &mesh, int quad, const Point2 &x);

/// Plain-text dump: one "x y" line per node, then one "i0 i1 i2 i3" per quad.
void write_mesh(std::ostream &os, const Mesh &mesh);

} // namespace darcy
