#include "darcy/dof_map.hpp"

#include "darcy/errors.hpp"

#include <string>

namespace darcy {

DofMap::DofMap(const Mesh &mesh, int degree, FieldKind kind)
    : degree_(degree), kind_(kind), lattice_nx_(degree * mesh.nx() + 1),
      lattice_ny_(degree * mesh.ny() + 1), dofs_per_cell_(0), step_x_(mesh.hx() / degree),
      step_y_(mesh.hy() / degree), lx_(mesh.lx()), ly_(mesh.ly()) {
  if (degree < 1 || degree > 3) {
    throw InvalidArgument("dof map degree must be 1, 2 or 3, got " + std::to_string(degree));
  }
  const int n = degree + 1;
  const int comps = components();
  dofs_per_cell_ = n * n * comps;
  cell_dofs_.resize(static_cast<std::size_t>(mesh.num_quads()) * static_cast<std::size_t>(dofs_per_cell_));
  for (int cj = 0; cj < mesh.ny(); ++cj) {
    for (int ci = 0; ci < mesh.nx(); ++ci) {
      const int quad = mesh.quad_index(ci, cj);
      int *out = cell_dofs_.data() + static_cast<std::size_t>(quad) * static_cast<std::size_t>(dofs_per_cell_);
      for (int b = 0; b < n; ++b) {
        for (int a = 0; a < n; ++a) {
          const int lattice = (degree * cj + b) * lattice_nx_ + degree * ci + a;
          for (int c = 0; c < comps; ++c) {
            *out++ = lattice * comps + c;
          }
        }
      }
    }
  }
}

std::span<const int> DofMap::cell_dofs(int quad) const {
  return {cell_dofs_.data() + static_cast<std::size_t>(quad) * static_cast<std::size_t>(dofs_per_cell_),
          static_cast<std::size_t>(dofs_per_cell_)};
}

Point2 DofMap::lattice_position(int lattice_node) const {
  const int i = lattice_node % lattice_nx_;
  const int j = lattice_node / lattice_nx_;
  const double x = (i == lattice_nx_ - 1) ? lx_ : i * step_x_;
  const double y = (j == lattice_ny_ - 1) ? ly_ : j * step_y_;
  return {x, y};
}

std::uint8_t DofMap::boundary_sides(int lattice_node) const {
  const int i = lattice_node % lattice_nx_;
  const int j = lattice_node / lattice_nx_;
  std::uint8_t sides = 0;
  if (j == 0) sides |= side_bit(BoundarySide::Bottom);
  if (i == lattice_nx_ - 1) sides |= side_bit(BoundarySide::Right);
  if (j == lattice_ny_ - 1) sides |= side_bit(BoundarySide::Top);
  if (i == 0) sides |= side_bit(BoundarySide::Left);
  return sides;
}

bool DofMap::is_corner(int lattice_node) const {
  const auto s = boundary_sides(lattice_node);
  // Two sides set means a corner.
  return s != 0 && (s & (s - 1)) != 0;
}

DofMap build_dof_map(const Mesh &mesh, int degree, FieldKind kind) { return DofMap(mesh, degree, kind); }

} // namespace darcy
