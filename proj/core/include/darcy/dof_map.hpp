#pragma once

#include "darcy/mesh.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace darcy {

enum class FieldKind : std::uint8_t { Scalar, Vector };

/// Continuous Q_k numbering on a structured mesh.
///
/// DOFs live on the (k*nx+1) x (k*ny+1) lattice of Lagrange nodes, numbered
/// lexicographically (x fastest). Vector fields interleave components:
/// lattice node n carries DOFs 2n (x) and 2n+1 (y). Per-cell DOF lists follow
/// the ReferenceElement local node order, components interleaved likewise.
class DofMap {
public:
  DofMap(const Mesh &mesh, int degree, FieldKind kind);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] FieldKind kind() const { return kind_; }
  [[nodiscard]] int components() const { return kind_ == FieldKind::Vector ? 2 : 1; }
  [[nodiscard]] int size() const { return num_lattice_nodes() * components(); }
  [[nodiscard]] int dofs_per_cell() const { return dofs_per_cell_; }

  [[nodiscard]] int lattice_nx() const { return lattice_nx_; }
  [[nodiscard]] int lattice_ny() const { return lattice_ny_; }
  [[nodiscard]] int num_lattice_nodes() const { return lattice_nx_ * lattice_ny_; }

  [[nodiscard]] std::span<const int> cell_dofs(int quad) const;

  [[nodiscard]] Point2 lattice_position(int lattice_node) const;
  /// Sides (bit set, see side_bit) the lattice node lies on; 0 for interior.
  [[nodiscard]] std::uint8_t boundary_sides(int lattice_node) const;
  [[nodiscard]] bool is_corner(int lattice_node) const;

  [[nodiscard]] int lattice_node_of(int dof) const { return dof / components(); }
  [[nodiscard]] int component_of(int dof) const { return dof % components(); }

private:
  int degree_;
  FieldKind kind_;
  int lattice_nx_;
  int lattice_ny_;
  int dofs_per_cell_;
  double step_x_;
  double step_y_;
  double lx_;
  double ly_;
  std::vector<int> cell_dofs_;
};

/// Throws InvalidArgument unless 1 <= degree <= 3.
DofMap build_dof_map(const Mesh &mesh, int degree, FieldKind kind);

} // namespace darcy
