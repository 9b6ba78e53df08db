#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ncnls {

enum class BoundaryCondition { periodic, dirichlet };

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(std::string_view text);

/// Uniform partition of [a, b] into M elements carrying degree-l Lagrange nodes.
///
/// Nodes are numbered 0..M*l left to right. Degrees of freedom are the interior
/// nodes 1..M*l-1 (dof j-1). Under periodic conditions the two end nodes are
/// identified and become the final dof M*l-1; under Dirichlet they are
/// eliminated. With this numbering both variants share the interior stencil and
/// the periodic wrap shows up as a single border row/column.
class Mesh1D {
 public:
  Mesh1D(double a, double b, int elements, int degree, BoundaryCondition bc);

  double left() const { return a_; }
  double right() const { return b_; }
  double length() const { return b_ - a_; }
  int elements() const { return elements_; }
  int degree() const { return degree_; }
  BoundaryCondition bc() const { return bc_; }
  double h() const { return h_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  double node(std::size_t j) const { return nodes_[j]; }
  const std::vector<double>& nodes() const { return nodes_; }

  std::size_t num_dofs() const { return num_dofs_; }
  /// Number of trailing dofs coupled across the periodic seam (0 or 1).
  std::size_t border_dofs() const { return bc_ == BoundaryCondition::periodic ? 1 : 0; }

  /// Dof index of local node `m` of element `e`, or -1 when eliminated.
  int dof(int e, int m) const { return connectivity_[static_cast<std::size_t>(e) * (degree_ + 1) + m]; }
  /// Coordinate of the left end of element `e`.
  double element_left(int e) const { return nodes_[static_cast<std::size_t>(e) * degree_]; }
  /// Dof index of global node j, or -1 when eliminated.
  int node_dof(std::size_t j) const;

  bool operator==(const Mesh1D& other) const;

 private:
  double a_, b_;
  int elements_, degree_;
  BoundaryCondition bc_;
  double h_;
  std::size_t num_dofs_;
  std::vector<double> nodes_;
  std::vector<int> connectivity_;
};

Mesh1D build_mesh(double a, double b, int elements, int degree, BoundaryCondition bc);

}  // namespace ncnls
