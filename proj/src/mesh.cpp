#include "ncnls/mesh.hpp"

#include <sstream>

#include "ncnls/errors.hpp"

namespace ncnls {

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::periodic ? "periodic" : "dirichlet";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
  if (text == "periodic") return BoundaryCondition::periodic;
  if (text == "dirichlet") return BoundaryCondition::dirichlet;
  throw ConfigError("unknown boundary condition '" + std::string(text) + "'");
}

Mesh1D::Mesh1D(double a, double b, int elements, int degree, BoundaryCondition bc)
    : a_(a), b_(b), elements_(elements), degree_(degree), bc_(bc) {
  if (!(a < b)) {
    std::ostringstream msg;
    msg << "mesh: need a < b, got [" << a << ", " << b << "]";
    throw ConfigError(msg.str());
  }
  if (elements < 2) throw ConfigError("mesh: need at least 2 elements");
  if (degree < 1 || degree > 5) throw ConfigError("mesh: degree must be in 1..5");

  h_ = (b - a) / elements;
  const std::size_t last = static_cast<std::size_t>(elements) * degree;
  nodes_.resize(last + 1);
  for (std::size_t j = 0; j <= last; ++j)
    nodes_[j] = a + (b - a) * (static_cast<double>(j) / static_cast<double>(last));
  nodes_[last] = b;

  num_dofs_ = bc == BoundaryCondition::periodic ? last : last - 1;

  connectivity_.resize(static_cast<std::size_t>(elements) * (degree + 1));
  for (int e = 0; e < elements; ++e)
    for (int m = 0; m <= degree; ++m)
      connectivity_[static_cast<std::size_t>(e) * (degree + 1) + m] =
          node_dof(static_cast<std::size_t>(e) * degree + m);
}

int Mesh1D::node_dof(std::size_t j) const {
  const std::size_t last = nodes_.size() - 1;
  if (j == 0 || j == last) return bc_ == BoundaryCondition::periodic ? static_cast<int>(last - 1) : -1;
  return static_cast<int>(j - 1);
}

bool Mesh1D::operator==(const Mesh1D& other) const {
  return a_ == other.a_ && b_ == other.b_ && elements_ == other.elements_ &&
         degree_ == other.degree_ && bc_ == other.bc_;
}

Mesh1D build_mesh(double a, double b, int elements, int degree, BoundaryCondition bc) {
  return Mesh1D(a, b, elements, degree, bc);
}

}  // namespace ncnls
