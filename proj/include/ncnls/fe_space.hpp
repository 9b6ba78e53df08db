#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ncnls/band_lu.hpp"
#include "ncnls/band_matrix.hpp"
#include "ncnls/kernels.hpp"
#include "ncnls/lagrange_basis.hpp"
#include "ncnls/mesh.hpp"
#include "ncnls/quadrature.hpp"

namespace ncnls {

/// Values of some quantity at every quadrature point, element-major.
template <class T>
using QuadField = std::vector<T>;

/// Immutable finite-element discretization: mesh, quadrature tables, the
/// assembled mass and stiffness matrices and a factorized mass matrix for L2
/// projections. Shared by every FEFunction living on it.
class FESpace {
 public:
  /// `extra_points` raises the assembly rule above its 2*degree+1 default.
  static std::shared_ptr<const FESpace> create(const Mesh1D& mesh, int extra_points = 0);

  const Mesh1D& mesh() const { return mesh_; }
  std::size_t num_dofs() const { return mesh_.num_dofs(); }

  /// Rule exact for products of up to four discrete functions.
  const ElementTables& assembly() const { return assembly_; }
  /// Assembly rule plus two points, for integrands that are not polynomial.
  const ElementTables& accurate() const { return accurate_; }

  const RealBandMatrix& mass() const { return mass_; }
  const RealBandMatrix& stiffness() const { return stiffness_; }
  const BandLU<double>& mass_lu() const { return mass_lu_; }

 private:
  explicit FESpace(const Mesh1D& mesh, int extra_points);

  Mesh1D mesh_;
  ElementTables assembly_, accurate_;
  RealBandMatrix mass_, stiffness_;
  BandLU<double> mass_lu_;
};

using SpacePtr = std::shared_ptr<const FESpace>;

/// Coefficient vector of a (real or complex) finite-element function.
template <class T>
class FEFunction {
 public:
  explicit FEFunction(SpacePtr space) : space_(std::move(space)), coeffs_(space_->num_dofs(), T{}) {}
  FEFunction(SpacePtr space, std::vector<T> coeffs) : space_(std::move(space)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != space_->num_dofs())
      throw ContractViolation("FEFunction: coefficient count does not match the mesh");
  }

  const SpacePtr& space() const { return space_; }
  std::span<const T> coefficients() const { return coeffs_; }
  std::vector<T>& values() { return coeffs_; }
  const std::vector<T>& values() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

 private:
  SpacePtr space_;
  std::vector<T> coeffs_;
};

using ComplexFunction = FEFunction<complex>;
using RealFunction = FEFunction<double>;

struct Operators {
  RealBandMatrix mass;
  RealBandMatrix stiffness;
};

/// Mass_ij = int phi_i phi_j, Stiffness_ij = int phi_i' phi_j'.
Operators assemble_operators(const FESpace& space);

/// W_ij = int w phi_i phi_j for a discrete weight.
RealBandMatrix assemble_weighted_mass(const RealFunction& w);
/// Same, with the weight given directly at assembly quadrature points.
RealBandMatrix assemble_weighted_mass(const FESpace& space, std::span<const double> w_at_quad);

/// L2 projection of a pointwise-evaluable function.
ComplexFunction l2_project(const SpacePtr& space, const std::function<complex(double)>& f);
RealFunction l2_project_real(const SpacePtr& space, const std::function<double(double)>& f);
/// L2 projection of a field given at assembly quadrature points (exact for
/// polynomial fields such as |U|^2 of a discrete U).
RealFunction project_quad_field(const SpacePtr& space, std::span<const double> g);

/// |U|^2 at assembly quadrature points.
QuadField<double> modulus_squared(const ComplexFunction& u);
/// P_h(|U|^2).
RealFunction project_modulus_squared(const ComplexFunction& u);

QuadField<complex> evaluate(const ComplexFunction& u, const ElementTables& tables);
QuadField<double> evaluate(const RealFunction& u, const ElementTables& tables);

struct Functionals {
  double l2_sq = 0.0;             // int |v|^2
  double h1_semi_sq = 0.0;        // int |v'|^2
  double l4_4 = 0.0;              // int |v|^4
  double weighted_density = 0.0;  // int w |v|^2
  double weight_sq = 0.0;         // int w^2
};

Functionals functionals(const ComplexFunction& v, const RealFunction* w = nullptr);

/// c^* A c for a real symmetric A.
double quadratic_form(const RealBandMatrix& a, std::span<const complex> c);

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where);

}  // namespace ncnls
