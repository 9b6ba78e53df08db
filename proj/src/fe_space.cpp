#include "ncnls/fe_space.hpp"

#include <cmath>

namespace ncnls {

namespace {

ElementTables make_tables(const Mesh1D& mesh, const QuadratureRule& rule) {
  ElementTables t;
  t.elements = mesh.elements();
  t.degree = mesh.degree();
  t.nq = static_cast<int>(rule.size());
  t.h = mesh.h();
  t.num_dofs = mesh.num_dofs();
  t.border = mesh.border_dofs();
  t.weights = rule.weights;

  const LagrangeBasis basis(mesh.degree());
  const int L = basis.size();
  t.phi.resize(static_cast<std::size_t>(t.nq) * L);
  t.dphi.resize(static_cast<std::size_t>(t.nq) * L);
  for (int q = 0; q < t.nq; ++q)
    for (int m = 0; m < L; ++m) {
      t.phi[static_cast<std::size_t>(q) * L + m] = basis.value(m, rule.points[q]);
      t.dphi[static_cast<std::size_t>(q) * L + m] = basis.derivative(m, rule.points[q]);
    }

  t.x.resize(t.points());
  for (int e = 0; e < t.elements; ++e)
    for (int q = 0; q < t.nq; ++q)
      t.x[static_cast<std::size_t>(e) * t.nq + q] = mesh.element_left(e) + t.h * rule.points[q];

  t.dofs.resize(static_cast<std::size_t>(t.elements) * L);
  for (int e = 0; e < t.elements; ++e)
    for (int m = 0; m < L; ++m) t.dofs[static_cast<std::size_t>(e) * L + m] = mesh.dof(e, m);
  return t;
}

}  // namespace

FESpace::FESpace(const Mesh1D& mesh, int extra_points)
    : mesh_(mesh),
      assembly_(make_tables(mesh, element_rule(mesh.degree(), extra_points))),
      accurate_(make_tables(mesh, element_rule(mesh.degree(), extra_points + 2))) {
  const std::vector<double> ones(assembly_.points(), 1.0);
  mass_ = kernels::parallel::weighted_mass(assembly_, ones);
  stiffness_ = kernels::parallel::stiffness(assembly_);
  mass_lu_ = BandLU<double>(mass_);
}

SpacePtr FESpace::create(const Mesh1D& mesh, int extra_points) {
  return SpacePtr(new FESpace(mesh, extra_points));
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* where) {
  if (a.get() != b.get() && !(a->mesh() == b->mesh()))
    throw ContractViolation(std::string(where) + ": functions live on different meshes");
}

Operators assemble_operators(const FESpace& space) { return {space.mass(), space.stiffness()}; }

RealBandMatrix assemble_weighted_mass(const FESpace& space, std::span<const double> w_at_quad) {
  return kernels::parallel::weighted_mass(space.assembly(), w_at_quad);
}

RealBandMatrix assemble_weighted_mass(const RealFunction& w) {
  const auto wq = evaluate(w, w.space()->assembly());
  return assemble_weighted_mass(*w.space(), wq);
}

QuadField<complex> evaluate(const ComplexFunction& u, const ElementTables& tables) {
  QuadField<complex> out(tables.points());
  kernels::parallel::evaluate(tables, u.coefficients(), out);
  return out;
}

QuadField<double> evaluate(const RealFunction& u, const ElementTables& tables) {
  QuadField<double> out(tables.points());
  kernels::parallel::evaluate(tables, u.coefficients(), out);
  return out;
}

ComplexFunction l2_project(const SpacePtr& space, const std::function<complex(double)>& f) {
  const ElementTables& t = space->accurate();
  QuadField<complex> g(t.points());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f(t.x[i]);
  const auto load = kernels::parallel::load_vector(t, std::span<const complex>(g));
  return ComplexFunction(space, space->mass_lu().solve(load));
}

RealFunction l2_project_real(const SpacePtr& space, const std::function<double(double)>& f) {
  const ElementTables& t = space->accurate();
  QuadField<double> g(t.points());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f(t.x[i]);
  const auto load = kernels::parallel::load_vector(t, std::span<const double>(g));
  return RealFunction(space, space->mass_lu().solve(load));
}

RealFunction project_quad_field(const SpacePtr& space, std::span<const double> g) {
  const auto load = kernels::parallel::load_vector(space->assembly(), g);
  return RealFunction(space, space->mass_lu().solve(load));
}

QuadField<double> modulus_squared(const ComplexFunction& u) {
  const auto uq = evaluate(u, u.space()->assembly());
  QuadField<double> out(uq.size());
  for (std::size_t i = 0; i < uq.size(); ++i) out[i] = std::norm(uq[i]);
  return out;
}

RealFunction project_modulus_squared(const ComplexFunction& u) {
  return project_quad_field(u.space(), modulus_squared(u));
}

Functionals functionals(const ComplexFunction& v, const RealFunction* w) {
  const SpacePtr& space = v.space();
  if (w) require_same_space(space, w->space(), "functionals");
  const ElementTables& t = space->assembly();
  const auto vq = evaluate(v, t);
  QuadField<complex> dv(t.points());
  kernels::parallel::evaluate_derivative(t, v.coefficients(), dv);

  QuadField<double> g(t.points());
  Functionals out;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::norm(vq[i]);
  out.l2_sq = kernels::parallel::integrate(t, g);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::norm(dv[i]);
  out.h1_semi_sq = kernels::parallel::integrate(t, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double m = std::norm(vq[i]);
    g[i] = m * m;
  }
  out.l4_4 = kernels::parallel::integrate(t, g);
  if (w) {
    const auto wq = evaluate(*w, t);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = wq[i] * std::norm(vq[i]);
    out.weighted_density = kernels::parallel::integrate(t, g);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = wq[i] * wq[i];
    out.weight_sq = kernels::parallel::integrate(t, g);
  }
  return out;
}

double quadratic_form(const RealBandMatrix& a, std::span<const complex> c) {
  const auto ac = a.apply(c);
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += (std::conj(c[i]) * ac[i]).real();
  return s;
}

}  // namespace ncnls
