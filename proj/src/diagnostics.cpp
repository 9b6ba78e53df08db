#include "ncnls/diagnostics.hpp"

#include <cmath>

#include "ncnls/errors.hpp"

namespace ncnls {

std::string_view to_string(SchemeKind s) { return s == SchemeKind::relaxation ? "relaxation" : "dfp"; }

SchemeKind parse_scheme(std::string_view text) {
  if (text == "relaxation") return SchemeKind::relaxation;
  if (text == "dfp") return SchemeKind::dfp;
  throw ConfigError("unknown scheme '" + std::string(text) + "' (expected relaxation or dfp)");
}

namespace {

DiscreteEnergies combine(const CoefficientSet& c, double t_coeff, double mass, double kinetic,
                         double potential) {
  DiscreteEnergies e{mass, kinetic, potential, 0.0};
  e.total = 0.5 * c.p(t_coeff) * kinetic - 0.25 * c.q(t_coeff) * potential;
  return e;
}

ComplexFunction midpoint(const ComplexFunction& a, const ComplexFunction& b) {
  require_same_space(a.space(), b.space(), "balance_residuals");
  std::vector<complex> y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.5 * (a.values()[i] + b.values()[i]);
  return ComplexFunction(a.space(), std::move(y));
}

}  // namespace

DiscreteEnergies discrete_energies(const RelaxState& s, const CoefficientSet& coeffs, double t_coeff) {
  const Functionals f = functionals(s.U, &s.phi);
  return combine(coeffs, t_coeff, f.l2_sq, f.h1_semi_sq, 2.0 * f.weighted_density - f.weight_sq);
}

DiscreteEnergies discrete_energies(const DFPState& s, const CoefficientSet& coeffs, double t_coeff) {
  const Functionals f = functionals(s.U);
  return combine(coeffs, t_coeff, f.l2_sq, f.h1_semi_sq, f.l4_4);
}

namespace detail {

BalanceResiduals relax_residuals(const DiscreteEnergies& e0, const DiscreteEnergies& e1,
                                 const ComplexFunction& u0, const ComplexFunction& u1,
                                 const RealFunction& phi_half, const CoefficientSet& coeffs,
                                 double t_n, double k) {
  const double tc = t_n + 0.5 * k;
  const double p = coeffs.p(tc), q = coeffs.q(tc), r = coeffs.r(tc);
  const Functionals stage = functionals(midpoint(u0, u1), &phi_half);
  BalanceResiduals out;
  out.mass = e1.mass - e0.mass + 2.0 * k * r * stage.l2_sq;
  out.energy = 0.5 * p * (e1.kinetic - e0.kinetic) / k - 0.25 * q * (e1.potential - e0.potential) / k +
               r * (p * stage.h1_semi_sq - q * stage.weighted_density);
  return out;
}

BalanceResiduals dfp_residuals(const DiscreteEnergies& e0, const DiscreteEnergies& e1,
                               const ComplexFunction& u0, const ComplexFunction& u1,
                               const CoefficientSet& coeffs, double t_n, double k) {
  const double tc = t_n + 0.5 * k;
  const double p = coeffs.p(tc), q = coeffs.q(tc), r = coeffs.r(tc);
  const ComplexFunction y = midpoint(u0, u1);
  const Functionals stage = functionals(y);
  const ElementTables& t = u0.space()->assembly();
  const auto a = evaluate(u0, t), b = evaluate(u1, t), m = evaluate(y, t);
  QuadField<double> g(t.points());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (std::norm(a[i]) + std::norm(b[i])) * std::norm(m[i]);
  const double nonlinear = kernels::parallel::integrate(t, g);
  BalanceResiduals out;
  out.mass = e1.mass - e0.mass + 2.0 * k * r * stage.l2_sq;
  out.energy = 0.5 * p * (e1.kinetic - e0.kinetic) / k - 0.25 * q * (e1.potential - e0.potential) / k +
               r * (p * stage.h1_semi_sq - 0.5 * q * nonlinear);
  return out;
}

}  // namespace detail

BalanceResiduals balance_residuals(const RelaxState& prev, const RelaxState& next,
                                   const CoefficientSet& coeffs, double k) {
  const DiscreteEnergies e0 = discrete_energies(prev, coeffs, prev.t);
  const DiscreteEnergies e1 = discrete_energies(next, coeffs, next.t);
  return detail::relax_residuals(e0, e1, prev.U, next.U, next.phi, coeffs, prev.t, k);
}

BalanceResiduals balance_residuals(const DFPState& prev, const DFPState& next,
                                   const CoefficientSet& coeffs, double k) {
  const DiscreteEnergies e0 = discrete_energies(prev, coeffs, prev.t);
  const DiscreteEnergies e1 = discrete_energies(next, coeffs, next.t);
  return detail::dfp_residuals(e0, e1, prev.U, next.U, coeffs, prev.t, k);
}

double solution_error(const ComplexFunction& U, const ManufacturedSolution& exact, double t) {
  const ElementTables& tab = U.space()->accurate();
  const auto uq = evaluate(U, tab);
  QuadField<double> g(tab.points());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::norm(exact.value(tab.x[i], t) - uq[i]);
  return std::sqrt(kernels::parallel::integrate(tab, g));
}

double phi_error(const RealFunction& phi, const ManufacturedSolution& exact, double t) {
  const ElementTables& tab = phi.space()->accurate();
  const auto pq = evaluate(phi, tab);
  QuadField<double> g(tab.points());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = exact.modulus_squared(tab.x[i], t) - pq[i];
    g[i] = d * d;
  }
  return std::sqrt(kernels::parallel::integrate(tab, g));
}

ExactErrors exact_errors(const ComplexFunction& U, const DiscreteEnergies& energies,
                         const ManufacturedSolution& exact, double t_n, double t_coeff) {
  ExactErrors e;
  e.mass = std::abs(energies.mass - exact.exact_mass(t_n));
  e.energy = std::abs(energies.total - exact.exact_energy(t_n, t_coeff));
  e.l2 = solution_error(U, exact, t_n);
  return e;
}

std::vector<std::optional<double>> compute_eoc(const std::vector<double>& steps,
                                               const std::vector<double>& errors) {
  if (steps.size() != errors.size()) throw ContractViolation("compute_eoc: length mismatch");
  std::vector<std::optional<double>> rates(steps.size());
  for (std::size_t j = 1; j < steps.size(); ++j) {
    if (!(errors[j - 1] > 0) || !(errors[j] > 0) || !(steps[j - 1] > 0) || !(steps[j] > 0) ||
        steps[j - 1] == steps[j])
      continue;
    rates[j] = (std::log(errors[j - 1]) - std::log(errors[j])) / (std::log(steps[j - 1]) - std::log(steps[j]));
  }
  return rates;
}

ConvergenceTable make_convergence_table(std::string study, std::string target, std::string scheme,
                                        int ell, const std::vector<double>& steps,
                                        const std::vector<double>& errors) {
  for (std::size_t j = 1; j < steps.size(); ++j)
    if (!(steps[j] < steps[j - 1]))
      throw ContractViolation("convergence table: step parameters must decrease strictly");
  ConvergenceTable table{std::move(study), std::move(target), std::move(scheme), ell, {}};
  const auto rates = compute_eoc(steps, errors);
  for (std::size_t j = 0; j < steps.size(); ++j) table.rows.push_back({steps[j], errors[j], rates[j]});
  return table;
}

// ---------------------------------------------------------------- recorder

LedgerRecorder::LedgerRecorder(SchemeKind scheme, const CoefficientSet& coeffs, const RunOptions& options,
                               std::size_t total_steps)
    : coeffs_(coeffs), options_(options), total_steps_(total_steps) {
  ledger_.scheme = scheme;
  ledger_.steps = total_steps;
}

bool LedgerRecorder::keep(std::size_t n, double t, double k) const {
  if (n == 0 || n == total_steps_) return true;
  if (options_.stride <= 1 || n % options_.stride == 0) return true;
  for (double s : options_.sample_times)
    if (std::abs(t - s) < 0.5 * k) return true;
  return false;
}

void LedgerRecorder::record(std::size_t n, double t, double k_row, const ComplexFunction& U,
                            const DiscreteEnergies& energies, const BalanceResiduals* residuals,
                            const DiscreteEnergies* energies_prev) {
  LedgerRow row;
  row.n = n;
  row.t = t;
  row.k = k_row;
  row.mass = energies.mass;
  row.e_kinetic = energies.kinetic;
  row.e_potential = energies.potential;
  row.e_total = energies.total;
  if (residuals) {
    row.mass_residual = residuals->mass;
    row.energy_residual = residuals->energy;
    const double m0 = energies_prev ? energies_prev->mass : energies.mass;
    const double e0 = energies_prev ? energies_prev->total : energies.total;
    ledger_.max_mass_residual = std::max(ledger_.max_mass_residual, std::abs(residuals->mass));
    ledger_.max_energy_residual = std::max(ledger_.max_energy_residual, std::abs(residuals->energy));
    ledger_.max_mass_residual_ratio =
        std::max(ledger_.max_mass_residual_ratio, std::abs(residuals->mass) / (1.0 + std::abs(m0)));
    ledger_.max_energy_residual_ratio =
        std::max(ledger_.max_energy_residual_ratio, std::abs(residuals->energy) / (1.0 + std::abs(e0)));
  }
  const bool kept = keep(n, t, k_row);
  if (options_.exact) {
    const ManufacturedSolution& ex = *options_.exact;
    row.mass_error = std::abs(energies.mass - ex.exact_mass(t));
    row.energy_error = std::abs(energies.total - ex.exact_energy(t, t + 0.5 * k_row));
    if (kept || options_.track_l2_every_step) {
      row.l2_error = solution_error(U, ex, t);
      ledger_.max_l2_error = std::max(ledger_.max_l2_error, row.l2_error);
    }
  }
  if (kept) ledger_.rows.push_back(row);
}

void LedgerRecorder::note_phi_error(double e) { ledger_.max_phi_error = std::max(ledger_.max_phi_error, e); }

void LedgerRecorder::fail(std::string message) {
  ledger_.failed = true;
  ledger_.failure = std::move(message);
}

}  // namespace ncnls
