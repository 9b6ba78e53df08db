#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncnls/coefficients.hpp"
#include "ncnls/states.hpp"

namespace ncnls {

/// Discrete mass and energies of one state. `total` uses the coefficients at
/// the half node t_n + k_n/2 that the state's error tables are reported with.
struct DiscreteEnergies {
  double mass = 0.0;
  double kinetic = 0.0;    // ||U_x||^2
  double potential = 0.0;  // 2 int Phi |U|^2 - int Phi^2 (relaxation) or ||U||_L4^4 (dfp)
  double total = 0.0;      // 1/2 p kinetic - 1/4 q potential
};

DiscreteEnergies discrete_energies(const RelaxState& s, const CoefficientSet& coeffs, double t_coeff);
DiscreteEnergies discrete_energies(const DFPState& s, const CoefficientSet& coeffs, double t_coeff);

struct BalanceResiduals {
  double mass = 0.0;    // M^{n+1} - M^n + 2 k r ||U^{n+1/2}||^2
  /// 1/2 p dE_k - 1/4 q dE_p + r (p ||Y_x||^2 - q int w |Y|^2), Y = U^{n+1/2},
  /// w = Phi^{n+1/2} (relaxation) or (|U^{n+1}|^2 + |U^n|^2)/2 (dfp).
  double energy = 0.0;
};

/// Balance residuals of the step prev -> next (size k, coefficients at t_n + k/2).
BalanceResiduals balance_residuals(const RelaxState& prev, const RelaxState& next,
                                   const CoefficientSet& coeffs, double k);
BalanceResiduals balance_residuals(const DFPState& prev, const DFPState& next,
                                   const CoefficientSet& coeffs, double k);

struct ExactErrors {
  double mass = 0.0;    // |M_h^n - M(t_n)|
  double energy = 0.0;  // |E_h^n - E(t_n)|, coefficients at t_coeff on both sides
  double l2 = 0.0;      // ||u(t_n) - U^n||
};

ExactErrors exact_errors(const ComplexFunction& U, const DiscreteEnergies& energies,
                         const ManufacturedSolution& exact, double t_n, double t_coeff);

/// || |u(t)|^2 - Phi || with the accurate rule.
double phi_error(const RealFunction& phi, const ManufacturedSolution& exact, double t);
/// || u(t) - U || with the accurate rule.
double solution_error(const ComplexFunction& U, const ManufacturedSolution& exact, double t);

/// rate_j = log(e_{j-1}/e_j) / log(s_{j-1}/s_j); undefined (nullopt) for the
/// first row and whenever an error is not positive.
std::vector<std::optional<double>> compute_eoc(const std::vector<double>& steps,
                                               const std::vector<double>& errors);

struct LedgerRow {
  std::size_t n = 0;
  double t = 0.0;
  double k = 0.0;
  double mass = 0.0;
  double e_kinetic = 0.0;
  double e_potential = 0.0;
  double e_total = 0.0;
  double mass_residual = 0.0;    // of the step that produced this row
  double energy_residual = 0.0;
  double mass_error = 0.0;
  double energy_error = 0.0;
  double l2_error = 0.0;
};

struct BalanceLedger {
  SchemeKind scheme = SchemeKind::relaxation;
  std::vector<LedgerRow> rows;
  std::size_t steps = 0;
  double max_mass_residual = 0.0;        // max |mass residual|
  double max_energy_residual = 0.0;      // max |energy residual|
  double max_mass_residual_ratio = 0.0;  // max |mass residual| / (1 + M^n)
  double max_energy_residual_ratio = 0.0;  // max |energy residual| / (1 + |E^n|)
  double max_l2_error = 0.0;             // E(u; h, k)
  double max_phi_error = 0.0;            // E(phi; h, k), relaxation only
  bool failed = false;
  std::string failure;
};

struct ConvergenceRow {
  double step = 0.0;
  double error = 0.0;
  std::optional<double> rate;
};

struct ConvergenceTable {
  std::string study;   // spatial | temporal
  std::string target;  // u | phi | mass | energy
  std::string scheme;
  int ell = 0;
  std::vector<ConvergenceRow> rows;
};

ConvergenceTable make_convergence_table(std::string study, std::string target, std::string scheme,
                                        int ell, const std::vector<double>& steps,
                                        const std::vector<double>& errors);

/// Controls what a run records besides the per-step balance checks.
struct RunOptions {
  const ManufacturedSolution* exact = nullptr;
  /// Keep every `stride`-th ledger row (plus the first, last and sampled rows).
  std::size_t stride = 1;
  std::vector<double> sample_times;
  /// Relaxation: also track E(phi) against the exact |u|^2 at half nodes.
  bool track_phi = false;
  /// Evaluate ||u(t_n) - U^n|| at every step (needed for E(u; h, k)); otherwise
  /// only at kept rows.
  bool track_l2_every_step = true;
  /// Called with every state U^n, n = 0..N.
  std::function<void(std::size_t, double, const ComplexFunction&)> on_state;
};

struct RunResult {
  BalanceLedger ledger;
  std::optional<ComplexFunction> final_state;
  double seconds = 0.0;
  long total_sweeps = 0;  // dfp: fixed-point sweeps over the run
};

std::string_view to_string(SchemeKind s);

namespace detail {

BalanceResiduals relax_residuals(const DiscreteEnergies& e0, const DiscreteEnergies& e1,
                                 const ComplexFunction& u0, const ComplexFunction& u1,
                                 const RealFunction& phi_half, const CoefficientSet& coeffs,
                                 double t_n, double k);
BalanceResiduals dfp_residuals(const DiscreteEnergies& e0, const DiscreteEnergies& e1,
                               const ComplexFunction& u0, const ComplexFunction& u1,
                               const CoefficientSet& coeffs, double t_n, double k);

}  // namespace detail

SchemeKind parse_scheme(std::string_view text);

/// Accumulates ledger rows and maxima while a run advances.
class LedgerRecorder {
 public:
  LedgerRecorder(SchemeKind scheme, const CoefficientSet& coeffs, const RunOptions& options,
                 std::size_t total_steps);

  /// Record state n with energies and (for n > 0) the residuals of the step
  /// that produced it; `energies_prev` belongs to state n-1.
  void record(std::size_t n, double t, double k_row, const ComplexFunction& U,
              const DiscreteEnergies& energies, const BalanceResiduals* residuals,
              const DiscreteEnergies* energies_prev);

  void note_phi_error(double e);
  void fail(std::string message);
  BalanceLedger finish() { return std::move(ledger_); }

 private:
  bool keep(std::size_t n, double t, double k) const;

  const CoefficientSet& coeffs_;
  const RunOptions& options_;
  std::size_t total_steps_;
  BalanceLedger ledger_;
};

}  // namespace ncnls
