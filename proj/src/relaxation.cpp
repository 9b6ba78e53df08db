#include "ncnls/relaxation.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "ncnls/errors.hpp"
#include "ncnls/midpoint.hpp"

namespace ncnls {

std::string_view to_string(InitMode mode) { return mode == InitMode::naive ? "naive" : "improved"; }

InitMode parse_init_mode(std::string_view text) {
  if (text == "naive") return InitMode::naive;
  if (text == "improved") return InitMode::improved;
  throw ConfigError("unknown init mode '" + std::string(text) + "' (expected naive or improved)");
}

namespace {

/// Solves the linear stage equation; returns U^{n+1/2} - U^n.
std::vector<complex> solve_stage(const ComplexFunction& u, const RealFunction& phi_half,
                                 const CoefficientSet& coeffs, double t, double k) {
  const double tc = t + 0.5 * k;
  const RealBandMatrix w = assemble_weighted_mass(phi_half);
  const MidpointOperator op{0.5 * k * coeffs.r(tc), 0.5 * k * coeffs.p(tc), 0.5 * k * coeffs.q(tc), &w};
  try {
    return solve_midpoint_increment(*u.space(), op, u.coefficients());
  } catch (const SolverError& e) {
    std::ostringstream msg;
    msg << "relaxation step at t_n = " << t << ", k_n = " << k << ": " << e.what();
    throw SolverError(msg.str());
  }
}

/// U^n + 2 D = 2 U^{n+1/2} - U^n.
ComplexFunction extrapolate(const ComplexFunction& u, const std::vector<complex>& increment) {
  std::vector<complex> next(increment.size());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = u.values()[i] + 2.0 * increment[i];
  return ComplexFunction(u.space(), std::move(next));
}

RealFunction advance_phi(const ComplexFunction& u, const RealFunction& phi_prev, double k, double k_prev) {
  const RealFunction proj = project_modulus_squared(u);
  std::vector<double> out(proj.size());
  const double a = (k + k_prev) / k_prev, b = k / k_prev;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * proj.values()[i] - b * phi_prev.values()[i];
  return RealFunction(u.space(), std::move(out));
}

}  // namespace

RelaxState relax_step(const RelaxState& state, const CoefficientSet& coeffs, double k) {
  if (!(k > 0)) throw ContractViolation("relax_step: k must be positive");
  require_same_space(state.U.space(), state.phi.space(), "relax_step");
  RealFunction phi_half = advance_phi(state.U, state.phi, k, state.k_prev);
  const auto stage = solve_stage(state.U, phi_half, coeffs, state.t, k);
  return RelaxState{state.n + 1, state.t + k, extrapolate(state.U, stage), std::move(phi_half), k};
}

RelaxInitialization relax_initialize(const SpacePtr& space, const CoefficientSet& coeffs,
                                     const std::function<complex(double)>& u0, double k0, InitMode mode) {
  if (!(k0 > 0)) throw ContractViolation("relax_initialize: k0 must be positive");
  ComplexFunction U0 = l2_project(space, u0);
  RealFunction phi_naive = l2_project_real(space, [&](double x) { return std::norm(u0(x)); });
  RelaxState zero{0, 0.0, U0, phi_naive, k0};
  if (mode == InitMode::naive) return {zero, zero};

  // half step with the naive start, then Phi^{1/2} = P_h(|U^{1/2}|^2)
  RelaxState half_start{0, 0.0, U0, phi_naive, 0.5 * k0};
  const RelaxState half = relax_step(half_start, coeffs, 0.5 * k0);
  RealFunction phi_half = project_modulus_squared(half.U);

  const auto stage = solve_stage(U0, phi_half, coeffs, 0.0, k0);
  RelaxState first{1, k0, extrapolate(U0, stage), phi_half, k0};

  const RealFunction proj0 = project_modulus_squared(U0);
  std::vector<double> implied(proj0.size());
  for (std::size_t i = 0; i < implied.size(); ++i) implied[i] = 2.0 * proj0.values()[i] - phi_half.values()[i];
  zero.phi = RealFunction(space, std::move(implied));
  return {zero, first};
}

RunResult relax_run(const SpacePtr& space, const CoefficientSet& coeffs,
                    const std::function<complex(double)>& u0, const TimeGrid& grid, InitMode mode,
                    const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t N = grid.steps();
  auto step_size = [&](std::size_t n) { return grid.step(std::min(n, N - 1)); };
  auto half_node = [&](std::size_t n) { return grid.time(n) + 0.5 * step_size(n); };

  LedgerRecorder recorder(SchemeKind::relaxation, coeffs, options, N);
  RunResult result;
  try {
    RelaxInitialization init = relax_initialize(space, coeffs, u0, grid.step(0), mode);
    RelaxState prev = init.zero;
    DiscreteEnergies e_prev = discrete_energies(prev, coeffs, half_node(0));
    recorder.record(0, 0.0, step_size(0), prev.U, e_prev, nullptr, nullptr);
    if (options.on_state) options.on_state(0, 0.0, prev.U);

    auto advance = [&](RelaxState next) {
      const std::size_t n = next.n;
      next.t = grid.time(n);
      const double k = grid.step(n - 1);
      if (options.track_phi && options.exact)
        recorder.note_phi_error(phi_error(next.phi, *options.exact, grid.time(n - 1) + 0.5 * k));
      const DiscreteEnergies e_next = discrete_energies(next, coeffs, half_node(n));
      const BalanceResiduals res =
          detail::relax_residuals(e_prev, e_next, prev.U, next.U, next.phi, coeffs, grid.time(n - 1), k);
      recorder.record(n, next.t, step_size(n), next.U, e_next, &res, &e_prev);
      if (options.on_state) options.on_state(n, next.t, next.U);
      prev = std::move(next);
      e_prev = e_next;
    };

    if (mode == InitMode::improved) advance(init.current);
    while (prev.n < N) advance(relax_step(prev, coeffs, grid.step(prev.n)));
    result.final_state = prev.U;
  } catch (const SolverError& e) {
    recorder.fail(e.what());
  }
  result.ledger = recorder.finish();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ncnls
