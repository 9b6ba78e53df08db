#include "ncnls/dfp.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "ncnls/errors.hpp"
#include "ncnls/midpoint.hpp"

namespace ncnls {

void NewtonOptions::validate() const {
  if (newton_steps < 1 || inner_steps < 1 || fallback_max_iters < 1 || !(fallback_tol > 0))
    throw ConfigError("newton options must all be positive");
}

namespace {

double euclidean(std::span<const complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

struct StepContext {
  const ComplexFunction& u;
  double p, q, r, k;
  QuadField<complex> u_quad;    // U^n at quadrature points
};

/// One modulus-freezing sweep: weight |V|^2 + |U^n|^2 frozen at the current
/// iterate, linear solve for the midpoint, return V = 2 Y - U^n.
std::vector<complex> sweep(const StepContext& c, const std::vector<complex>& v) {
  const FESpace& space = *c.u.space();
  const ElementTables& t = space.assembly();
  QuadField<complex> vq(t.points());
  kernels::parallel::evaluate(t, std::span<const complex>(v), std::span<complex>(vq));
  QuadField<double> weight(t.points());
  for (std::size_t i = 0; i < weight.size(); ++i) weight[i] = std::norm(vq[i]) + std::norm(c.u_quad[i]);
  const RealBandMatrix w = assemble_weighted_mass(space, weight);
  const MidpointOperator op{0.5 * c.k * c.r, 0.5 * c.k * c.p, 0.25 * c.k * c.q, &w};
  const auto d = solve_midpoint_increment(space, op, c.u.coefficients());
  std::vector<complex> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = c.u.values()[i] + 2.0 * d[i];
  return out;
}

std::vector<complex> residual(const StepContext& c, std::span<const complex> v) {
  const FESpace& space = *c.u.space();
  const ElementTables& t = space.assembly();
  const std::size_t n = v.size();
  std::vector<complex> y(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = 0.5 * (v[i] + c.u.values()[i]);
    diff[i] = (v[i] - c.u.values()[i]) / c.k;
  }
  QuadField<complex> vq(t.points()), yq(t.points());
  kernels::parallel::evaluate(t, v, std::span<complex>(vq));
  kernels::parallel::evaluate(t, std::span<const complex>(y), std::span<complex>(yq));
  QuadField<complex> g(t.points());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (std::norm(vq[i]) + std::norm(c.u_quad[i])) * yq[i];
  const auto nonlinear = kernels::parallel::load_vector(t, std::span<const complex>(g));
  const auto m_diff = space.mass().apply(std::span<const complex>(diff));
  const auto m_y = space.mass().apply(std::span<const complex>(y));
  const auto s_y = space.stiffness().apply(std::span<const complex>(y));
  const complex ip(0.0, c.p), iq2(0.0, 0.5 * c.q);
  std::vector<complex> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = m_diff[i] + ip * s_y[i] - iq2 * nonlinear[i] + c.r * m_y[i];
  return f;
}

StepContext make_context(const ComplexFunction& u, const CoefficientSet& coeffs, double t_n, double k) {
  const double tc = t_n + 0.5 * k;
  StepContext c{u, coeffs.p(tc), coeffs.q(tc), coeffs.r(tc), k, {}};
  c.u_quad = evaluate(u, u.space()->assembly());
  return c;
}

}  // namespace

std::vector<complex> dfp_residual(const ComplexFunction& u_n, const ComplexFunction& v,
                                  const CoefficientSet& coeffs, double t_n, double k) {
  require_same_space(u_n.space(), v.space(), "dfp_residual");
  if (!(k > 0)) throw ContractViolation("dfp_residual: k must be positive");
  return residual(make_context(u_n, coeffs, t_n, k), v.coefficients());
}

DFPState dfp_step(const DFPState& state, const CoefficientSet& coeffs, double k, const NewtonOptions& opts,
                  DFPStepStats* stats) {
  if (!(k > 0)) throw ContractViolation("dfp_step: k must be positive");
  opts.validate();
  const StepContext c = make_context(state.U, coeffs, state.t, k);
  const double tol = opts.fallback_tol * (1.0 + euclidean(state.U.coefficients()));

  std::vector<complex> v = state.U.values();
  int sweeps = 0;
  bool stagnated = false;
  double increment = 0.0;
  auto do_sweep = [&] {
    std::vector<complex> next;
    try {
      next = sweep(c, v);
    } catch (const SolverError& e) {
      std::ostringstream msg;
      msg << "dfp step at t_n = " << state.t << ", k_n = " << k << ": " << e.what();
      throw SolverError(msg.str());
    }
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) d += std::norm(next[i] - v[i]);
    increment = std::sqrt(d);
    v = std::move(next);
    ++sweeps;
  };

  for (int outer = 0; outer < opts.newton_steps; ++outer)
    for (int inner = 0; inner < opts.inner_steps; ++inner) do_sweep();

  double res = euclidean(residual(c, v));
  int extra = 0;
  while (res > tol) {
    // round-off floor: further sweeps cannot change the iterate
    if (increment <= 64 * std::numeric_limits<double>::epsilon() * (1.0 + euclidean(v))) {
      stagnated = true;
      break;
    }
    if (extra >= opts.fallback_max_iters) {
      std::ostringstream msg;
      msg << "dfp step at t_n = " << state.t << ", k_n = " << k << " did not converge: ||F|| = " << res
          << " > " << tol << " after " << sweeps << " sweeps";
      throw SolverError(msg.str());
    }
    do_sweep();
    ++extra;
    res = euclidean(residual(c, v));
  }
  if (stats) *stats = {sweeps, res, stagnated};
  return DFPState{state.n + 1, state.t + k, ComplexFunction(state.U.space(), std::move(v))};
}

RunResult dfp_run(const SpacePtr& space, const CoefficientSet& coeffs, const std::function<complex(double)>& u0,
                  const TimeGrid& grid, const NewtonOptions& opts, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t N = grid.steps();
  auto step_size = [&](std::size_t n) { return grid.step(std::min(n, N - 1)); };
  auto half_node = [&](std::size_t n) { return grid.time(n) + 0.5 * step_size(n); };

  LedgerRecorder recorder(SchemeKind::dfp, coeffs, options, N);
  RunResult result;
  try {
    DFPState prev{0, 0.0, l2_project(space, u0)};
    DiscreteEnergies e_prev = discrete_energies(prev, coeffs, half_node(0));
    recorder.record(0, 0.0, step_size(0), prev.U, e_prev, nullptr, nullptr);
    if (options.on_state) options.on_state(0, 0.0, prev.U);
    while (prev.n < N) {
      const std::size_t n = prev.n + 1;
      const double k = grid.step(prev.n);
      DFPStepStats stats;
      DFPState next = dfp_step(prev, coeffs, k, opts, &stats);
      result.total_sweeps += stats.sweeps;
      next.t = grid.time(n);
      const DiscreteEnergies e_next = discrete_energies(next, coeffs, half_node(n));
      const BalanceResiduals res =
          detail::dfp_residuals(e_prev, e_next, prev.U, next.U, coeffs, grid.time(n - 1), k);
      recorder.record(n, next.t, step_size(n), next.U, e_next, &res, &e_prev);
      if (options.on_state) options.on_state(n, next.t, next.U);
      prev = std::move(next);
      e_prev = e_next;
    }
    result.final_state = prev.U;
  } catch (const SolverError& e) {
    recorder.fail(e.what());
  }
  result.ledger = recorder.finish();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ncnls
