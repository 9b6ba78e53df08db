#pragma once

#include <functional>

#include "ncnls/coefficients.hpp"
#include "ncnls/diagnostics.hpp"
#include "ncnls/states.hpp"
#include "ncnls/time_grid.hpp"

namespace ncnls {

struct NewtonOptions {
  int newton_steps = 1;
  int inner_steps = 4;
  double fallback_tol = 1e-12;
  int fallback_max_iters = 50;

  void validate() const;
};

struct DFPStepStats {
  int sweeps = 0;
  double residual = 0.0;   // ||F(V)|| at the accepted iterate
  bool stagnated = false;  // accepted because updates reached round-off
};

/// Weak residual of the DFP step from U_n (at t_n) to the candidate V:
///   M (V - U_n)/k + i p S Y - i q/2 <(|V|^2 + |U_n|^2) Y, phi_i> + r M Y,
/// Y = (V + U_n)/2, coefficients at t_n + k/2.
std::vector<complex> dfp_residual(const ComplexFunction& u_n, const ComplexFunction& v,
                                  const CoefficientSet& coeffs, double t_n, double k);

/// Solves the implicit DFP step starting from V = U^n with modulus-freezing
/// sweeps: newton_steps x inner_steps prescribed sweeps, then further sweeps
/// until ||F|| <= fallback_tol (1 + ||U^n||) or the updates stagnate at
/// round-off.
DFPState dfp_step(const DFPState& state, const CoefficientSet& coeffs, double k,
                  const NewtonOptions& opts = {}, DFPStepStats* stats = nullptr);

RunResult dfp_run(const SpacePtr& space, const CoefficientSet& coeffs,
                  const std::function<complex(double)>& u0, const TimeGrid& grid,
                  const NewtonOptions& opts = {}, const RunOptions& options = {});

}  // namespace ncnls
