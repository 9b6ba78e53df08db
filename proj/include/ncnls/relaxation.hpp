#pragma once

#include <functional>

#include "ncnls/coefficients.hpp"
#include "ncnls/diagnostics.hpp"
#include "ncnls/states.hpp"
#include "ncnls/time_grid.hpp"

namespace ncnls {

enum class InitMode { naive, improved };

std::string_view to_string(InitMode mode);
InitMode parse_init_mode(std::string_view text);

struct RelaxInitialization {
  /// n = 0 state. Its phi is Phi^{-1/2}: P_h(|u0|^2) for the naive start, and
  /// 2 P_h(|U^0|^2) - Phi^{1/2} for the improved start (the value that makes
  /// the first step satisfy the extrapolation identity).
  RelaxState zero;
  /// State to continue stepping from: n = 0 (naive) or n = 1 (improved).
  RelaxState current;
};

RelaxInitialization relax_initialize(const SpacePtr& space, const CoefficientSet& coeffs,
                                     const std::function<complex(double)>& u0, double k0,
                                     InitMode mode);

/// One relaxation step of size k:
///   Phi^{n+1/2} from the extrapolation identity,
///   [(1 + k r/2) M + i k p/2 S - i k q/2 W(Phi^{n+1/2})] U^{n+1/2} = M U^n,
///   U^{n+1} = 2 U^{n+1/2} - U^n,
/// with p, q, r evaluated at t_n + k/2.
RelaxState relax_step(const RelaxState& state, const CoefficientSet& coeffs, double k);

/// Drives relax_initialize + relax_step over the grid, filling a ledger.
RunResult relax_run(const SpacePtr& space, const CoefficientSet& coeffs,
                    const std::function<complex(double)>& u0, const TimeGrid& grid, InitMode mode,
                    const RunOptions& options = {});

}  // namespace ncnls
