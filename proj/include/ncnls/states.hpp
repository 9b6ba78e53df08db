#pragma once

#include <cstddef>

#include "ncnls/fe_space.hpp"

namespace ncnls {

enum class SchemeKind { relaxation, dfp };

/// Relaxation state at t_n: U^n, Phi^{n-1/2} and the previous step k_{n-1}.
struct RelaxState {
  std::size_t n = 0;
  double t = 0.0;
  ComplexFunction U;
  RealFunction phi;
  double k_prev = 0.0;
};

/// DFP state at t_n.
struct DFPState {
  std::size_t n = 0;
  double t = 0.0;
  ComplexFunction U;
};

}  // namespace ncnls
