#pragma once

#include <span>
#include <vector>

#include "ncnls/fe_space.hpp"

namespace ncnls {

/// Linear midpoint operator  A = (1 + a) M + i b S - i c W  shared by both
/// schemes (a = k r/2, b = k p/2, c = k q/2 or k q/4).
struct MidpointOperator {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  const RealBandMatrix* weight = nullptr;
};

/// Solves A Y = M u and returns D = Y - u.
///
/// The solve is carried out for D, from A D = -(a M + i b S - i c W) u. D is
/// O(k) small, so the rounding error of the banded solve is scaled down by the
/// same factor; solving for Y directly leaves a coherent O(eps) mass drift on
/// uniform meshes.
std::vector<complex> solve_midpoint_increment(const FESpace& space, const MidpointOperator& op,
                                              std::span<const complex> u);

}  // namespace ncnls
