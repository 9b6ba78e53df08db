#pragma once

#include <cstddef>
#include <vector>

namespace ncnls {

/// Gauss-Legendre rule on the reference element [0, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
  /// Highest polynomial degree integrated exactly (2n - 1).
  int exactness = 0;

  std::size_t size() const { return points.size(); }
};

QuadratureRule gauss_legendre(std::size_t num_points);

/// Rule used for all assembly on degree-`degree` elements: exact up to 4*degree
/// (2*degree + 1 points), plus `extra_points` for non-polynomial integrands.
QuadratureRule element_rule(int degree, int extra_points = 0);

}  // namespace ncnls
