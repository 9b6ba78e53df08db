#include "ncnls/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ncnls/errors.hpp"

namespace ncnls {

QuadratureRule gauss_legendre(std::size_t num_points) {
  if (num_points == 0) throw ConfigError("gauss_legendre: need at least one point");
  const std::size_t n = num_points;
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exactness = static_cast<int>(2 * n - 1);

  // Newton on P_n, symmetric pairs; nodes computed on [-1, 1] then mapped.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.5;
  return rule;
}

QuadratureRule element_rule(int degree, int extra_points) {
  if (degree < 1) throw ConfigError("element_rule: degree must be >= 1");
  if (extra_points < 0) throw ConfigError("element_rule: extra_points must be >= 0");
  return gauss_legendre(static_cast<std::size_t>(2 * degree + 1 + extra_points));
}

}  // namespace ncnls
