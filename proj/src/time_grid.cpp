#include "ncnls/time_grid.hpp"

#include <cmath>
#include <sstream>

#include "ncnls/errors.hpp"

namespace ncnls {

TimeGrid TimeGrid::uniform(double T, double k) {
  if (!(T > 0) || !(k > 0)) throw ConfigError("time grid: T and k must be positive");
  if (k > T * (1 + 1e-12)) throw ConfigError("time grid: k must not exceed T");
  const double ratio = T / k;
  const double N = std::round(ratio);
  if (std::abs(ratio - N) > 1e-6 * ratio) {
    std::ostringstream msg;
    msg << "time grid: T/k = " << ratio << " is not an integer";
    throw ConfigError(msg.str());
  }
  TimeGrid g;
  const auto n = static_cast<std::size_t>(N);
  g.k_.assign(n, T / N);
  g.t_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.t_[i] = T * (static_cast<double>(i) / N);
  g.T_ = T;
  g.uniform_ = true;
  return g;
}

TimeGrid TimeGrid::from_steps(std::vector<double> steps) {
  if (steps.empty()) throw ConfigError("time grid: no steps");
  TimeGrid g;
  g.t_.resize(steps.size() + 1, 0.0);
  double sum = 0.0, c = 0.0;  // compensated sum keeps t_N = T tight
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0)) throw ConfigError("time grid: step sizes must be positive");
    const double y = steps[i] - c;
    const double s = sum + y;
    c = (s - sum) - y;
    sum = s;
    g.t_[i + 1] = sum;
  }
  g.k_ = std::move(steps);
  g.T_ = sum;
  return g;
}

double TimeGrid::time(std::size_t n) const { return t_[n]; }

}  // namespace ncnls
