#pragma once

#include <cstddef>
#include <vector>

namespace ncnls {

/// Step sizes k_0..k_{N-1} covering [0, T].
class TimeGrid {
 public:
  /// Uniform grid; T/k must be (numerically) an integer.
  static TimeGrid uniform(double T, double k);
  static TimeGrid from_steps(std::vector<double> steps);

  double final_time() const { return T_; }
  std::size_t steps() const { return k_.size(); }
  double step(std::size_t n) const { return k_[n]; }
  /// t_n, computed as n*k for uniform grids to avoid drift.
  double time(std::size_t n) const;
  bool is_uniform() const { return uniform_; }

 private:
  std::vector<double> k_;
  std::vector<double> t_;
  double T_ = 0.0;
  bool uniform_ = false;
};

}  // namespace ncnls
