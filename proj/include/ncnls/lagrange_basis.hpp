#pragma once

#include <vector>

namespace ncnls {

/// Degree-l Lagrange basis on [0, 1] with equispaced nodes m/l.
class LagrangeBasis {
 public:
  explicit LagrangeBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  double node(int m) const { return nodes_[m]; }

  double value(int m, double xi) const;
  double derivative(int m, double xi) const;

 private:
  int degree_;
  std::vector<double> nodes_;
};

}  // namespace ncnls
