#include "ncnls/lagrange_basis.hpp"

#include "ncnls/errors.hpp"

namespace ncnls {

LagrangeBasis::LagrangeBasis(int degree) : degree_(degree) {
  if (degree < 1) throw ConfigError("LagrangeBasis: degree must be >= 1");
  nodes_.resize(degree + 1);
  for (int m = 0; m <= degree; ++m) nodes_[m] = static_cast<double>(m) / degree;
}

double LagrangeBasis::value(int m, double xi) const {
  double v = 1.0;
  for (int j = 0; j <= degree_; ++j)
    if (j != m) v *= (xi - nodes_[j]) / (nodes_[m] - nodes_[j]);
  return v;
}

double LagrangeBasis::derivative(int m, double xi) const {
  double sum = 0.0;
  for (int k = 0; k <= degree_; ++k) {
    if (k == m) continue;
    double term = 1.0 / (nodes_[m] - nodes_[k]);
    for (int j = 0; j <= degree_; ++j)
      if (j != m && j != k) term *= (xi - nodes_[j]) / (nodes_[m] - nodes_[j]);
    sum += term;
  }
  return sum;
}

}  // namespace ncnls
