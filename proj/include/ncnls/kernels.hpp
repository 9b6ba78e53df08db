#pragma once

// Element-loop kernels. Every kernel exists twice: a plain serial loop kept as
// the reference, and an OpenMP version. The OpenMP versions compute per-element
// results in parallel and combine them in element order, so both produce
// bitwise-identical output for any thread count.

#include <span>
#include <vector>

#include "ncnls/band_matrix.hpp"

namespace ncnls {

/// Reference-element tables for one quadrature rule on a uniform mesh.
struct ElementTables {
  int elements = 0;
  int degree = 0;
  int nq = 0;
  double h = 0.0;
  std::size_t num_dofs = 0;
  std::size_t border = 0;
  std::vector<double> weights;  // nq, reference weights (sum to 1)
  std::vector<double> phi;      // nq x (degree+1)
  std::vector<double> dphi;     // nq x (degree+1), d/dxi on [0, 1]
  std::vector<double> x;        // elements x nq physical points
  std::vector<int> dofs;        // elements x (degree+1), -1 when eliminated

  int local() const { return degree + 1; }
  std::size_t points() const { return static_cast<std::size_t>(elements) * nq; }
};

namespace kernels {

namespace serial {

void evaluate(const ElementTables& t, std::span<const double> coeffs, std::span<double> out);
void evaluate(const ElementTables& t, std::span<const complex> coeffs, std::span<complex> out);
/// Physical x-derivative at quadrature points.
void evaluate_derivative(const ElementTables& t, std::span<const complex> coeffs,
                         std::span<complex> out);
std::vector<double> load_vector(const ElementTables& t, std::span<const double> g);
std::vector<complex> load_vector(const ElementTables& t, std::span<const complex> g);
RealBandMatrix weighted_mass(const ElementTables& t, std::span<const double> w);
RealBandMatrix stiffness(const ElementTables& t);
double integrate(const ElementTables& t, std::span<const double> g);

}  // namespace serial

namespace parallel {

void evaluate(const ElementTables& t, std::span<const double> coeffs, std::span<double> out);
void evaluate(const ElementTables& t, std::span<const complex> coeffs, std::span<complex> out);
void evaluate_derivative(const ElementTables& t, std::span<const complex> coeffs,
                         std::span<complex> out);
std::vector<double> load_vector(const ElementTables& t, std::span<const double> g);
std::vector<complex> load_vector(const ElementTables& t, std::span<const complex> g);
RealBandMatrix weighted_mass(const ElementTables& t, std::span<const double> w);
RealBandMatrix stiffness(const ElementTables& t);
double integrate(const ElementTables& t, std::span<const double> g);

}  // namespace parallel

/// Number of OpenMP threads available to the parallel kernels (1 without OpenMP).
int max_threads();

}  // namespace kernels
}  // namespace ncnls
