#include "ncnls/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ncnls::kernels {

namespace {

void check_points(const ElementTables& t, std::size_t n) {
  if (n != t.points()) throw ContractViolation("kernel: quadrature field has wrong length");
}

template <class T>
void evaluate_element(const ElementTables& t, int e, std::span<const T> c, T* out) {
  const int L = t.local();
  T local[6];
  for (int m = 0; m < L; ++m) {
    const int d = t.dofs[static_cast<std::size_t>(e) * L + m];
    local[m] = d < 0 ? T{} : c[d];
  }
  for (int q = 0; q < t.nq; ++q) {
    T v{};
    const double* row = &t.phi[static_cast<std::size_t>(q) * L];
    for (int m = 0; m < L; ++m) v += row[m] * local[m];
    out[q] = v;
  }
}

void derivative_element(const ElementTables& t, int e, std::span<const complex> c, complex* out) {
  const int L = t.local();
  complex local[6];
  for (int m = 0; m < L; ++m) {
    const int d = t.dofs[static_cast<std::size_t>(e) * L + m];
    local[m] = d < 0 ? complex{} : c[d];
  }
  const double inv_h = 1.0 / t.h;
  for (int q = 0; q < t.nq; ++q) {
    complex v{};
    const double* row = &t.dphi[static_cast<std::size_t>(q) * L];
    for (int m = 0; m < L; ++m) v += row[m] * local[m];
    out[q] = v * inv_h;
  }
}

template <class T>
void load_element(const ElementTables& t, int e, std::span<const T> g, T* out) {
  const int L = t.local();
  for (int m = 0; m < L; ++m) out[m] = T{};
  for (int q = 0; q < t.nq; ++q) {
    const T gq = g[static_cast<std::size_t>(e) * t.nq + q] * (t.h * t.weights[q]);
    const double* row = &t.phi[static_cast<std::size_t>(q) * L];
    for (int m = 0; m < L; ++m) out[m] += gq * row[m];
  }
}

void weighted_mass_element(const ElementTables& t, int e, std::span<const double> w, double* out) {
  const int L = t.local();
  for (int i = 0; i < L * L; ++i) out[i] = 0.0;
  for (int q = 0; q < t.nq; ++q) {
    const double wq = w[static_cast<std::size_t>(e) * t.nq + q] * (t.h * t.weights[q]);
    const double* row = &t.phi[static_cast<std::size_t>(q) * L];
    for (int a = 0; a < L; ++a) {
      const double wa = wq * row[a];
      for (int b = 0; b < L; ++b) out[a * L + b] += wa * row[b];
    }
  }
}

void stiffness_element(const ElementTables& t, double* out) {
  const int L = t.local();
  for (int i = 0; i < L * L; ++i) out[i] = 0.0;
  for (int q = 0; q < t.nq; ++q) {
    const double wq = t.weights[q] / t.h;
    const double* row = &t.dphi[static_cast<std::size_t>(q) * L];
    for (int a = 0; a < L; ++a)
      for (int b = 0; b < L; ++b) out[a * L + b] += wq * row[a] * row[b];
  }
}

double integrate_element(const ElementTables& t, int e, std::span<const double> g) {
  double s = 0.0;
  for (int q = 0; q < t.nq; ++q) s += t.weights[q] * g[static_cast<std::size_t>(e) * t.nq + q];
  return s * t.h;
}

template <class T>
void scatter_vector(const ElementTables& t, int e, const T* local, std::vector<T>& out) {
  const int L = t.local();
  for (int m = 0; m < L; ++m) {
    const int d = t.dofs[static_cast<std::size_t>(e) * L + m];
    if (d >= 0) out[d] += local[m];
  }
}

void scatter_matrix(const ElementTables& t, int e, const double* local, RealBandMatrix& out) {
  const int L = t.local();
  const int* d = &t.dofs[static_cast<std::size_t>(e) * L];
  for (int a = 0; a < L; ++a) {
    if (d[a] < 0) continue;
    for (int b = 0; b < L; ++b)
      if (d[b] >= 0) out.add(d[a], d[b], local[a * L + b]);
  }
}

RealBandMatrix empty_matrix(const ElementTables& t) {
  return RealBandMatrix(t.num_dofs, static_cast<std::size_t>(t.degree), t.border);
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------- serial

namespace serial {

void evaluate(const ElementTables& t, std::span<const double> c, std::span<double> out) {
  check_points(t, out.size());
  for (int e = 0; e < t.elements; ++e) evaluate_element(t, e, c, &out[static_cast<std::size_t>(e) * t.nq]);
}

void evaluate(const ElementTables& t, std::span<const complex> c, std::span<complex> out) {
  check_points(t, out.size());
  for (int e = 0; e < t.elements; ++e) evaluate_element(t, e, c, &out[static_cast<std::size_t>(e) * t.nq]);
}

void evaluate_derivative(const ElementTables& t, std::span<const complex> c, std::span<complex> out) {
  check_points(t, out.size());
  for (int e = 0; e < t.elements; ++e) derivative_element(t, e, c, &out[static_cast<std::size_t>(e) * t.nq]);
}

template <class T>
std::vector<T> load_impl(const ElementTables& t, std::span<const T> g) {
  check_points(t, g.size());
  std::vector<T> out(t.num_dofs, T{});
  T local[6];
  for (int e = 0; e < t.elements; ++e) {
    load_element(t, e, g, local);
    scatter_vector(t, e, local, out);
  }
  return out;
}

std::vector<double> load_vector(const ElementTables& t, std::span<const double> g) { return load_impl(t, g); }
std::vector<complex> load_vector(const ElementTables& t, std::span<const complex> g) { return load_impl(t, g); }

RealBandMatrix weighted_mass(const ElementTables& t, std::span<const double> w) {
  check_points(t, w.size());
  RealBandMatrix out = empty_matrix(t);
  double local[36];
  for (int e = 0; e < t.elements; ++e) {
    weighted_mass_element(t, e, w, local);
    scatter_matrix(t, e, local, out);
  }
  return out;
}

RealBandMatrix stiffness(const ElementTables& t) {
  RealBandMatrix out = empty_matrix(t);
  double local[36];
  stiffness_element(t, local);
  for (int e = 0; e < t.elements; ++e) scatter_matrix(t, e, local, out);
  return out;
}

double integrate(const ElementTables& t, std::span<const double> g) {
  check_points(t, g.size());
  double s = 0.0;
  for (int e = 0; e < t.elements; ++e) s += integrate_element(t, e, g);
  return s;
}

}  // namespace serial

// ---------------------------------------------------------------- OpenMP

namespace parallel {

void evaluate(const ElementTables& t, std::span<const double> c, std::span<double> out) {
  check_points(t, out.size());
#pragma omp parallel for schedule(static)
  for (int e = 0; e < t.elements; ++e) evaluate_element(t, e, c, &out[static_cast<std::size_t>(e) * t.nq]);
}

void evaluate(const ElementTables& t, std::span<const complex> c, std::span<complex> out) {
  check_points(t, out.size());
#pragma omp parallel for schedule(static)
  for (int e = 0; e < t.elements; ++e) evaluate_element(t, e, c, &out[static_cast<std::size_t>(e) * t.nq]);
}

void evaluate_derivative(const ElementTables& t, std::span<const complex> c, std::span<complex> out) {
  check_points(t, out.size());
#pragma omp parallel for schedule(static)
  for (int e = 0; e < t.elements; ++e) derivative_element(t, e, c, &out[static_cast<std::size_t>(e) * t.nq]);
}

template <class T>
std::vector<T> load_impl(const ElementTables& t, std::span<const T> g) {
  check_points(t, g.size());
  const int L = t.local();
  std::vector<T> locals(static_cast<std::size_t>(t.elements) * L);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < t.elements; ++e) load_element(t, e, g, &locals[static_cast<std::size_t>(e) * L]);
  std::vector<T> out(t.num_dofs, T{});
  for (int e = 0; e < t.elements; ++e) scatter_vector(t, e, &locals[static_cast<std::size_t>(e) * L], out);
  return out;
}

std::vector<double> load_vector(const ElementTables& t, std::span<const double> g) { return load_impl(t, g); }
std::vector<complex> load_vector(const ElementTables& t, std::span<const complex> g) { return load_impl(t, g); }

RealBandMatrix weighted_mass(const ElementTables& t, std::span<const double> w) {
  check_points(t, w.size());
  const int L = t.local();
  std::vector<double> locals(static_cast<std::size_t>(t.elements) * L * L);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < t.elements; ++e)
    weighted_mass_element(t, e, w, &locals[static_cast<std::size_t>(e) * L * L]);
  RealBandMatrix out = empty_matrix(t);
  for (int e = 0; e < t.elements; ++e) scatter_matrix(t, e, &locals[static_cast<std::size_t>(e) * L * L], out);
  return out;
}

RealBandMatrix stiffness(const ElementTables& t) { return serial::stiffness(t); }

double integrate(const ElementTables& t, std::span<const double> g) {
  check_points(t, g.size());
  std::vector<double> partial(static_cast<std::size_t>(t.elements));
#pragma omp parallel for schedule(static)
  for (int e = 0; e < t.elements; ++e) partial[e] = integrate_element(t, e, g);
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

}  // namespace parallel

}  // namespace ncnls::kernels
