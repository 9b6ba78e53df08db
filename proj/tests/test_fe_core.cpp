#include <cmath>
#include <random>

#include "doctest.h"
#include "ncnls/fe_space.hpp"

using namespace ncnls;

namespace {

// v(x) on element e from the Lagrange basis directly, bypassing the tables.
complex evaluate_at(const Mesh1D& mesh, std::span<const complex> c, int e, double xi) {
  const LagrangeBasis basis(mesh.degree());
  complex v = 0;
  for (int m = 0; m < basis.size(); ++m) {
    const int d = mesh.dof(e, m);
    if (d >= 0) v += c[d] * basis.value(m, xi);
  }
  return v;
}

// Dense Gaussian elimination with partial pivoting.
std::vector<complex> dense_solve(std::vector<complex> a, std::vector<complex> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const complex f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<complex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    complex s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

}  // namespace

TEST_CASE("gauss-legendre rules on [0, 1] integrate polynomials up to their exactness") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto rule = gauss_legendre(n);
    CHECK(rule.exactness == static_cast<int>(2 * n - 1));
    for (int p = 0; p <= rule.exactness; ++p) {
      double s = 0;
      for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.points[i], p);
      const double exact = 1.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-14));
    }
  }
}

TEST_CASE("lagrange basis is nodal and sums to one") {
  for (int l = 1; l <= 5; ++l) {
    const LagrangeBasis b(l);
    for (int m = 0; m <= l; ++m)
      for (int j = 0; j <= l; ++j) CHECK(b.value(m, b.node(j)) == doctest::Approx(m == j ? 1.0 : 0.0));
    for (double xi : {0.13, 0.5, 0.91}) {
      double s = 0, ds = 0;
      for (int m = 0; m <= l; ++m) s += b.value(m, xi), ds += b.derivative(m, xi);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::abs(ds) < 1e-11);
    }
  }
}

TEST_CASE("P1 element matrices: h/6 [[2,1],[1,2]] and 1/h [[1,-1],[-1,1]]") {
  const double h = 0.4;
  const auto space = FESpace::create(Mesh1D(0.0, 5 * h, 5, 1, BoundaryCondition::periodic));
  const auto& m = space->mass();
  const auto& s = space->stiffness();
  const std::size_t n = space->num_dofs();
  REQUIRE(n == 5);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(m.at(i, i) == doctest::Approx(2 * 2 * h / 6).epsilon(1e-14));
    CHECK(s.at(i, i) == doctest::Approx(2 / h).epsilon(1e-14));
    const std::size_t j = (i + 1) % n;
    CHECK(m.at(i, j) == doctest::Approx(h / 6).epsilon(1e-14));
    CHECK(m.at(j, i) == doctest::Approx(h / 6).epsilon(1e-14));
    CHECK(s.at(i, j) == doctest::Approx(-1 / h).epsilon(1e-14));
  }
}

TEST_CASE("mass and stiffness are symmetric, mass rows integrate the basis") {
  for (int l = 1; l <= 5; ++l) {
    const auto space = FESpace::create(Mesh1D(-3, 3, 7, l, BoundaryCondition::periodic));
    const auto& m = space->mass();
    const auto& s = space->stiffness();
    const std::size_t n = space->num_dofs();
    double total = 0;
    std::vector<complex> ones(n, 1.0);
    const auto s1 = s.apply(std::span<const complex>(ones));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(s1[i]) < 1e-11);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(m.at(i, j) == doctest::Approx(m.at(j, i)).epsilon(1e-14));
        CHECK(s.at(i, j) == doctest::Approx(s.at(j, i)).epsilon(1e-14));
        total += m.at(i, j);
      }
    }
    CHECK(total == doctest::Approx(6.0).epsilon(1e-13));
  }
}

TEST_CASE("weighted mass matches composite Simpson") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (auto bc : {BoundaryCondition::periodic, BoundaryCondition::dirichlet})
    for (int l : {1, 3, 5}) {
      const auto space = FESpace::create(Mesh1D(-1, 2, 5, l, bc));
      const auto& mesh = space->mesh();
      auto g = [](double x) { return 1.5 + std::sin(2 * x); };
      const RealFunction w = l2_project_real(space, g);
      std::vector<complex> wc(w.values().begin(), w.values().end());
      std::vector<complex> c(space->num_dofs());
      for (auto& v : c) v = {uni(rng), uni(rng)};
      const double q = quadratic_form(assemble_weighted_mass(w), c);

      auto simpson = [&](int sub) {
        double sum = 0;
        for (int e = 0; e < mesh.elements(); ++e)
          for (int i = 0; i <= sub; ++i) {
            const double xi = static_cast<double>(i) / sub;
            const double wt = (i == 0 || i == sub) ? 1 : (i % 2 ? 4 : 2);
            sum += wt * evaluate_at(mesh, wc, e, xi).real() * std::norm(evaluate_at(mesh, c, e, xi));
          }
        return sum * mesh.h() / (3.0 * sub);
      };
      // one Richardson step lifts Simpson to sixth order
      const double s1 = simpson(300), s2 = simpson(600);
      const double ref = s2 + (s2 - s1) / 15;
      CHECK(std::abs(q - ref) / ref < 1e-11);
    }
}

TEST_CASE("l2 projection residual is orthogonal to the space") {
  for (int l = 1; l <= 5; ++l) {
    const auto space = FESpace::create(Mesh1D(-4, 4, 16, l, BoundaryCondition::periodic));
    auto f = [](double x) { return complex(std::exp(-x * x), std::sin(x) / (1 + x * x)); };
    const auto p = l2_project(space, f);
    const auto& t = space->accurate();
    std::vector<complex> g(t.points());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = f(t.x[i]);
    const auto load = kernels::serial::load_vector(t, std::span<const complex>(g));
    const auto mp = space->mass().apply(p.coefficients());
    for (std::size_t i = 0; i < load.size(); ++i) CHECK(std::abs(load[i] - mp[i]) < 1e-14);
  }
}

TEST_CASE("projection converges at order l+1") {
  auto f = [](double x) { return complex(1 / std::cosh(x), 0.3 * x / std::cosh(x)); };
  for (int l = 1; l <= 3; ++l) {
    double prev = 0;
    for (int m : {240, 480}) {
      const auto space = FESpace::create(Mesh1D(-30, 30, m, l, BoundaryCondition::periodic));
      const auto p = l2_project(space, f);
      const auto& t = space->accurate();
      const auto pv = evaluate(p, t);
      double err = 0;
      for (std::size_t i = 0; i < pv.size(); ++i)
        err += t.weights[i % t.nq] * t.h * std::norm(pv[i] - f(t.x[i]));
      err = std::sqrt(err);
      if (prev > 0) CHECK(std::log2(prev / err) == doctest::Approx(l + 1).epsilon(0.05));
      prev = err;
    }
  }
}

TEST_CASE("bordered band LU agrees with dense elimination") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (std::size_t border : {0u, 1u, 3u})
    for (std::size_t bw : {1u, 2u, 5u}) {
      const std::size_t n = 40;
      SparseComplexMatrix a(n, bw, border);
      std::vector<complex> dense(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (a.in_pattern(i, j)) {
            complex v(uni(rng), uni(rng));
            if (i == j) v += 4.0 * static_cast<double>(bw + border);
            a.ref(i, j) = v;
            dense[i * n + j] = v;
          }
      std::vector<complex> b(n);
      for (auto& v : b) v = {uni(rng), uni(rng)};
      const auto x = BandLU<complex>(a).solve(b);
      const auto ref = dense_solve(dense, b);
      const auto ax = a.apply(x);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(x[i] - ref[i]) < 1e-12);
        CHECK(std::abs(ax[i] - b[i]) < 1e-12);
      }
    }
}

TEST_CASE("band LU pivots within the border block") {
  // Zero diagonal in the dense Schur block needs a row swap.
  SparseComplexMatrix a(4, 1, 2);
  a.ref(0, 0) = 2;
  a.ref(1, 1) = 3;
  a.ref(2, 3) = 1;
  a.ref(3, 2) = 1;
  const std::vector<complex> b{2, 3, 5, 7};
  const auto x = BandLU<complex>(a).solve(b);
  CHECK(std::abs(x[0] - 1.0) < 1e-15);
  CHECK(std::abs(x[2] - 7.0) < 1e-15);
  CHECK(std::abs(x[3] - 5.0) < 1e-15);
}

TEST_CASE("singular matrices are rejected") {
  SparseComplexMatrix a(3, 1, 0);
  a.ref(0, 0) = 1;
  a.ref(2, 2) = 1;
  CHECK_THROWS_AS(BandLU<complex>{a}, SolverError);
}

TEST_CASE("serial and parallel kernels are bitwise identical") {
  const auto space = FESpace::create(Mesh1D(-10, 10, 301, 4, BoundaryCondition::periodic));
  const auto& t = space->assembly();
  std::vector<double> g(t.points());
  std::vector<complex> gc(t.points());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::cos(t.x[i]) + 0.1 * i, gc[i] = {g[i], -0.5 * g[i]};
  CHECK(kernels::serial::load_vector(t, std::span<const double>(g)) ==
        kernels::parallel::load_vector(t, std::span<const double>(g)));
  CHECK(kernels::serial::load_vector(t, std::span<const complex>(gc)) ==
        kernels::parallel::load_vector(t, std::span<const complex>(gc)));
  CHECK(kernels::serial::integrate(t, g) == kernels::parallel::integrate(t, g));
  const auto ws = kernels::serial::weighted_mass(t, g), wp = kernels::parallel::weighted_mass(t, g);
  CHECK(ws.band_data() == wp.band_data());
  CHECK(ws.bottom_data() == wp.bottom_data());
  CHECK(ws.right_data() == wp.right_data());
  std::vector<complex> c(space->num_dofs());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = {std::sin(0.01 * i), 1.0 / (1 + i)};
  std::vector<complex> a(t.points()), b(t.points());
  kernels::serial::evaluate(t, c, a);
  kernels::parallel::evaluate(t, c, b);
  CHECK(a == b);
}

TEST_CASE("mesh rejects bad arguments") {
  CHECK_THROWS_AS(Mesh1D(1, 0, 4, 1, BoundaryCondition::periodic), ConfigError);
  CHECK_THROWS_AS(Mesh1D(0, 1, 4, 6, BoundaryCondition::periodic), ConfigError);
  CHECK_THROWS_AS(Mesh1D(0, 1, 0, 1, BoundaryCondition::periodic), ConfigError);
}
