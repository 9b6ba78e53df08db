#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ncnls/coefficients.hpp"
#include "ncnls/errors.hpp"

using namespace ncnls;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
  return s * h / 3;
}

}  // namespace

TEST_CASE("r6 normalization against the erf closed form") {
  for (double mu : {1.0, 4.0, 12.0, 30.0})
    for (double T : {1.0, 6.0}) {
      const double exact = std::sqrt(std::numbers::pi) / mu * std::erf(mu * T / 2);
      CHECK(r6_normalization(T, mu) == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("R is the antiderivative of r with R(0) = 0") {
  for (Scenario s : kAllScenarios) {
    const auto c = make_scenario(s, 6.0);
    CHECK(c.R(0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    const double d = 1e-4;
    for (double t : {0.3, 1.7, 2.95, 3.0, 4.4, 5.9})
      CHECK((-c.R(t + 2 * d) + 8 * c.R(t + d) - 8 * c.R(t - d) + c.R(t - 2 * d)) / (12 * d) ==
            doctest::Approx(c.r(t)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("scenario shapes") {
  const double T = 6.0;
  CHECK(make_scenario(Scenario::r1, T).r(2.0) == 0.0);
  CHECK(make_scenario(Scenario::r2, T).r(2.0) == 1.0);
  CHECK(make_scenario(Scenario::r3, T).r(2.0) == -1.0);
  CHECK(make_scenario(Scenario::r4, T).R(T) == doctest::Approx(0.0).scale(1.0));
  CHECK(make_scenario(Scenario::r5, T).R(T) == doctest::Approx(0.0).scale(1.0));
  const auto r6 = make_scenario(Scenario::r6, T);
  CHECK(r6.R(T) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(simpson(r6.r, 0, T, 20000) == doctest::Approx(-1.0).epsilon(1e-10));
  for (Scenario s : kAllScenarios) {
    const auto c = make_scenario(s, T);
    for (double t : {0.0, 1.1, 4.2}) {
      CHECK(c.p(t) == 1.0);
      CHECK(c.q(t) == doctest::Approx(2.0 * std::exp(2 * c.R(t))));
    }
  }
}

TEST_CASE("scenario ids round-trip and unknown ids are rejected") {
  for (Scenario s : kAllScenarios) CHECK(parse_scenario(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scenario("r7"), ConfigError);
}

TEST_CASE("manufactured solution satisfies the PDE (4th-order finite differences)") {
  const double dt = 1e-3, dx = 2.5e-3;
  const std::complex<double> i(0, 1);
  for (Scenario s : kAllScenarios) {
    const auto c = make_scenario(s, 6.0);
    const ManufacturedSolution u({0.3, 2.0}, c, -30, 30);
    double worst = 0;
    for (double t : {0.5, 2.2, 3.0, 5.1})
      for (double x = -8; x <= 8; x += 0.41) {
        const auto ut = (-u.value(x, t + 2 * dt) + 8.0 * u.value(x, t + dt) - 8.0 * u.value(x, t - dt) +
                         u.value(x, t - 2 * dt)) /
                        (12 * dt);
        const auto uxx = (-u.value(x + 2 * dx, t) + 16.0 * u.value(x + dx, t) - 30.0 * u.value(x, t) +
                          16.0 * u.value(x - dx, t) - u.value(x - 2 * dx, t)) /
                         (12 * dx * dx);
        const auto v = u.value(x, t);
        worst = std::max(worst, std::abs(i * ut + c.p(t) * uxx + c.q(t) * std::norm(v) * v + i * c.r(t) * v));
      }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("exact mass and energies against quadrature of the closed form") {
  const auto c = make_scenario(Scenario::r5, 6.0);
  const ManufacturedSolution u({0.3, 2.0}, c, -30, 30);
  for (double t : {0.0, 1.5, 4.0}) {
    const double mass = simpson([&](double x) { return u.modulus_squared(x, t); }, -30, 30, 60000);
    const double l4 = simpson([&](double x) { return std::pow(u.modulus_squared(x, t), 2); }, -30, 30, 60000);
    const double d = 1e-4;
    const double kin = simpson(
        [&](double x) { return std::norm((u.value(x + d, t) - u.value(x - d, t)) / (2 * d)); }, -30, 30, 60000);
    CHECK(u.exact_mass(t) == doctest::Approx(mass).epsilon(1e-10));
    CHECK(u.exact_potential(t) == doctest::Approx(l4).epsilon(1e-10));
    CHECK(u.exact_kinetic(t) == doctest::Approx(kin).epsilon(1e-7));
    CHECK(u.exact_energy(t, t) == doctest::Approx(0.5 * kin - 0.25 * c.q(t) * l4).epsilon(1e-7));
  }
}

TEST_CASE("r6 rejects a non-positive width") {
  CHECK_THROWS_AS(make_scenario(Scenario::r6, 6.0, 2.0, 0.0), ConfigError);
}
