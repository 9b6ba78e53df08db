#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace ncnls {

/// Forcing scenarios for the damping/growth coefficient r(t).
enum class Scenario { r1, r2, r3, r4, r5, r6 };

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view text);
inline constexpr Scenario kAllScenarios[] = {Scenario::r1, Scenario::r2, Scenario::r3,
                                             Scenario::r4, Scenario::r5, Scenario::r6};

/// Time-dependent coefficients of  i u_t + p u_xx + q |u|^2 u + i r u = 0,
/// together with the exact antiderivative R(t) = int_0^t r.
struct CoefficientSet {
  std::function<double(double)> p;
  std::function<double(double)> q;
  std::function<double(double)> r;
  std::function<double(double)> R;
  double T = 1.0;
  std::optional<Scenario> scenario;
  double theta0 = 0.0;   // q(t) = theta0 exp(2 R(t)) for scenario sets
  double mu = 0.0;       // r6 width
  double c_e = 0.0;      // r6 normalization
};

/// p = 1, q = theta0 exp(2R), r from the scenario.
CoefficientSet make_scenario(Scenario id, double T, double theta0 = 2.0, double mu = 12.0);

/// Constant p, q, r (R = r t).
CoefficientSet constant_coefficients(double p, double q, double r, double T);

/// int_0^T exp(-mu^2 (t - T/2)^2) dt by adaptive Gauss-Kronrod.
double r6_normalization(double T, double mu);

struct SolitonParams {
  double omega = 0.3;
  double theta0 = 2.0;
};

/// Single travelling soliton gauge-transformed by exp(-R(t)); an exact
/// solution for p = 1, q = theta0 exp(2R) with theta0 = 2.
class ManufacturedSolution {
 public:
  /// Exact integrals are taken over [a, b] around the initial soliton position.
  ManufacturedSolution(SolitonParams params, CoefficientSet coeffs, double a, double b);

  std::complex<double> value(double x, double t) const;
  double modulus_squared(double x, double t) const;

  double exact_mass(double t) const;
  /// ||u_x(t)||^2
  double exact_kinetic(double t) const;
  /// ||u(t)||_{L4}^4
  double exact_potential(double t) const;
  /// 1/2 p(tc) E_k(t) - 1/4 q(tc) E_p(t); the coefficients use `t_coeff`.
  double exact_energy(double t, double t_coeff) const;

  const SolitonParams& params() const { return params_; }
  const CoefficientSet& coefficients() const { return coeffs_; }

 private:
  SolitonParams params_;
  CoefficientSet coeffs_;
  double mass0_, kinetic0_, potential0_;
};

}  // namespace ncnls
