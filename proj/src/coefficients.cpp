#include "ncnls/coefficients.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "ncnls/errors.hpp"

namespace ncnls {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::r1: return "r1";
    case Scenario::r2: return "r2";
    case Scenario::r3: return "r3";
    case Scenario::r4: return "r4";
    case Scenario::r5: return "r5";
    case Scenario::r6: return "r6";
  }
  return "?";
}

Scenario parse_scenario(std::string_view text) {
  for (Scenario s : kAllScenarios)
    if (to_string(s) == text) return s;
  throw ConfigError("unknown scenario '" + std::string(text) + "' (expected r1..r6)");
}

double r6_normalization(double T, double mu) {
  using boost::math::quadrature::gauss_kronrod;
  auto g = [&](double t) { return std::exp(-mu * mu * (t - 0.5 * T) * (t - 0.5 * T)); };
  // split at the peak so both halves are monotone
  const double left = gauss_kronrod<double, 61>::integrate(g, 0.0, 0.5 * T, 30, 1e-14);
  const double right = gauss_kronrod<double, 61>::integrate(g, 0.5 * T, T, 30, 1e-14);
  return left + right;
}

CoefficientSet make_scenario(Scenario id, double T, double theta0, double mu) {
  if (!(T > 0)) throw ConfigError("scenario: T must be positive");
  CoefficientSet c;
  c.T = T;
  c.scenario = id;
  c.theta0 = theta0;
  c.p = [](double) { return 1.0; };
  const double two_pi = 2.0 * std::numbers::pi;
  switch (id) {
    case Scenario::r1:
      c.r = [](double) { return 0.0; };
      c.R = [](double) { return 0.0; };
      break;
    case Scenario::r2:
      c.r = [](double) { return 1.0; };
      c.R = [](double t) { return t; };
      break;
    case Scenario::r3:
      c.r = [](double) { return -1.0; };
      c.R = [](double t) { return -t; };
      break;
    case Scenario::r4:
      c.r = [T](double t) { return t - 0.5 * T; };
      c.R = [T](double t) { return 0.5 * t * t - 0.5 * T * t; };
      break;
    case Scenario::r5:
      c.r = [T, two_pi](double t) { return std::sin(two_pi * t / T); };
      c.R = [T, two_pi](double t) { return T / two_pi * (1.0 - std::cos(two_pi * t / T)); };
      break;
    case Scenario::r6: {
      if (!(mu > 0)) throw ConfigError("scenario r6: mu must be positive");
      const double ce = r6_normalization(T, mu);
      c.mu = mu;
      c.c_e = ce;
      c.r = [T, mu, ce](double t) { return -std::exp(-mu * mu * (t - 0.5 * T) * (t - 0.5 * T)) / ce; };
      const double s = std::sqrt(std::numbers::pi) / (2.0 * mu);
      c.R = [T, mu, ce, s](double t) {
        return -(s / ce) * (std::erf(mu * (t - 0.5 * T)) + std::erf(mu * 0.5 * T));
      };
      break;
    }
  }
  auto R = c.R;
  c.q = [theta0, R](double t) { return theta0 * std::exp(2.0 * R(t)); };
  return c;
}

CoefficientSet constant_coefficients(double p, double q, double r, double T) {
  CoefficientSet c;
  c.T = T;
  c.theta0 = q;
  c.p = [p](double) { return p; };
  c.q = [q](double) { return q; };
  c.r = [r](double) { return r; };
  c.R = [r](double t) { return r * t; };
  return c;
}

ManufacturedSolution::ManufacturedSolution(SolitonParams params, CoefficientSet coeffs, double a, double b)
    : params_(params), coeffs_(std::move(coeffs)) {
  if (!(params_.theta0 > 0)) throw ConfigError("soliton: theta0 must be positive");
  // closed forms of int sech^2, int sech^2 tanh^2, int sech^4 over [a, b]
  const double ta = std::tanh(a), tb = std::tanh(b);
  const double sech2 = tb - ta;
  const double sech2tanh2 = (tb * tb * tb - ta * ta * ta) / 3.0;
  const double sech4 = sech2 - sech2tanh2;
  const double w = params_.omega;
  mass0_ = sech2;
  kinetic0_ = 4.0 * w * w * sech2 + sech2tanh2;
  potential0_ = sech4;
}

std::complex<double> ManufacturedSolution::value(double x, double t) const {
  const double w = params_.omega;
  const double phase = 2.0 * w * x + (1.0 - 4.0 * w * w) * t;
  const double amplitude = std::exp(-coeffs_.R(t)) / std::cosh(x - 4.0 * w * t);
  return std::complex<double>(0.0, 1.0) * std::polar(amplitude, phase);
}

double ManufacturedSolution::modulus_squared(double x, double t) const {
  const double s = std::exp(-coeffs_.R(t)) / std::cosh(x - 4.0 * params_.omega * t);
  return s * s;
}

double ManufacturedSolution::exact_mass(double t) const { return mass0_ * std::exp(-2.0 * coeffs_.R(t)); }

double ManufacturedSolution::exact_kinetic(double t) const {
  return kinetic0_ * std::exp(-2.0 * coeffs_.R(t));
}

double ManufacturedSolution::exact_potential(double t) const {
  return potential0_ * std::exp(-4.0 * coeffs_.R(t));
}

double ManufacturedSolution::exact_energy(double t, double t_coeff) const {
  return 0.5 * coeffs_.p(t_coeff) * exact_kinetic(t) - 0.25 * coeffs_.q(t_coeff) * exact_potential(t);
}

}  // namespace ncnls
