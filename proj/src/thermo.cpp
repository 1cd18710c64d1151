#include "brwa/thermo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "brwa/analytic.hpp"

namespace brwa {
namespace {

double occupation_of(double theta) {
  return theta == 0.0 ? 0.0 : std::exp(2.0 * log_sinh(theta));
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

double free_energy(double theta, double E, double beta) {
  require_positive(E, "E");
  require_positive(beta, "beta");
  return E * occupation_of(theta) - entropy_closed_form(theta) / beta;
}

double stationary_beta(double theta, double E) {
  require_positive(theta, "theta");
  return *beta_effective(theta, E);
}

double bose_occupation(double E, double beta) { return 1.0 / std::expm1(beta * E); }

double stationarity_residual(double theta, double E, double beta) {
  require_positive(theta, "theta");
  require_positive(E, "E");
  require_positive(beta, "beta");
  const double ln_tanh2 = 2.0 * (log_sinh(theta) - log_cosh(theta));
  return std::sinh(2.0 * theta) * (E + ln_tanh2 / beta);
}

double stationarity_residual_fd(double theta, double E, double beta, double h) {
  return (free_energy(theta + h, E, beta) - free_energy(theta - h, E, beta)) / (2.0 * h);
}

double free_energy_curvature_fd(double theta, double E, double beta, double h) {
  return (free_energy(theta + h, E, beta) - 2.0 * free_energy(theta, E, beta) +
          free_energy(theta - h, E, beta)) /
         (h * h);
}

double heat_balance_residual(double Gamma, double E, double t, double dt) {
  require_positive(t, "t");
  require_positive(E, "E");
  if (!(dt > 0.0) || !(dt < t)) throw std::invalid_argument("heat balance needs 0 < dt < t");
  if (Gamma == 0.0) return 0.0;
  const double rate = std::abs(Gamma);
  const double up = rate * (t + dt);
  const double down = rate * (t - dt);
  const double dE = E * (occupation_of(up) - occupation_of(down)) / 2.0;
  const double dS = (entropy_closed_form(up) - entropy_closed_form(down)) / 2.0;
  const double beta = stationary_beta(rate * t, E);
  return std::abs(dE - dS / beta) / std::abs(dE);
}

ThermoPoint thermo_point(double Gamma, double E, double t, double dt) {
  ThermoPoint p;
  p.t = t;
  p.theta = std::abs(Gamma * t);
  p.E = E;
  p.n = occupation_of(p.theta);
  p.S = entropy_closed_form(p.theta);
  if (p.theta > 0.0) {
    p.beta = stationary_beta(p.theta, E);
    p.F = free_energy(p.theta, E, *p.beta);
  }
  if (dt > 0.0 && dt < t) p.heat_residual = heat_balance_residual(Gamma, E, t, dt);
  return p;
}

}  // namespace brwa
