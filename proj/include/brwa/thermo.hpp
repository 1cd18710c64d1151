#pragma once

#include <optional>

namespace brwa {

/// F = E sinh^2 theta - (1/beta)(cosh^2 ln cosh^2 - sinh^2 ln sinh^2). Needs beta, E > 0.
[[nodiscard]] double free_energy(double theta, double E, double beta);

/// beta with beta E = -ln tanh^2 theta. Needs theta > 0 and E > 0.
[[nodiscard]] double stationary_beta(double theta, double E);

/// Bose occupation 1/(exp(beta E) - 1).
[[nodiscard]] double bose_occupation(double E, double beta);

/// dF/dtheta = sinh(2 theta) [E + (1/beta) ln tanh^2 theta]. Needs theta > 0.
[[nodiscard]] double stationarity_residual(double theta, double E, double beta);

/// Central differences of free_energy in theta.
[[nodiscard]] double stationarity_residual_fd(double theta, double E, double beta, double h);
[[nodiscard]] double free_energy_curvature_fd(double theta, double E, double beta, double h);

/// |dE - (1/beta) dS| / |dE| from central differences over [t - dt, t + dt],
/// with beta taken at t from the stationarity condition. Exactly 0 for
/// Gamma = 0. Needs t > 0 and 0 < dt < t; theta is |Gamma| t.
[[nodiscard]] double heat_balance_residual(double Gamma, double E, double t, double dt);

struct ThermoPoint {
  double t = 0.0;
  double theta = 0.0;
  double E = 0.0;
  std::optional<double> beta;  // empty at theta = 0
  double n = 0.0;
  double S = 0.0;
  double F = 0.0;  // at the stationary beta; 0 at theta = 0
  std::optional<double> heat_residual;  // empty unless 0 < dt < t
};

[[nodiscard]] ThermoPoint thermo_point(double Gamma, double E, double t, double dt);

}  // namespace brwa
