#include "brwa/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace brwa {
namespace {

// ln coth x for x > 0, accurate at both ends.
double log_coth(double x) {
  if (x < 0.5) return -std::log(std::tanh(x));
  return 2.0 * std::atanh(std::exp(-2.0 * x));
}

}  // namespace

SqueezeTrajectory::SqueezeTrajectory(double rate, double time) : Gamma(rate), t(time) {
  if (!std::isfinite(rate) || !std::isfinite(time)) {
    throw std::invalid_argument("squeeze trajectory needs finite Gamma and t");
  }
  if (time < 0.0) throw std::invalid_argument("squeeze trajectory needs t >= 0");
}

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double log_sinh(double x) {
  const double ax = std::abs(x);
  return ax + std::log(-std::expm1(-2.0 * ax)) - std::numbers::ln2;
}

double vacuum_overlap(const SqueezeTrajectory& traj) { return std::exp(-log_cosh(traj.theta())); }

double overlap_two_times(const SqueezeTrajectory& at_t, const SqueezeTrajectory& at_t_prime) {
  if (at_t.Gamma != at_t_prime.Gamma) {
    throw std::invalid_argument("two-time overlap needs trajectories with the same Gamma");
  }
  return std::exp(-log_cosh(at_t.Gamma * (at_t.t - at_t_prime.t)));
}

double occupation(const SqueezeTrajectory& traj) {
  const double theta = traj.theta();
  if (theta == 0.0) return 0.0;
  return std::exp(2.0 * log_sinh(theta));
}

WeightDistribution weights(const SqueezeTrajectory& traj, int n_max) {
  if (n_max < 0) throw std::invalid_argument("weights need n_max >= 0");
  const double theta = traj.theta();
  WeightDistribution out;
  out.n_max = n_max;
  out.weights.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (theta == 0.0) {
    out.weights[0] = 1.0;
    out.tail = 0.0;
    return out;
  }
  // ln W_n = 2n ln tanh - 2 ln cosh
  const double log_tanh2 = -2.0 * log_coth(std::abs(theta));
  const double log_w0 = -2.0 * log_cosh(theta);
  for (int n = 0; n <= n_max; ++n) out.weights[n] = std::exp(n * log_tanh2 + log_w0);
  out.tail = std::exp((n_max + 1) * log_tanh2);
  return out;
}

int default_weight_order(const SqueezeTrajectory& traj, double tail_target) {
  const double theta = std::abs(traj.theta());
  if (theta == 0.0) return 0;
  const double log_tanh2 = -2.0 * log_coth(theta);
  const double needed = std::log(tail_target) / log_tanh2;  // n_max + 1 >= needed
  return std::max(0, static_cast<int>(std::ceil(needed)) - 1);
}

double entropy_closed_form(double theta) {
  const double x = std::abs(theta);
  if (x == 0.0) return 0.0;
  // c^2 ln c^2 - s^2 ln s^2 = ln c^2 + s^2 ln coth^2
  return 2.0 * log_cosh(x) + std::exp(2.0 * log_sinh(x) + std::log(2.0 * log_coth(x)));
}

double entropy_expectation(const SqueezeTrajectory& traj) {
  return entropy_closed_form(traj.theta());
}

BogoliubovCoefficients bogoliubov_coeffs(const SqueezeTrajectory& traj) {
  const double theta = traj.theta();
  return {std::cosh(theta), std::sinh(theta)};
}

std::optional<double> beta_effective(double theta, double E) {
  if (!(E > 0.0)) throw std::invalid_argument("beta_effective needs E > 0");
  if (theta < 0.0 || !std::isfinite(theta)) {
    throw std::invalid_argument("beta_effective needs a finite theta >= 0, got " +
                                std::to_string(theta));
  }
  if (theta == 0.0) return std::nullopt;
  return 2.0 * log_coth(theta) / E;
}

Eigen::VectorXcd squeezed_state_amplitudes(const SqueezeTrajectory& traj, int n_max) {
  if (n_max < 0) throw std::invalid_argument("amplitudes need n_max >= 0");
  const double theta = traj.theta();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_max + 1);
  const double first = std::exp(-log_cosh(theta));
  const double ratio = std::tanh(theta);
  double value = first;
  for (int n = 0; n <= n_max; ++n) {
    c(n) = value;
    value *= ratio;
  }
  return c;
}

}  // namespace brwa
