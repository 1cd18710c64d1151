#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace brwa {

/// Squeeze parameter theta(t) = Gamma t of the evolved vacuum.
struct SqueezeTrajectory {
  double Gamma = 0.0;
  double t = 0.0;

  SqueezeTrajectory() = default;
  /// Throws std::invalid_argument for t < 0 or non-finite input.
  SqueezeTrajectory(double rate, double time);

  [[nodiscard]] double theta() const { return Gamma * t; }
};

/// Numerically safe ln cosh x and ln sinh |x| for any magnitude.
[[nodiscard]] double log_cosh(double x);
[[nodiscard]] double log_sinh(double x);

/// <0|0(t)> = exp(-ln cosh Gamma t).
[[nodiscard]] double vacuum_overlap(const SqueezeTrajectory& traj);

/// <0(t')|0(t)> = 1 / cosh(Gamma (t - t')). Both trajectories must share Gamma.
[[nodiscard]] double overlap_two_times(const SqueezeTrajectory& at_t,
                                       const SqueezeTrajectory& at_t_prime);

/// sinh^2(Gamma t), identical for both modes.
[[nodiscard]] double occupation(const SqueezeTrajectory& traj);

struct WeightDistribution {
  std::vector<double> weights;  // W_0 .. W_{n_max}
  int n_max = 0;
  double tail = 0.0;            // 1 - sum W_n = tanh^{2(n_max+1)}
};

/// W_n = tanh^{2n}(theta) / cosh^2(theta).
[[nodiscard]] WeightDistribution weights(const SqueezeTrajectory& traj, int n_max);

/// Smallest n_max with tanh^{2(n_max+1)} <= tail_target.
[[nodiscard]] int default_weight_order(const SqueezeTrajectory& traj, double tail_target = 1e-12);

/// cosh^2 ln cosh^2 - sinh^2 ln sinh^2, i.e. -sum W_n ln W_n.
[[nodiscard]] double entropy_expectation(const SqueezeTrajectory& traj);
[[nodiscard]] double entropy_closed_form(double theta);

struct BogoliubovCoefficients {
  double c = 1.0;  // cosh theta
  double s = 0.0;  // sinh theta
};

[[nodiscard]] BogoliubovCoefficients bogoliubov_coeffs(const SqueezeTrajectory& traj);

/// beta = -ln tanh^2(theta) / E. Returns std::nullopt at theta = 0, the
/// zero-temperature end where beta is unbounded. Throws for theta < 0 or E <= 0.
[[nodiscard]] std::optional<double> beta_effective(double theta, double E);

/// c_n = tanh^n(theta) / cosh(theta): amplitudes of |n,n> in the evolved vacuum.
[[nodiscard]] Eigen::VectorXcd squeezed_state_amplitudes(const SqueezeTrajectory& traj, int n_max);

}  // namespace brwa
