#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "brwa/model.hpp"

namespace brwa {

/// Independent mode pairs keyed by a unique label. Iteration (and every
/// sum over modes) runs in label order.
class ModeSet {
 public:
  /// Validates the parameters through derive_params; throws
  /// std::invalid_argument on a duplicate label.
  void add(const std::string& label, const ModeParams& params);

  [[nodiscard]] std::size_t size() const { return modes_.size(); }
  [[nodiscard]] bool empty() const { return modes_.empty(); }
  [[nodiscard]] const std::map<std::string, DerivedParams>& modes() const { return modes_; }

 private:
  std::map<std::string, DerivedParams> modes_;
};

/// exp(-exponent). `value` is exactly 0 once the exponent passes 700.
struct Survival {
  double exponent = 0.0;
  double value = 1.0;
};

[[nodiscard]] Survival survival_from_exponent(double exponent);

/// prod_k 1/cosh(Gamma_k t) in log domain. Needs t >= 0.
[[nodiscard]] Survival survival_product(const ModeSet& modes, double t);

/// sum_k [cosh^2 ln cosh^2 - sinh^2 ln sinh^2](Gamma_k t). Needs t >= 0.
[[nodiscard]] double total_entropy(const ModeSet& modes, double t);

/// prod_k 1/cosh(Gamma_k (t - t')). Needs t, t' >= 0.
[[nodiscard]] Survival two_time_overlap_product(const ModeSet& modes, double t, double t_prime);

/// A scalar function of the radial wavenumber k.
struct Profile {
  enum class Kind { constant, linear, power, table };

  Kind kind = Kind::constant;
  double c0 = 0.0;  // constant: c0; linear: c0 + c1 k; power: c0 k^c1
  double c1 = 0.0;
  std::vector<std::pair<double, double>> samples;  // table: (k, value), k ascending

  [[nodiscard]] static Profile constant(double value);
  [[nodiscard]] static Profile linear(double intercept, double slope);
  [[nodiscard]] static Profile power(double scale, double exponent);
  /// Piecewise-linear through the samples; needs >= 2 strictly increasing k.
  [[nodiscard]] static Profile table(std::vector<std::pair<double, double>> samples);

  /// Throws std::domain_error outside a table's range.
  [[nodiscard]] double operator()(double k) const;
};

struct DispersionSpec {
  double k_min = 0.0;
  double k_max = 1.0;
  int n_points = 16;  // panels of the composite 8-node Gauss-Legendre rule
  double volume = 1.0;
  Profile omega_a = Profile::constant(1.0);
  Profile omega_b = Profile::constant(1.0);
  Profile g = Profile::constant(0.0);

  /// Throws std::invalid_argument unless 0 <= k_min < k_max, n_points >= 2, volume > 0.
  void validate() const;
  [[nodiscard]] double gamma_at(double k) const;
};

struct SurvivalIntegral {
  double exponent = 0.0;  // V/(2 pi)^3 4 pi int k^2 ln cosh(Gamma(k) t) dk
  double survival = 1.0;
  double refinement = 0.0;  // |exponent(n panels) - exponent(2n panels)|
};

/// Throws std::domain_error on a non-finite integrand sample or a negative exponent.
[[nodiscard]] SurvivalIntegral survival_integral(const DispersionSpec& spec, double t);

}  // namespace brwa
