#include "brwa/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "brwa/analytic.hpp"
#include "brwa/quadrature.hpp"

namespace brwa {
namespace {

constexpr double kUnderflowExponent = 700.0;
constexpr int kRuleOrder = 8;

void require_time(double t, const char* name) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

void ModeSet::add(const std::string& label, const ModeParams& params) {
  if (modes_.contains(label)) throw std::invalid_argument("duplicate mode label: " + label);
  modes_.emplace(label, derive_params(params));
}

Survival survival_from_exponent(double exponent) {
  return {exponent, exponent > kUnderflowExponent ? 0.0 : std::exp(-exponent)};
}

Survival survival_product(const ModeSet& modes, double t) {
  require_time(t, "t");
  double exponent = 0.0;
  for (const auto& [label, d] : modes.modes()) exponent += log_cosh(d.Gamma * t);
  return survival_from_exponent(exponent);
}

double total_entropy(const ModeSet& modes, double t) {
  require_time(t, "t");
  double s = 0.0;
  for (const auto& [label, d] : modes.modes()) s += entropy_closed_form(d.Gamma * t);
  return s;
}

Survival two_time_overlap_product(const ModeSet& modes, double t, double t_prime) {
  require_time(t, "t");
  require_time(t_prime, "t'");
  double exponent = 0.0;
  for (const auto& [label, d] : modes.modes()) exponent += log_cosh(d.Gamma * (t - t_prime));
  return survival_from_exponent(exponent);
}

Profile Profile::constant(double value) { return {Kind::constant, value, 0.0, {}}; }

Profile Profile::linear(double intercept, double slope) {
  return {Kind::linear, intercept, slope, {}};
}

Profile Profile::power(double scale, double exponent) { return {Kind::power, scale, exponent, {}}; }

Profile Profile::table(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("table profile needs at least 2 samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first)) {
      throw std::invalid_argument("table profile needs strictly increasing k");
    }
  }
  Profile p;
  p.kind = Kind::table;
  p.samples = std::move(samples);
  return p;
}

double Profile::operator()(double k) const {
  switch (kind) {
    case Kind::constant:
      return c0;
    case Kind::linear:
      return c0 + c1 * k;
    case Kind::power:
      return c0 * std::pow(k, c1);
    case Kind::table: {
      if (k < samples.front().first || k > samples.back().first) {
        throw std::domain_error("k=" + std::to_string(k) + " outside the tabulated profile");
      }
      const auto hi = std::lower_bound(samples.begin(), samples.end(), k,
                                       [](const auto& s, double x) { return s.first < x; });
      if (hi == samples.begin()) return hi->second;
      const auto lo = hi - 1;
      const double w = (k - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  return c0;
}

void DispersionSpec::validate() const {
  if (!(k_min >= 0.0) || !(k_min < k_max) || !std::isfinite(k_max)) {
    throw std::invalid_argument("dispersion needs 0 <= k_min < k_max");
  }
  if (n_points < 2) throw std::invalid_argument("dispersion needs n_points >= 2");
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw std::invalid_argument("dispersion needs a finite volume > 0");
  }
}

double DispersionSpec::gamma_at(double k) const {
  return derive_params({omega_a(k), omega_b(k), g(k)}).Gamma;
}

SurvivalIntegral survival_integral(const DispersionSpec& spec, double t) {
  spec.validate();
  require_time(t, "t");
  const QuadratureRule rule = gauss_legendre(kRuleOrder);
  const auto integrand = [&](double k) {
    const double value = k * k * log_cosh(spec.gamma_at(k) * t);
    if (!std::isfinite(value)) {
      throw std::domain_error("non-finite integrand at k=" + std::to_string(k));
    }
    return value;
  };
  const double prefactor = spec.volume / std::pow(2.0 * std::numbers::pi, 3) * 4.0 * std::numbers::pi;
  const double coarse = prefactor * integrate(integrand, spec.k_min, spec.k_max, spec.n_points, rule);
  const double fine =
      prefactor * integrate(integrand, spec.k_min, spec.k_max, 2 * spec.n_points, rule);
  if (coarse < 0.0) {
    throw std::domain_error("negative survival exponent " + std::to_string(coarse) +
                            ": the integral must be finite and positive");
  }
  const Survival s = survival_from_exponent(coarse);
  return {coarse, s.value, std::abs(coarse - fine)};
}

}  // namespace brwa
