#include "brwa/model.hpp"

#include <cmath>
#include <sstream>

#include "brwa/algebra.hpp"
#include "brwa/evolution.hpp"

namespace brwa {

void validate(const ModeParams& p) {
  if (!(p.omega_a > 0.0) || !std::isfinite(p.omega_a)) {
    throw std::invalid_argument("omega_a must be a finite positive frequency");
  }
  if (!(p.omega_b > 0.0) || !std::isfinite(p.omega_b)) {
    throw std::invalid_argument("omega_b must be a finite positive frequency");
  }
  if (!std::isfinite(p.g) || p.g < 0.0) {
    throw std::invalid_argument("coupling g must be finite and >= 0");
  }
}

DerivedParams derive_params(const ModeParams& p) {
  validate(p);
  DerivedParams d;
  d.source = p;
  d.omega_plus = p.omega_a + p.omega_b;
  d.omega_minus = p.omega_a - p.omega_b;
  d.A = std::hypot(d.omega_minus, 2.0 * p.g);
  const double g2 = p.g * p.g;
  const double b_squared = d.omega_plus * d.omega_plus * d.A * d.A - 16.0 * g2 * g2;
  if (!(b_squared > 0.0)) {
    std::ostringstream msg;
    msg << "degenerate parameters: B^2 = omega_+^2 A^2 - 16 g^4 = " << b_squared
        << " must be > 0 (omega_a=" << p.omega_a << ", omega_b=" << p.omega_b << ", g=" << p.g
        << ")";
    throw DegenerateParameters(msg.str());
  }
  d.B = std::sqrt(b_squared);
  d.theta = std::atan2(2.0 * p.g, d.omega_minus);
  d.alpha = std::atanh(-4.0 * g2 / (d.omega_plus * d.A));
  d.Gamma = p.g * d.omega_minus / d.A;
  d.E = d.A / 2.0;
  d.calE = d.B / (2.0 * d.A);
  return d;
}

Hamiltonians build_hamiltonians(const ModeParams& p, const FockBasis& basis) {
  validate(p);
  const auto [a, ad] = build_ladder(basis, Mode::a);
  const auto [b, bd] = build_ladder(basis, Mode::b);
  const Complex ig{0.0, p.g};
  Hamiltonians h;
  h.free = pruned(p.omega_a * OperatorMatrix(ad * a) + p.omega_b * OperatorMatrix(bd * b));
  h.jaynes_cummings = pruned(ig * OperatorMatrix(OperatorMatrix(ad * b) - OperatorMatrix(a * bd)));
  h.counter_rotating = pruned(ig * OperatorMatrix(OperatorMatrix(ad * bd) - OperatorMatrix(a * b)));
  h.total = pruned(h.free + h.jaynes_cummings + h.counter_rotating);
  return h;
}

OperatorMatrix hamiltonian_su_form(const DerivedParams& d, const FockBasis& basis) {
  const double g = d.source.g;
  const OperatorMatrix id = identity(basis);
  return pruned(d.omega_plus * (build_generator(basis, Generator::J3) - 0.5 * id) +
                d.omega_minus * build_generator(basis, Generator::I3) -
                2.0 * g * build_generator(basis, Generator::I2) -
                2.0 * g * build_generator(basis, Generator::J2));
}

OperatorMatrix rotate_theta(const OperatorMatrix& h, double theta, const FockBasis& basis) {
  if (h.rows() != basis.dim()) throw DimensionMismatch("Hamiltonian does not match basis");
  const EvolutionPlan plan(build_generator(basis, Generator::I1));
  // exp(i theta I1) = exp(-i (-theta) I1)
  return plan.conjugate(h, -theta);
}

void check_squeeze_magnitude(double alpha, const FockBasis& basis) {
  const double occupancy_bound = basis.cutoff() / 2;
  const double s = std::sinh(std::abs(alpha));
  const double load = s * s * occupancy_bound;
  if (load > 0.01 * basis.cutoff()) {
    std::ostringstream msg;
    msg << "squeeze |alpha|=" << std::abs(alpha) << " too large for cutoff N=" << basis.cutoff()
        << " (sinh^2|alpha| * N/2 = " << load << " > 0.01 N); raise the cutoff";
    throw TruncationGuardError(msg.str());
  }
}

OperatorMatrix rotate_alpha(const OperatorMatrix& h_theta, double alpha, const FockBasis& basis) {
  if (h_theta.rows() != basis.dim()) throw DimensionMismatch("Hamiltonian does not match basis");
  check_squeeze_magnitude(alpha, basis);
  const EvolutionPlan plan(build_generator(basis, Generator::K2));
  return plan.conjugate(h_theta, -alpha);
}

OperatorMatrix theta_frame_closed_form(const DerivedParams& d, const FockBasis& basis) {
  const double g = d.source.g;
  const OperatorMatrix id = identity(basis);
  return pruned(d.omega_plus * (build_generator(basis, Generator::J3) - 0.5 * id) +
                d.A * build_generator(basis, Generator::I3) -
                (2.0 * g * d.omega_minus / d.A) * build_generator(basis, Generator::J2) -
                (4.0 * g * g / d.A) * build_generator(basis, Generator::Kt1));
}

OperatorMatrix squeezed_frame_closed_form(const DerivedParams& d, const FockBasis& basis) {
  const OperatorMatrix id = identity(basis);
  return pruned((d.B / d.A) * build_generator(basis, Generator::J3) - (0.5 * d.omega_plus) * id +
                interaction_hamiltonian(d, basis));
}

OperatorMatrix interaction_hamiltonian(const DerivedParams& d, const FockBasis& basis) {
  const double g = d.source.g;
  return pruned((d.omega_plus * d.A * d.A / d.B) * build_generator(basis, Generator::I3) -
                (2.0 * g * d.omega_minus / d.A) * build_generator(basis, Generator::J2) +
                (4.0 * g * g * d.A / d.B) * build_generator(basis, Generator::K1));
}

OperatorMatrix effective_interaction(const DerivedParams& d, const FockBasis& basis) {
  return pruned(d.A * build_generator(basis, Generator::I3) -
                2.0 * d.Gamma * build_generator(basis, Generator::J2));
}

}  // namespace brwa
