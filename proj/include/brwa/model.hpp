#pragma once

#include "brwa/fock.hpp"

namespace brwa {

/// Physical inputs of one mode pair (hbar = 1): frequency of a, frequency
/// of b, and the real linear coupling.
struct ModeParams {
  double omega_a = 1.0;
  double omega_b = 1.0;
  double g = 0.0;
};

/// Throws std::invalid_argument unless both frequencies are > 0 and g is finite and >= 0.
void validate(const ModeParams& p);

class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

/// Scalars that fix the two frame rotations and the effective dynamics.
///
///   omega_+- = omega_a +- omega_b
///   A = sqrt(omega_-^2 + 4 g^2),   B = sqrt(omega_+^2 A^2 - 16 g^4)
///   sin theta = 2g/A, cos theta = omega_-/A
///   tanh alpha = -4 g^2 / (omega_+ A)
///   Gamma = g omega_- / A,  E = A/2,  calE = B / (2A)
struct DerivedParams {
  ModeParams source;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double A = 0.0;
  double B = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
  double Gamma = 0.0;
  double E = 0.0;
  double calE = 0.0;
};

/// Throws DegenerateParameters when B^2 <= 0.
[[nodiscard]] DerivedParams derive_params(const ModeParams& p);

struct Hamiltonians {
  OperatorMatrix free;              // omega a'a + Omega b'b
  OperatorMatrix jaynes_cummings;   // i g (a'b - a b')
  OperatorMatrix counter_rotating;  // i g (a'b' - a b)
  OperatorMatrix total;
};

[[nodiscard]] Hamiltonians build_hamiltonians(const ModeParams& p, const FockBasis& basis);

/// omega_+ (J3 - 1/2) + omega_- I3 - 2g I2 - 2g J2.
[[nodiscard]] OperatorMatrix hamiltonian_su_form(const DerivedParams& d, const FockBasis& basis);

/// exp(i theta I1) H exp(-i theta I1).
[[nodiscard]] OperatorMatrix rotate_theta(const OperatorMatrix& h, double theta,
                                          const FockBasis& basis);

/// exp(i alpha K2) H exp(-i alpha K2). Refuses squeezes that the cutoff
/// cannot hold (see check_squeeze_magnitude).
[[nodiscard]] OperatorMatrix rotate_alpha(const OperatorMatrix& h_theta, double alpha,
                                          const FockBasis& basis);

/// Requires sinh^2|alpha| * (N/2) <= 0.01 N; throws TruncationGuardError otherwise.
void check_squeeze_magnitude(double alpha, const FockBasis& basis);

/// omega_+ (J3 - 1/2) + A I3 - (2 g omega_-/A) J2 - (4 g^2/A) Kt1.
[[nodiscard]] OperatorMatrix theta_frame_closed_form(const DerivedParams& d,
                                                     const FockBasis& basis);

/// (B/A) J3 - omega_+/2 + (omega_+ A^2/B) I3 - (2 g omega_-/A) J2 + (4 g^2 A/B) K1.
[[nodiscard]] OperatorMatrix squeezed_frame_closed_form(const DerivedParams& d,
                                                        const FockBasis& basis);

/// Operator part of the squeezed-frame Hamiltonian once the free part
/// calE (a'a + b'b) and the constant are removed:
/// (omega_+ A^2/B) I3 - (2 g omega_-/A) J2 + (4 g^2 A/B) K1.
[[nodiscard]] OperatorMatrix interaction_hamiltonian(const DerivedParams& d,
                                                     const FockBasis& basis);

/// A I3 - 2 Gamma J2.
[[nodiscard]] OperatorMatrix effective_interaction(const DerivedParams& d, const FockBasis& basis);

}  // namespace brwa
