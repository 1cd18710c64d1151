#pragma once

#include <complex>
#include <string>
#include <vector>

#include "brwa/evolution.hpp"
#include "brwa/fock.hpp"
#include "brwa/model.hpp"

namespace brwa {

/// Refuses squeezes whose amplitude ratio at half the cutoff,
/// tanh(|Gamma t|)^{N/2}, exceeds max_edge_amplitude.
struct SqueezeGuard {
  double max_edge_amplitude = 1e-10;

  /// A guard that admits everything; results may then carry cutoff reflections.
  [[nodiscard]] static SqueezeGuard disabled();

  [[nodiscard]] static double edge_amplitude(double theta, const FockBasis& basis);
  [[nodiscard]] bool admits(double theta, const FockBasis& basis) const;

  /// Throws TruncationGuardError naming the smallest admissible cutoff.
  void check(double theta, const FockBasis& basis) const;
};

[[nodiscard]] StateVector vacuum(const FockBasis& basis);
[[nodiscard]] StateVector number_state(const FockBasis& basis, int n_a, int n_b);

/// exp(i t 2 Gamma J2)|0,0>. The vacuum's component of J2 is the ladder
/// {|n,n>}, so only that N x N block is diagonalised, once per instance.
class VacuumSqueezer {
 public:
  explicit VacuumSqueezer(const FockBasis& basis);

  [[nodiscard]] const FockBasis& basis() const { return basis_; }
  [[nodiscard]] StateVector state(double Gamma, double t, const SqueezeGuard& guard = {}) const;

 private:
  FockBasis basis_;
  EvolutionPlan ladder_;
};

[[nodiscard]] StateVector squeeze_vacuum(double Gamma, double t, const FockBasis& basis,
                                         const SqueezeGuard& guard = {});

/// Same state from a dense eigendecomposition of J2 on the full space.
/// Cross-check only; cost grows as N^6.
[[nodiscard]] StateVector squeeze_vacuum_dense(double Gamma, double t, const FockBasis& basis,
                                               const SqueezeGuard& guard = {});

/// || squeeze_vacuum - (1/cosh) exp(tanh J+)|0> ||, the exponential summed
/// as a power series on |0>.
[[nodiscard]] double normal_form_residual(double Gamma, double t, const FockBasis& basis,
                                          const SqueezeGuard& guard = {});

[[nodiscard]] double number_expectation(const StateVector& psi, const FockBasis& basis, Mode mode);

/// Eigenvalues (descending) of the state left after tracing out `traced`.
[[nodiscard]] Eigen::VectorXd reduced_spectrum(const StateVector& psi, const FockBasis& basis,
                                               Mode traced);

/// -sum lambda ln lambda over reduced_spectrum.
[[nodiscard]] double reduced_entropy(const StateVector& psi, const FockBasis& basis, Mode traced);

struct AnnihilatorResidual {
  double a = 0.0;  // ||(a cosh - b' sinh) psi||
  double b = 0.0;  // ||(-a' sinh + b cosh) psi||
};

[[nodiscard]] AnnihilatorResidual annihilator_residual(const StateVector& psi, double theta,
                                                       const FockBasis& basis);

/// S = -{n ln sinh^2(Gamma t) - (n+1) ln cosh^2(Gamma t)} for one mode,
/// diagonal in the number basis. Throws std::invalid_argument unless
/// t > 0 and Gamma != 0.
[[nodiscard]] OperatorMatrix entropy_operator(double Gamma, double t, const FockBasis& basis,
                                              Mode mode);

/// || exp(-S/2) sum_{n<N} |n,n> - squeeze_vacuum ||. Needs Gamma t > 0.
[[nodiscard]] double entropy_form_residual(double Gamma, double t, const FockBasis& basis,
                                           Mode mode = Mode::a, const SqueezeGuard& guard = {});

/// || (psi(t+dt) - psi(t-dt)) / 2dt + (1/2)(dS_a/dt) psi(t) || for the
/// evolved vacuum. Needs t > 0 and 0 < dt < t.
[[nodiscard]] double time_translation_residual(double Gamma, double t, double dt,
                                               const FockBasis& basis,
                                               const SqueezeGuard& guard = {});

struct ChainReport {
  int cutoff = 0;
  int interior_cutoff = 0;
  double t = 0.0;
  double frame_residual = 0.0;      // D exp(it2Gamma J2') D' vs exp(it2Gamma J2) on the interior
  double vacuum_phase_residual = 0.0;  // exp(+-it calE (J3-1/2))|0> vs |0>
  double interaction_residual = 0.0;   // <0(alpha)|exp(-it H_ip)|0(alpha)> vs <0|0(t)>
  std::complex<double> interaction_amplitude;
  std::complex<double> effective_amplitude;  // <0|exp(-it (A I3 - 2 Gamma J2))|0>
  std::complex<double> squeeze_amplitude;    // <0|exp(it 2 Gamma J2)|0>
  double final_scalar = 0.0;
  double expected = 0.0;  // 1/cosh(Gamma t)
  double final_residual = 0.0;
  double identity_tolerance = 1e-8;
  double scalar_tolerance = 1e-9;

  [[nodiscard]] double worst_identity() const;
  [[nodiscard]] bool passed() const;
};

/// Walks the chain from the interaction-frame vacuum amplitude down to
/// <0|0(t)> and records the residual of every step.
[[nodiscard]] ChainReport interaction_chain_check(const ModeParams& params, double t,
                                                  const FockBasis& basis,
                                                  const SqueezeGuard& guard = {});

enum class TruncationVerdict { ok, warn, fail };

[[nodiscard]] std::string verdict_name(TruncationVerdict v);

struct TruncationDiagnostics {
  double tail_mass = 0.0;  // probability in n_a + n_b > N - 4
  TruncationVerdict verdict = TruncationVerdict::ok;
};

/// ok for tail <= 1e-10, warn for tail <= 1e-6, fail above.
[[nodiscard]] TruncationDiagnostics truncation_tail(const StateVector& psi, const FockBasis& basis);

}  // namespace brwa
