#include "brwa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "brwa/algebra.hpp"
#include "brwa/analytic.hpp"

namespace brwa {
namespace {

void require_state(const StateVector& psi, const FockBasis& basis) {
  if (psi.size() != basis.dim()) {
    throw DimensionMismatch("state of size " + std::to_string(psi.size()) +
                            " does not match basis dimension " + std::to_string(basis.dim()));
  }
}

// psi reshaped as M(n_a, n_b).
Eigen::MatrixXcd amplitude_grid(const StateVector& psi, const FockBasis& basis) {
  const int n = basis.cutoff();
  Eigen::MatrixXcd m(n, n);
  for (int na = 0; na < n; ++na) {
    for (int nb = 0; nb < n; ++nb) m(na, nb) = psi(basis.index(na, nb));
  }
  return m;
}

// -(1/2) dS_a/dt on |n,n>: Gamma (n coth(Gamma t) - (n+1) tanh(Gamma t)).
double time_derivative_coefficient(double Gamma, double t, int n) {
  const double theta = Gamma * t;
  const double coth_term = theta == 0.0 ? 1.0 / t : Gamma / std::tanh(theta);
  return n * coth_term - (n + 1) * Gamma * std::tanh(theta);
}

}  // namespace

SqueezeGuard SqueezeGuard::disabled() { return {std::numeric_limits<double>::infinity()}; }

double SqueezeGuard::edge_amplitude(double theta, const FockBasis& basis) {
  if (theta == 0.0) return 0.0;
  return std::exp(0.5 * basis.cutoff() * std::log(std::tanh(std::abs(theta))));
}

bool SqueezeGuard::admits(double theta, const FockBasis& basis) const {
  return edge_amplitude(theta, basis) <= max_edge_amplitude;
}

void SqueezeGuard::check(double theta, const FockBasis& basis) const {
  if (admits(theta, basis)) return;
  std::ostringstream msg;
  msg << "squeeze Gamma*t=" << theta << " too large for cutoff N=" << basis.cutoff()
      << ": tanh^(N/2) = " << edge_amplitude(theta, basis) << " > " << max_edge_amplitude;
  const double needed =
      2.0 * std::ceil(std::log(max_edge_amplitude) / std::log(std::tanh(std::abs(theta))));
  if (std::isfinite(needed)) msg << "; use N >= " << static_cast<long long>(needed);
  throw TruncationGuardError(msg.str());
}

StateVector vacuum(const FockBasis& basis) { return number_state(basis, 0, 0); }

StateVector number_state(const FockBasis& basis, int n_a, int n_b) {
  StateVector psi = StateVector::Zero(basis.dim());
  psi(basis.index(n_a, n_b)) = 1.0;
  return psi;
}

namespace {

// J2 restricted to the ladder |n,n>.
OperatorMatrix ladder_generator(const FockBasis& basis) {
  const int n = basis.cutoff();
  const OperatorMatrix j2 = build_generator(basis, Generator::J2);
  std::vector<Eigen::Triplet<Complex>> entries;
  for (int k = 0; k < n; ++k) {
    for (OperatorMatrix::InnerIterator it(j2, basis.index(k, k)); it; ++it) {
      const int na = basis.occupation_a(it.col());
      if (na == basis.occupation_b(it.col())) entries.emplace_back(k, na, it.value());
    }
  }
  OperatorMatrix ladder(n, n);
  ladder.setFromTriplets(entries.begin(), entries.end());
  return ladder;
}

}  // namespace

VacuumSqueezer::VacuumSqueezer(const FockBasis& basis)
    : basis_(basis), ladder_(ladder_generator(basis)) {}

StateVector VacuumSqueezer::state(double Gamma, double t, const SqueezeGuard& guard) const {
  guard.check(Gamma * t, basis_);
  const int n = basis_.cutoff();
  StateVector start = StateVector::Zero(n);
  start(0) = 1.0;
  const StateVector reduced = ladder_.apply(start, -2.0 * Gamma * t);
  StateVector psi = StateVector::Zero(basis_.dim());
  for (int k = 0; k < n; ++k) psi(basis_.index(k, k)) = reduced(k);
  return psi;
}

StateVector squeeze_vacuum(double Gamma, double t, const FockBasis& basis,
                           const SqueezeGuard& guard) {
  guard.check(Gamma * t, basis);
  return VacuumSqueezer(basis).state(Gamma, t, guard);
}

StateVector squeeze_vacuum_dense(double Gamma, double t, const FockBasis& basis,
                                 const SqueezeGuard& guard) {
  guard.check(Gamma * t, basis);
  const EvolutionPlan plan(build_generator(basis, Generator::J2),
                           EvolutionPlan::Decomposition::dense);
  return plan.apply(vacuum(basis), -2.0 * Gamma * t);
}

double normal_form_residual(double Gamma, double t, const FockBasis& basis,
                            const SqueezeGuard& guard) {
  const StateVector psi = squeeze_vacuum(Gamma, t, basis, guard);
  const double theta = Gamma * t;
  const double ratio = std::tanh(theta);
  const OperatorMatrix jplus = build_generator(basis, Generator::Jplus);

  // sum_k (tanh J+)^k / k! |0>
  StateVector term = vacuum(basis);
  StateVector series = term;
  for (int k = 1; k < basis.cutoff(); ++k) {
    term = (ratio / k) * (jplus * term);
    series += term;
  }
  series *= std::exp(-log_cosh(theta));
  return (psi - series).norm();
}

double number_expectation(const StateVector& psi, const FockBasis& basis, Mode mode) {
  require_state(psi, basis);
  double total = 0.0;
  for (Index i = 0; i < psi.size(); ++i) total += basis.occupation(i, mode) * std::norm(psi(i));
  return total;
}

Eigen::VectorXd reduced_spectrum(const StateVector& psi, const FockBasis& basis, Mode traced) {
  require_state(psi, basis);
  const Eigen::MatrixXcd m = amplitude_grid(psi, basis);
  // rho_a = M M^dagger, rho_b = M^T conj(M)
  const Eigen::MatrixXcd rho =
      traced == Mode::b ? Eigen::MatrixXcd(m * m.adjoint()) : Eigen::MatrixXcd(m.transpose() * m.conjugate());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("reduced density matrix eigensolve failed");
  Eigen::VectorXd values = solver.eigenvalues().reverse();
  return values;
}

double reduced_entropy(const StateVector& psi, const FockBasis& basis, Mode traced) {
  const Eigen::VectorXd values = reduced_spectrum(psi, basis, traced);
  double s = 0.0;
  for (const double v : values) {
    if (v > 0.0) s -= v * std::log(v);
  }
  return std::max(s, 0.0);
}

AnnihilatorResidual annihilator_residual(const StateVector& psi, double theta,
                                         const FockBasis& basis) {
  require_state(psi, basis);
  const auto [a, ad] = build_ladder(basis, Mode::a);
  const auto [b, bd] = build_ladder(basis, Mode::b);
  const double c = std::cosh(theta);
  const double s = std::sinh(theta);
  const StateVector ra = c * (a * psi) - s * (bd * psi);
  const StateVector rb = -s * (ad * psi) + c * (b * psi);
  return {ra.norm(), rb.norm()};
}

OperatorMatrix entropy_operator(double Gamma, double t, const FockBasis& basis, Mode mode) {
  if (!(t > 0.0)) throw std::invalid_argument("entropy operator needs t > 0 (ln sinh^2 diverges)");
  if (Gamma == 0.0) throw std::invalid_argument("entropy operator needs Gamma != 0");
  const double theta = Gamma * t;
  const double ln_s2 = 2.0 * log_sinh(theta);
  const double ln_c2 = 2.0 * log_cosh(theta);
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(basis.dim()));
  for (Index i = 0; i < basis.dim(); ++i) {
    const int n = basis.occupation(i, mode);
    entries.emplace_back(i, i, -(n * ln_s2 - (n + 1) * ln_c2));
  }
  OperatorMatrix s(basis.dim(), basis.dim());
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

double entropy_form_residual(double Gamma, double t, const FockBasis& basis, Mode mode,
                             const SqueezeGuard& guard) {
  if (!(Gamma * t > 0.0)) throw std::invalid_argument("entropy form needs Gamma t > 0");
  const StateVector psi = squeeze_vacuum(Gamma, t, basis, guard);
  const OperatorMatrix s = entropy_operator(Gamma, t, basis, mode);
  StateVector built = StateVector::Zero(basis.dim());
  for (int n = 0; n < basis.cutoff(); ++n) {
    const Index i = basis.index(n, n);
    built(i) = std::exp(-0.5 * s.coeff(i, i).real());
  }
  return (built - psi).norm();
}

double time_translation_residual(double Gamma, double t, double dt, const FockBasis& basis,
                                 const SqueezeGuard& guard) {
  if (!(t > 0.0)) throw std::invalid_argument("time translation needs t > 0");
  if (!(dt > 0.0) || !(dt < t)) throw std::invalid_argument("time translation needs 0 < dt < t");
  const VacuumSqueezer squeezer(basis);
  const StateVector forward = squeezer.state(Gamma, t + dt, guard);
  const StateVector backward = squeezer.state(Gamma, t - dt, guard);
  const StateVector now = squeezer.state(Gamma, t, guard);

  StateVector generated = StateVector::Zero(basis.dim());
  for (int n = 0; n < basis.cutoff(); ++n) {
    const Index i = basis.index(n, n);
    generated(i) = time_derivative_coefficient(Gamma, t, n) * now(i);
  }
  const StateVector difference = (forward - backward) / (2.0 * dt);
  return (difference - generated).norm();
}

double ChainReport::worst_identity() const {
  return std::max({frame_residual, vacuum_phase_residual, interaction_residual});
}

bool ChainReport::passed() const {
  return worst_identity() <= identity_tolerance && final_residual <= scalar_tolerance;
}

ChainReport interaction_chain_check(const ModeParams& params, double t, const FockBasis& basis,
                                    const SqueezeGuard& guard) {
  if (!std::isfinite(t)) throw std::invalid_argument("chain check needs a finite t");
  const DerivedParams d = derive_params(params);
  check_squeeze_magnitude(d.alpha, basis);
  guard.check(d.Gamma * t, basis);

  const InteriorProjector interior = InteriorProjector::half(basis);
  ChainReport report;
  report.cutoff = basis.cutoff();
  report.interior_cutoff = interior.interior_cutoff();
  report.t = t;

  // D = exp(i t calE (J3 - 1/2)) is diagonal: phase t calE (n_a + n_b)/2.
  std::vector<Eigen::Triplet<Complex>> phases;
  for (Index i = 0; i < basis.dim(); ++i) {
    phases.emplace_back(i, i, std::polar(1.0, t * d.calE * 0.5 * basis.total(i)));
  }
  OperatorMatrix free_phase(basis.dim(), basis.dim());
  free_phase.setFromTriplets(phases.begin(), phases.end());
  const OperatorMatrix free_phase_inv = OperatorMatrix(free_phase.adjoint());

  const OperatorMatrix j2 = build_generator(basis, Generator::J2);
  const OperatorMatrix j2_frame = pruned(OperatorMatrix(free_phase_inv * j2 * free_phase));
  const double squeeze_time = -2.0 * d.Gamma * t;
  const OperatorMatrix lhs = pruned(OperatorMatrix(
      free_phase * EvolutionPlan(j2_frame).unitary(squeeze_time) * free_phase_inv));
  const OperatorMatrix rhs = EvolutionPlan(j2).unitary(squeeze_time);
  report.frame_residual = interior.max_norm(pruned(lhs - rhs));

  const StateVector vac = vacuum(basis);
  report.vacuum_phase_residual =
      std::max((free_phase * vac - vac).norm(), (free_phase_inv * vac - vac).norm());

  // |0(alpha)> = exp(i alpha K2)|0>
  const OperatorMatrix k2 = build_generator(basis, Generator::K2);
  const StateVector squeezed = EvolutionPlan::for_support(k2, vac).apply(vac, -d.alpha);
  const OperatorMatrix h_ip = interaction_hamiltonian(d, basis);
  const StateVector evolved = EvolutionPlan::for_support(h_ip, squeezed).apply(squeezed, t);
  report.interaction_amplitude = squeezed.dot(evolved);

  const OperatorMatrix h_eff = effective_interaction(d, basis);
  report.effective_amplitude = EvolutionPlan::for_support(h_eff, vac).apply(vac, t)(0);
  report.squeeze_amplitude = squeeze_vacuum(d.Gamma, t, basis, guard)(0);
  report.interaction_residual =
      std::max(std::abs(report.interaction_amplitude - report.squeeze_amplitude),
               std::abs(report.effective_amplitude - report.squeeze_amplitude));

  report.final_scalar = report.interaction_amplitude.real();
  report.expected = vacuum_overlap(SqueezeTrajectory(d.Gamma, std::abs(t)));
  report.final_residual = std::abs(report.interaction_amplitude - report.expected);
  return report;
}

std::string verdict_name(TruncationVerdict v) {
  switch (v) {
    case TruncationVerdict::ok:
      return "ok";
    case TruncationVerdict::warn:
      return "warn";
    case TruncationVerdict::fail:
      return "fail";
  }
  return "fail";
}

TruncationDiagnostics truncation_tail(const StateVector& psi, const FockBasis& basis) {
  require_state(psi, basis);
  const double norm2 = psi.squaredNorm();
  double tail = 0.0;
  for (Index i = 0; i < psi.size(); ++i) {
    if (basis.total(i) > basis.cutoff() - 4) tail += std::norm(psi(i));
  }
  TruncationDiagnostics out;
  out.tail_mass = norm2 > 0.0 ? std::clamp(tail / norm2, 0.0, 1.0) : 0.0;
  if (out.tail_mass > 1e-6) {
    out.verdict = TruncationVerdict::fail;
  } else if (out.tail_mass > 1e-10) {
    out.verdict = TruncationVerdict::warn;
  }
  return out;
}

}  // namespace brwa
