#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "brwa/algebra.hpp"
#include "brwa/model.hpp"
#include "brwa/oracle.hpp"

using namespace brwa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ModeParams kReference{1.1, 0.9, 0.1};

double interior_residual(const OperatorMatrix& x, const OperatorMatrix& y, const FockBasis& basis) {
  return InteriorProjector::half(basis).max_norm(OperatorMatrix(x - y));
}

}  // namespace

TEST_CASE("derived scalars at the reference point", "[model]") {
  const DerivedParams d = derive_params(kReference);
  CHECK_THAT(d.omega_plus, WithinAbs(2.0, 1e-15));
  CHECK_THAT(d.omega_minus, WithinAbs(0.2, 1e-15));
  CHECK_THAT(d.A, WithinAbs(0.282842712474619, 1e-14));
  CHECK_THAT(d.B, WithinAbs(0.564269439186635, 1e-14));
  CHECK_THAT(d.Gamma, WithinAbs(0.0707106781186548, 1e-15));
  CHECK_THAT(d.theta, WithinAbs(std::numbers::pi / 4, 1e-14));
  CHECK_THAT(d.alpha, WithinAbs(-0.0708288840698644, 1e-14));
  CHECK_THAT(d.E, WithinAbs(d.A / 2, 0.0));
  CHECK_THAT(d.calE, WithinAbs(d.B / (2 * d.A), 0.0));
  CHECK_THAT(d.omega_plus * d.A * d.A / d.B, WithinAbs(0.283552482003334, 1e-13));
}

TEST_CASE("derived scalars satisfy their identities", "[model][property]") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> freq(0.2, 3.0);
  std::uniform_real_distribution<double> coupling(0.0, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    const ModeParams p{freq(rng), freq(rng), coupling(rng)};
    DerivedParams d;
    try {
      d = derive_params(p);
    } catch (const DegenerateParameters&) {
      continue;
    }
    CHECK(d.A >= std::abs(d.omega_minus) - 1e-15);
    CHECK(d.A >= 2 * p.g - 1e-15);
    CHECK_THAT(std::sin(d.theta), WithinAbs(2 * p.g / d.A, 1e-12));
    CHECK_THAT(std::cos(d.theta), WithinAbs(d.omega_minus / d.A, 1e-12));
    CHECK_THAT(std::sinh(d.alpha), WithinAbs(-4 * p.g * p.g / d.B, 1e-12));
    CHECK_THAT(std::cosh(d.alpha), WithinAbs(d.omega_plus * d.A / d.B, 1e-12));
  }
}

TEST_CASE("decoupled and resonant limits", "[model]") {
  const DerivedParams free = derive_params({1.3, 0.7, 0.0});
  CHECK(free.theta == 0.0);
  CHECK(free.alpha == 0.0);
  CHECK(free.Gamma == 0.0);
  CHECK_THAT(free.A, WithinAbs(0.6, 1e-15));

  const DerivedParams resonant = derive_params({1.0, 1.0, 0.1});
  CHECK_THAT(resonant.theta, WithinAbs(std::numbers::pi / 2, 1e-15));
  CHECK(resonant.Gamma == 0.0);
}

TEST_CASE("invalid parameters are rejected", "[model]") {
  CHECK_THROWS_AS(derive_params({0.0, 1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(derive_params({1.0, -1.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(derive_params({1.0, 1.0, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(derive_params({1.0, 1.0, std::nan("")}), std::invalid_argument);
  // omega_+ A = 4 g^2 makes B vanish.
  CHECK_THROWS_AS(derive_params({0.5, 0.5, 0.5}), DegenerateParameters);
}

TEST_CASE("Hamiltonians and the vacuum", "[model]") {
  const FockBasis basis(10);
  const Hamiltonians h = build_hamiltonians(kReference, basis);
  const StateVector vac = vacuum(basis);
  CHECK((h.free * vac).norm() == 0.0);
  CHECK((h.jaynes_cummings * vac).norm() == 0.0);
  CHECK_THAT((h.counter_rotating * vac).norm(), WithinAbs(0.1, 1e-15));
  for (const auto* m : {&h.free, &h.jaynes_cummings, &h.counter_rotating, &h.total}) {
    CHECK(hermiticity_defect(*m) <= 1e-12);
  }
  const OperatorMatrix j2 = build_generator(basis, Generator::J2);
  const OperatorMatrix i2 = build_generator(basis, Generator::I2);
  CHECK(max_norm(OperatorMatrix(h.counter_rotating + 0.2 * j2)) < 1e-15);
  CHECK(max_norm(OperatorMatrix(h.jaynes_cummings + 0.2 * i2)) < 1e-15);
  const Index one = basis.index(1, 0);
  CHECK_THAT(h.free.coeff(one, one).real(), WithinAbs(1.1, 1e-15));
}

TEST_CASE("generator form equals the direct Hamiltonian", "[model][property]") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> freq(0.2, 3.0);
  std::uniform_real_distribution<double> coupling(0.0, 0.3);
  const FockBasis basis(9);
  int checked = 0;
  while (checked < 20) {
    const ModeParams p{freq(rng), freq(rng), coupling(rng)};
    DerivedParams d;
    try {
      d = derive_params(p);
    } catch (const DegenerateParameters&) {
      continue;
    }
    const Hamiltonians h = build_hamiltonians(p, basis);
    CHECK(max_norm(OperatorMatrix(hamiltonian_su_form(d, basis) - h.total)) <= 1e-12);
    ++checked;
  }
}

TEST_CASE("theta rotation matches its closed form", "[model]") {
  const DerivedParams d = derive_params(kReference);
  const FockBasis basis(32);
  const OperatorMatrix h = build_hamiltonians(kReference, basis).total;
  const OperatorMatrix rotated = rotate_theta(h, d.theta, basis);
  CHECK(interior_residual(rotated, theta_frame_closed_form(d, basis), basis) <= 1e-9);
  CHECK(max_norm(OperatorMatrix(rotate_theta(h, 0.0, basis) - h)) <= 1e-11);
}

TEST_CASE("theta rotation leaves the vacuum alone", "[model]") {
  const FockBasis basis(8);
  const OperatorMatrix vac_proj = [&] {
    OperatorMatrix p(basis.dim(), basis.dim());
    p.insert(0, 0) = 1.0;
    return p;
  }();
  const OperatorMatrix rotated = rotate_theta(vac_proj, 0.9, basis);
  CHECK(max_norm(OperatorMatrix(rotated - vac_proj)) <= 1e-14);
}

TEST_CASE("alpha rotation matches its closed form", "[model]") {
  const DerivedParams d = derive_params(kReference);
  const FockBasis basis(32);
  const OperatorMatrix h = build_hamiltonians(kReference, basis).total;
  const OperatorMatrix h_theta = rotate_theta(h, d.theta, basis);
  const OperatorMatrix h_alpha = rotate_alpha(h_theta, d.alpha, basis);
  CHECK(interior_residual(h_alpha, squeezed_frame_closed_form(d, basis), basis) <= 1e-8);
  CHECK(max_norm(OperatorMatrix(rotate_alpha(h_theta, 0.0, basis) - h_theta)) <= 1e-11);
}

TEST_CASE("squeeze magnitude guard", "[model]") {
  const FockBasis basis(32);
  CHECK_NOTHROW(check_squeeze_magnitude(0.1, basis));
  CHECK_THROWS_AS(check_squeeze_magnitude(0.5, basis), TruncationGuardError);
  CHECK_THROWS_AS(rotate_alpha(identity(basis), -0.5, basis), TruncationGuardError);
}

TEST_CASE("effective interaction", "[model]") {
  const DerivedParams d = derive_params(kReference);
  const FockBasis basis(10);
  const OperatorMatrix h = effective_interaction(d, basis);
  const StateVector out = h * vacuum(basis);
  const Complex c = out(basis.index(1, 1));
  CHECK_THAT(c.real(), WithinAbs(0.0, 1e-15));
  CHECK_THAT(c.imag(), WithinAbs(d.Gamma, 1e-15));
  CHECK_THAT(out.norm(), WithinAbs(d.Gamma, 1e-15));

  const OperatorMatrix i3 = build_generator(basis, Generator::I3);
  const OperatorMatrix j2 = build_generator(basis, Generator::J2);
  CHECK(InteriorProjector::half(basis).max_norm(commutator(i3, j2)) <= 1e-14);

  const DerivedParams resonant = derive_params({1.0, 1.0, 0.1});
  CHECK((effective_interaction(resonant, basis) * vacuum(basis)).norm() == 0.0);
}

TEST_CASE("interaction Hamiltonian differs from the squeezed frame by the free part", "[model]") {
  const DerivedParams d = derive_params(kReference);
  const FockBasis basis(10);
  const OperatorMatrix j3 = build_generator(basis, Generator::J3);
  const OperatorMatrix rest = OperatorMatrix(squeezed_frame_closed_form(d, basis) -
                                             interaction_hamiltonian(d, basis));
  // (B/A) J3 = calE (a'a + b'b + 1).
  const OperatorMatrix expected = OperatorMatrix(
      (d.B / d.A) * j3 - (d.omega_plus / 2) * identity(basis));
  CHECK(max_norm(OperatorMatrix(rest - expected)) <= 1e-14);
}
