#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "brwa/fock.hpp"

namespace brwa {

struct Ladder {
  OperatorMatrix annihilator;
  OperatorMatrix creator;
};

/// a or b on the joint space: <n-1|c|n> = sqrt(n) on the selected mode,
/// identity on the other.
[[nodiscard]] Ladder build_ladder(const FockBasis& basis, Mode mode);

/// SU(1,1) (J), SU(2) (I) and squeeze-algebra (Kt, K) generators.
///
///   J+ = a'b',  J- = ab,  J1 = (J+ + J-)/2,  J2 = -i(J+ - J-)/2,
///   J3 = (a'a + b'b + 1)/2
///   I+ = a'b,   I- = b'a, I1, I2 likewise,   I3 = (a'a - b'b)/2
///   Kt1 = [(a^2 + a'^2) + (b^2 + b'^2)]/4,  Kt2 = i[(a^2 - a'^2) - (b^2 - b'^2)]/4
///   K1  = [(a^2 + a'^2) - (b^2 + b'^2)]/4,  K2  = i[(a^2 - a'^2) + (b^2 - b'^2)]/4
///   K3 = Kt3 = I3
///
/// K2 is the two-mode squeezing generator.
enum class Generator { J1, J2, J3, Jplus, Jminus, I1, I2, I3, Iplus, Iminus, Kt1, Kt2, K1, K2, K3 };

/// Accepts "J1".."K3" with "J+", "J-", "I+", "I-" for the raising/lowering
/// forms ("J−" with a Unicode minus is accepted too).
[[nodiscard]] Generator generator_from_name(std::string_view name);
[[nodiscard]] std::string_view generator_name(Generator g);
[[nodiscard]] bool is_hermitian_generator(Generator g);

[[nodiscard]] OperatorMatrix build_generator(const FockBasis& basis, Generator g);

/// AB - BA.
[[nodiscard]] OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

struct RelationResidual {
  std::string relation;
  std::string source;  // relation family, e.g. "su11"
  double residual = 0.0;
};

struct AlgebraReport {
  int cutoff = 0;
  int interior_cutoff = 0;
  double tolerance = 0.0;
  std::vector<RelationResidual> relations;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] double worst() const;
};

/// Evaluates every commutator/Casimir relation of the J, I, Kt, K algebras
/// (plus the mixed relations used for the frame rotations) as
/// max |P([X,Y] - Z)P| on the interior. Requires M <= N - 3 so that two-quantum
/// intermediate states stay inside the cutoff.
[[nodiscard]] AlgebraReport verify_algebra(const FockBasis& basis,
                                           const InteriorProjector& interior, double tolerance);

}  // namespace brwa
