#pragma once

#include <cstddef>
#include <vector>

#include "brwa/fock.hpp"

namespace brwa {

/// Spectral decomposition of a Hermitian generator G, used to apply
/// exp(-i t G) exactly on the truncated space.
///
/// With Decomposition::blocked the basis is split into the connected
/// components of G's sparsity graph and each component is diagonalised on
/// its own; the result is the same unitary as the dense decomposition.
/// Decomposition::dense diagonalises the whole matrix at once and exists as
/// an independent cross-check at small dimension.
class EvolutionPlan {
 public:
  enum class Decomposition { blocked, dense };

  explicit EvolutionPlan(const OperatorMatrix& generator,
                         Decomposition mode = Decomposition::blocked);

  /// Blocked plan that only diagonalises the components touching the
  /// support of `psi`. apply() accepts states inside those components;
  /// unitary() and conjugate() are unavailable on a partial plan.
  [[nodiscard]] static EvolutionPlan for_support(const OperatorMatrix& generator,
                                                 const StateVector& psi);

  [[nodiscard]] bool complete() const { return complete_; }

  [[nodiscard]] Index dim() const { return dim_; }
  [[nodiscard]] std::size_t block_count() const { return blocks_.size(); }
  [[nodiscard]] Index largest_block() const;

  /// exp(-i t G) psi.
  [[nodiscard]] StateVector apply(const StateVector& psi, double t) const;

  /// exp(-i t G) as a (block-sparse) matrix.
  [[nodiscard]] OperatorMatrix unitary(double t) const;

  /// U X U^dagger with U = exp(-i t G).
  [[nodiscard]] OperatorMatrix conjugate(const OperatorMatrix& x, double t) const;

  /// max |G - V diag(lambda) V^dagger| / max(1, max |G|).
  [[nodiscard]] double reconstruction_residual() const;

  /// All eigenvalues, block by block.
  [[nodiscard]] Eigen::VectorXd eigenvalues() const;

 private:
  struct Block {
    std::vector<Index> members;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    [[nodiscard]] Eigen::MatrixXcd propagator(double t) const;
  };

  EvolutionPlan(const OperatorMatrix& generator, Decomposition mode, const StateVector* support);

  void require_complete(const char* what) const;

  Index dim_ = 0;
  bool complete_ = true;
  OperatorMatrix generator_;
  std::vector<Block> blocks_;
  std::vector<int> block_of_;
  std::vector<Index> local_index_;
};

/// exp(-i t G) psi; throws DimensionMismatch on size mismatch.
[[nodiscard]] StateVector evolve(const EvolutionPlan& plan, const StateVector& psi, double t);

}  // namespace brwa
