#include "brwa/evolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

namespace brwa {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(Index x, Index y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<Index> parent_;
};

}  // namespace

Eigen::MatrixXcd EvolutionPlan::Block::propagator(double t) const {
  const Eigen::VectorXcd phases =
      (eigenvalues.cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
  return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

EvolutionPlan::EvolutionPlan(const OperatorMatrix& generator, Decomposition mode)
    : EvolutionPlan(generator, mode, nullptr) {}

EvolutionPlan EvolutionPlan::for_support(const OperatorMatrix& generator, const StateVector& psi) {
  if (psi.size() != generator.rows()) {
    throw DimensionMismatch("support state does not match generator dimension");
  }
  return {generator, Decomposition::blocked, &psi};
}

void EvolutionPlan::require_complete(const char* what) const {
  if (!complete_) {
    throw std::logic_error(std::string(what) + " needs a plan covering the whole space");
  }
}

EvolutionPlan::EvolutionPlan(const OperatorMatrix& generator, Decomposition mode,
                             const StateVector* support)
    : dim_(generator.rows()), generator_(pruned(generator)) {
  if (generator.rows() != generator.cols()) {
    throw DimensionMismatch("evolution generator must be square");
  }
  const double scale = std::max(1.0, max_norm(generator_));
  if (hermiticity_defect(generator_) > 1e-12 * scale) {
    throw std::invalid_argument("evolution generator is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(generator_)) + ")");
  }

  std::vector<Index> root(static_cast<std::size_t>(dim_), 0);
  if (mode == Decomposition::blocked) {
    DisjointSets sets(dim_);
    for (Index r = 0; r < generator_.outerSize(); ++r) {
      for (OperatorMatrix::InnerIterator it(generator_, r); it; ++it) sets.unite(r, it.col());
    }
    for (Index i = 0; i < dim_; ++i) root[i] = sets.find(i);
  }

  std::vector<bool> wanted(static_cast<std::size_t>(dim_), support == nullptr);
  if (support != nullptr) {
    for (Index i = 0; i < dim_; ++i) {
      if ((*support)(i) != Complex{0.0, 0.0}) wanted[root[i]] = true;
    }
    complete_ = false;
  }

  block_of_.assign(static_cast<std::size_t>(dim_), -1);
  local_index_.assign(static_cast<std::size_t>(dim_), 0);
  std::map<Index, int> block_id;
  for (Index i = 0; i < dim_; ++i) {
    if (!wanted[root[i]]) continue;
    auto [it, inserted] = block_id.try_emplace(root[i], static_cast<int>(blocks_.size()));
    if (inserted) blocks_.emplace_back();
    Block& block = blocks_[it->second];
    block_of_[i] = it->second;
    local_index_[i] = static_cast<Index>(block.members.size());
    block.members.push_back(i);
  }

  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Block& block = blocks_[b];
    const auto n = static_cast<Index>(block.members.size());
    Eigen::MatrixXcd local = Eigen::MatrixXcd::Zero(n, n);
    for (const Index row : block.members) {
      for (OperatorMatrix::InnerIterator it(generator_, row); it; ++it) {
        local(local_index_[row], local_index_[it.col()]) = it.value();
      }
    }
    if (n == 1) {
      block.eigenvalues = Eigen::VectorXd::Constant(1, local(0, 0).real());
      block.eigenvectors = Eigen::MatrixXcd::Identity(1, 1);
      continue;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(local);
    if (solver.info() != Eigen::Success) {
      throw Error("Hermitian eigendecomposition failed for a block of size " + std::to_string(n));
    }
    block.eigenvalues = solver.eigenvalues();
    block.eigenvectors = solver.eigenvectors();
  }
}

Index EvolutionPlan::largest_block() const {
  Index largest = 0;
  for (const auto& b : blocks_) largest = std::max(largest, static_cast<Index>(b.members.size()));
  return largest;
}

StateVector EvolutionPlan::apply(const StateVector& psi, double t) const {
  if (psi.size() != dim_) {
    throw DimensionMismatch("state of size " + std::to_string(psi.size()) +
                            " does not match generator dimension " + std::to_string(dim_));
  }
  if (!complete_) {
    for (Index i = 0; i < dim_; ++i) {
      if (block_of_[i] < 0 && psi(i) != Complex{0.0, 0.0}) {
        throw std::logic_error("state has support outside the components of a partial plan");
      }
    }
  }
  if (t == 0.0) return psi;
  StateVector out = StateVector::Zero(dim_);
  for (const auto& block : blocks_) {
    const auto n = static_cast<Index>(block.members.size());
    Eigen::VectorXcd local(n);
    bool any = false;
    for (Index k = 0; k < n; ++k) {
      local(k) = psi(block.members[k]);
      any = any || local(k) != Complex{0.0, 0.0};
    }
    if (!any) continue;
    const Eigen::VectorXcd phases =
        (block.eigenvalues.cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
    const Eigen::VectorXcd coeffs = block.eigenvectors.adjoint() * local;
    const Eigen::VectorXcd result = block.eigenvectors * phases.cwiseProduct(coeffs);
    for (Index k = 0; k < n; ++k) out(block.members[k]) = result(k);
  }
  return out;
}

OperatorMatrix EvolutionPlan::unitary(double t) const {
  require_complete("unitary()");
  std::vector<Eigen::Triplet<Complex>> entries;
  for (const auto& block : blocks_) {
    const Eigen::MatrixXcd u = block.propagator(t);
    const auto n = static_cast<Index>(block.members.size());
    for (Index r = 0; r < n; ++r) {
      for (Index c = 0; c < n; ++c) {
        if (u(r, c) != Complex{0.0, 0.0}) entries.emplace_back(block.members[r], block.members[c], u(r, c));
      }
    }
  }
  OperatorMatrix out(dim_, dim_);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

OperatorMatrix EvolutionPlan::conjugate(const OperatorMatrix& x, double t) const {
  require_complete("conjugate()");
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw DimensionMismatch("operator does not match generator dimension");
  }
  // Collect X's entries per (row block, column block) pair.
  std::map<std::pair<int, int>, Eigen::MatrixXcd> pieces;
  for (Index r = 0; r < x.outerSize(); ++r) {
    const int br = block_of_[r];
    for (OperatorMatrix::InnerIterator it(x, r); it; ++it) {
      const int bc = block_of_[it.col()];
      auto [pos, inserted] = pieces.try_emplace({br, bc});
      if (inserted) {
        pos->second = Eigen::MatrixXcd::Zero(static_cast<Index>(blocks_[br].members.size()),
                                             static_cast<Index>(blocks_[bc].members.size()));
      }
      pos->second(local_index_[r], local_index_[it.col()]) += it.value();
    }
  }

  std::vector<std::optional<Eigen::MatrixXcd>> propagators(blocks_.size());
  const auto propagator = [&](int b) -> const Eigen::MatrixXcd& {
    if (!propagators[b]) propagators[b] = blocks_[b].propagator(t);
    return *propagators[b];
  };

  std::vector<Eigen::Triplet<Complex>> entries;
  for (auto& [key, piece] : pieces) {
    const auto [br, bc] = key;
    const Eigen::MatrixXcd rotated = propagator(br) * piece * propagator(bc).adjoint();
    piece.resize(0, 0);
    const auto& rows = blocks_[br].members;
    const auto& cols = blocks_[bc].members;
    for (Index i = 0; i < rotated.rows(); ++i) {
      for (Index j = 0; j < rotated.cols(); ++j) {
        if (rotated(i, j) != Complex{0.0, 0.0}) entries.emplace_back(rows[i], cols[j], rotated(i, j));
      }
    }
  }
  OperatorMatrix out(dim_, dim_);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

double EvolutionPlan::reconstruction_residual() const {
  double worst = 0.0;
  for (const auto& block : blocks_) {
    Eigen::MatrixXcd local = block.eigenvectors * block.eigenvalues.cast<Complex>().asDiagonal() *
                             block.eigenvectors.adjoint();
    for (const Index row : block.members) {
      for (OperatorMatrix::InnerIterator it(generator_, row); it; ++it) {
        local(local_index_[row], local_index_[it.col()]) -= it.value();
      }
    }
    worst = std::max(worst, local.cwiseAbs().maxCoeff());
  }
  return worst / std::max(1.0, max_norm(generator_));
}

Eigen::VectorXd EvolutionPlan::eigenvalues() const {
  Index total = 0;
  for (const auto& block : blocks_) total += block.eigenvalues.size();
  Eigen::VectorXd all(total);
  Index k = 0;
  for (const auto& block : blocks_) {
    all.segment(k, block.eigenvalues.size()) = block.eigenvalues;
    k += block.eigenvalues.size();
  }
  return all;
}

StateVector evolve(const EvolutionPlan& plan, const StateVector& psi, double t) {
  return plan.apply(psi, t);
}

}  // namespace brwa
