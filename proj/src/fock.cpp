#include "brwa/fock.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace brwa {

FockBasis::FockBasis(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) {
    throw std::invalid_argument("Fock cutoff must be >= 2, got " + std::to_string(cutoff));
  }
}

Index FockBasis::index(int n_a, int n_b) const {
  if (n_a < 0 || n_b < 0 || n_a >= cutoff_ || n_b >= cutoff_) {
    throw std::out_of_range("occupation (" + std::to_string(n_a) + ", " + std::to_string(n_b) +
                            ") outside cutoff " + std::to_string(cutoff_));
  }
  return Index{n_a} * cutoff_ + n_b;
}

InteriorProjector::InteriorProjector(const FockBasis& basis, int interior_cutoff)
    : basis_(basis), interior_cutoff_(interior_cutoff) {
  if (interior_cutoff < 1 || interior_cutoff >= basis.cutoff()) {
    throw std::invalid_argument("interior cutoff must lie in [1, N), got M=" +
                                std::to_string(interior_cutoff) +
                                " with N=" + std::to_string(basis.cutoff()));
  }
}

InteriorProjector InteriorProjector::half(const FockBasis& basis) {
  return {basis, std::max(1, basis.cutoff() / 2)};
}

OperatorMatrix InteriorProjector::matrix() const {
  std::vector<Eigen::Triplet<Complex>> entries;
  for (Index i = 0; i < basis_.dim(); ++i) {
    if (contains(i)) entries.emplace_back(i, i, 1.0);
  }
  OperatorMatrix p(basis_.dim(), basis_.dim());
  p.setFromTriplets(entries.begin(), entries.end());
  return p;
}

double InteriorProjector::max_norm(const OperatorMatrix& x) const {
  if (x.rows() != basis_.dim() || x.cols() != basis_.dim()) {
    throw DimensionMismatch("operator dimension does not match interior projector basis");
  }
  double worst = 0.0;
  for (Index r = 0; r < x.outerSize(); ++r) {
    if (!contains(r)) continue;
    for (OperatorMatrix::InnerIterator it(x, r); it; ++it) {
      if (contains(it.col())) worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double max_norm(const OperatorMatrix& x) {
  double worst = 0.0;
  for (Index k = 0; k < x.outerSize(); ++k) {
    for (OperatorMatrix::InnerIterator it(x, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double hermiticity_defect(const OperatorMatrix& x) {
  const OperatorMatrix adj = x.adjoint();
  return max_norm(OperatorMatrix(x - adj));
}

OperatorMatrix identity(const FockBasis& basis) {
  OperatorMatrix id(basis.dim(), basis.dim());
  id.setIdentity();
  return id;
}

OperatorMatrix pruned(OperatorMatrix x) {
  x.prune([](Index, Index, const Complex& v) { return v != Complex{0.0, 0.0}; });
  return x;
}

}  // namespace brwa
