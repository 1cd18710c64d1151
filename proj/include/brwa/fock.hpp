#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace brwa {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Operator on the truncated two-mode Fock space. Row-major so that
/// interior restrictions can walk rows directly.
using OperatorMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// Amplitudes in FockBasis ordering.
using StateVector = Eigen::VectorXcd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when a computation would push amplitude against the Fock cutoff.
class TruncationGuardError : public Error {
 public:
  using Error::Error;
};

enum class Mode { a, b };

/// Number basis {|n_a, n_b>} with n_a, n_b in [0, N). Joint index is n_a*N + n_b.
class FockBasis {
 public:
  explicit FockBasis(int cutoff);

  [[nodiscard]] int cutoff() const { return cutoff_; }
  [[nodiscard]] Index dim() const { return Index{cutoff_} * cutoff_; }

  [[nodiscard]] Index index(int n_a, int n_b) const;
  [[nodiscard]] int occupation_a(Index i) const { return static_cast<int>(i / cutoff_); }
  [[nodiscard]] int occupation_b(Index i) const { return static_cast<int>(i % cutoff_); }
  [[nodiscard]] int occupation(Index i, Mode m) const {
    return m == Mode::a ? occupation_a(i) : occupation_b(i);
  }
  [[nodiscard]] int total(Index i) const { return occupation_a(i) + occupation_b(i); }

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  int cutoff_;
};

/// Restriction to states with n_a + n_b <= M. Operator identities that the
/// cutoff breaks on the top rung are only compared inside this subspace.
class InteriorProjector {
 public:
  InteriorProjector(const FockBasis& basis, int interior_cutoff);

  /// M = N / 2.
  static InteriorProjector half(const FockBasis& basis);

  [[nodiscard]] int interior_cutoff() const { return interior_cutoff_; }
  [[nodiscard]] const FockBasis& basis() const { return basis_; }
  [[nodiscard]] bool contains(Index i) const { return basis_.total(i) <= interior_cutoff_; }

  [[nodiscard]] OperatorMatrix matrix() const;

  /// max |(P X P)_ij|.
  [[nodiscard]] double max_norm(const OperatorMatrix& x) const;

 private:
  FockBasis basis_;
  int interior_cutoff_;
};

/// Largest absolute entry.
[[nodiscard]] double max_norm(const OperatorMatrix& x);

/// max |X - X^dagger|.
[[nodiscard]] double hermiticity_defect(const OperatorMatrix& x);

[[nodiscard]] OperatorMatrix identity(const FockBasis& basis);

/// Drops stored entries with |x| == 0.
[[nodiscard]] OperatorMatrix pruned(OperatorMatrix x);

}  // namespace brwa
