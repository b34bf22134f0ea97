#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qillum/fock.hpp"

namespace qillum::fock {

/// Relative threshold below which eigenvalues are treated as exact zeros.
inline constexpr double kEigenClampRelative = 1e-12;

/// Eigendecomposition of a Hermitian matrix that exploits exact sparsity.
///
/// The index set is split into connected components of the graph whose edges
/// are the exactly-nonzero off-diagonal entries; each component is an
/// invariant subspace and is diagonalized on its own. Fock-space operators
/// built from number-conserving maps split into many small blocks this way,
/// so a 625-dimensional two-mode operator costs a few dozen 25x25 solves.
class HermitianEigensystem {
 public:
  struct Block {
    std::vector<Eigen::Index> indices;  ///< rows of the full matrix, ascending
    RVector values;                     ///< ascending
    CMatrix vectors;                    ///< columns are eigenvectors over `indices`
    Eigen::Index offset = 0;            ///< position of values(0) in the global numbering
  };

  /// Throws NumericalError if max |m - m^dag| exceeds `hermitian_tol`.
  explicit HermitianEigensystem(const CMatrix& m, double hermitian_tol = 1e-8);

  Eigen::Index dim() const { return dim_; }
  std::span<const Block> blocks() const { return blocks_; }

  /// All eigenvalues in block order (global numbering used by overlap()).
  const RVector& values() const { return values_; }
  double max_value() const;
  double min_value() const;

  /// Eigenvalues with entries below kEigenClampRelative * max set to zero.
  RVector clamped_values() const;

  /// sum_i f(lambda_i) |v_i><v_i| over the (unclamped) eigenvalues.
  CMatrix reconstruct(const std::function<double(double)>& f) const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<Block> blocks_;
  RVector values_;
};

/// W(i, j) = |<u_i|v_j>|^2 in the global eigen-numbering of both systems.
RMatrix eigenvector_overlap(const HermitianEigensystem& u, const HermitianEigensystem& v);

}  // namespace qillum::fock
