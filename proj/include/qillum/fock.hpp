#pragma once

// Dense linear algebra over truncated multi-mode Fock spaces.
//
// Multi-mode indices are mixed-radix with the leftmost mode most significant:
// for dims (d0, d1, d2) the occupation (n0, n1, n2) lives at
// (n0 * d1 + n1) * d2 + n2. Matrices are Eigen column-major.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace qillum {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

}  // namespace qillum

namespace qillum::fock {

/// Per-mode photon-number cutoffs; mode k has dimension cutoff(k) + 1.
class FockDims {
 public:
  FockDims() = default;
  explicit FockDims(std::vector<int> cutoffs);

  static FockDims uniform(std::size_t modes, int cutoff);

  std::size_t modes() const { return cutoffs_.size(); }
  int cutoff(std::size_t mode) const { return cutoffs_.at(mode); }
  std::size_t mode_dim(std::size_t mode) const { return static_cast<std::size_t>(cutoffs_.at(mode)) + 1; }
  std::size_t total() const { return total_; }
  const std::vector<int>& cutoffs() const { return cutoffs_; }

  /// Product of the dimensions of the modes after `mode`.
  std::size_t stride(std::size_t mode) const;

  std::size_t index(std::span<const int> occupation) const;
  std::vector<int> occupation(std::size_t index) const;

  FockDims concat(const FockDims& other) const;
  FockDims select(std::span<const std::size_t> modes) const;

  bool operator==(const FockDims&) const = default;

 private:
  std::vector<int> cutoffs_;
  std::size_t total_ = 0;
};

/// Pure state: amplitudes over the mixed-radix basis of `dims`.
class FockRegister {
 public:
  FockRegister(FockDims dims, CVector amplitudes);

  static FockRegister zero(FockDims dims);
  static FockRegister basis(FockDims dims, std::span<const int> occupation);

  const FockDims& dims() const { return dims_; }
  const CVector& amplitudes() const { return amplitudes_; }
  cplx amplitude(std::span<const int> occupation) const;
  double squared_norm() const { return amplitudes_.squaredNorm(); }

  /// Throws NumericalError on a zero vector.
  FockRegister normalized() const;

 private:
  FockDims dims_;
  CVector amplitudes_;
};

/// Density operator with mode metadata. Construction checks shape only;
/// call validate() for the Hermitian / PSD / unit-trace checks.
class DensityOperator {
 public:
  DensityOperator(FockDims dims, CMatrix matrix);

  static DensityOperator pure(const FockRegister& state);
  static DensityOperator diagonal(FockDims dims, const RVector& populations);

  const FockDims& dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }

  double trace() const { return matrix_.trace().real(); }
  /// Probability weight missing from the truncated space, 1 - trace.
  double leakage() const { return 1.0 - trace(); }

  /// Hermitian to `hermitian_tol` (max-abs), eigenvalues >= -`eigen_tol`,
  /// and, when `require_unit_trace`, |trace - 1| <= `trace_tol`.
  void validate(bool require_unit_trace = true, double hermitian_tol = 1e-10, double eigen_tol = 1e-10,
                double trace_tol = 1e-8) const;

 private:
  FockDims dims_;
  CMatrix matrix_;
};

/// Single-mode operator on a space of dimension dim().
class ModeOperator {
 public:
  explicit ModeOperator(CMatrix matrix);
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  CMatrix matrix_;
};

// Ladder operators. Entries <n-1|a|n> = sqrt(n); n_max >= 1.
ModeOperator annihilation(int n_max);
ModeOperator creation(int n_max);
ModeOperator number_operator(int n_max);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Lift a single-mode operator to act on `mode` of a multi-mode space.
CMatrix embed(const CMatrix& op, std::size_t mode, const FockDims& dims);

/// Principal submatrix of `op` (defined on `big`) over the basis states that
/// also fit inside `small`. Both dims must have the same number of modes.
CMatrix restrict_to(const CMatrix& op, const FockDims& big, const FockDims& small);

/// Matrix exponential by scaling and squaring with a degree-13 Pade approximant.
CMatrix expm(const CMatrix& a);
RMatrix expm(const RMatrix& a);

/// Generator exp(theta * (a1 a2^dag - a1^dag a2)) on the truncated two-mode
/// space `two_mode` (first mode = a1). The truncated generator is
/// anti-Hermitian, so the result is exactly unitary; it agrees with the
/// physical beam splitter on every photon-number block that fits entirely
/// inside the truncation.
CMatrix beam_splitter_unitary(double theta, const FockDims& two_mode);

/// Untruncated beam-splitter amplitudes. The generator conserves total photon
/// number, so U is computed block by block (block N has dimension N + 1).
class BeamSplitterBlocks {
 public:
  BeamSplitterBlocks(double theta, int max_total);

  double theta() const { return theta_; }
  int max_total() const { return static_cast<int>(blocks_.size()) - 1; }

  /// <out_first, in_first + in_second - out_first| U |in_first, in_second>.
  /// Zero when out_first is outside [0, in_first + in_second].
  double amplitude(int in_first, int in_second, int out_first) const;

  /// Unitary on block N, indexed by first-mode occupation.
  const RMatrix& block(int total) const { return blocks_.at(static_cast<std::size_t>(total)); }

 private:
  double theta_;
  std::vector<RMatrix> blocks_;
};

/// Thermal populations n^k / (1+n)^(k+1), k = 0..n_max. The missing tail
/// (n/(1+n))^(n_max+1) shows up as leakage(), never renormalized.
DensityOperator thermal_state(double n_bar, int n_max);

FockRegister tensor(const FockRegister& a, const FockRegister& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Reduced operator on the modes in `keep` (kept in ascending mode order).
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep);

/// Reduced operator of a pure state, without forming the full projector.
DensityOperator reduced_state(const FockRegister& state, std::span<const std::size_t> keep);

double max_abs(const CMatrix& m);
double hermiticity_defect(const CMatrix& m);

/// rho^s with eigenvalues below 1e-12 * max clamped to zero and 0^s = 0 for
/// every s, including s = 0 (the support projector). Throws NumericalError if
/// the input is non-Hermitian beyond 1e-8.
CMatrix hermitian_power(const CMatrix& rho, double s);
CMatrix hermitian_power(const DensityOperator& rho, double s);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const CMatrix& delta);

}  // namespace qillum::fock
