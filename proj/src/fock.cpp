#include "qillum/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "qillum/eigensystem.hpp"
#include "qillum/error.hpp"

namespace qillum::fock {

// ---------------------------------------------------------------------------
// FockDims

FockDims::FockDims(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw InvalidArgument("FockDims: at least one mode required");
  total_ = 1;
  for (int c : cutoffs_) {
    if (c < 1) throw InvalidArgument("FockDims: every cutoff must be >= 1, got " + std::to_string(c));
    total_ *= static_cast<std::size_t>(c) + 1;
  }
}

FockDims FockDims::uniform(std::size_t modes, int cutoff) { return FockDims(std::vector<int>(modes, cutoff)); }

std::size_t FockDims::stride(std::size_t mode) const {
  std::size_t s = 1;
  for (std::size_t k = mode + 1; k < cutoffs_.size(); ++k) s *= mode_dim(k);
  return s;
}

std::size_t FockDims::index(std::span<const int> occupation) const {
  if (occupation.size() != cutoffs_.size()) throw InvalidArgument("FockDims::index: wrong number of modes");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
    if (occupation[k] < 0 || occupation[k] > cutoffs_[k]) {
      throw InvalidArgument("FockDims::index: occupation outside truncation");
    }
    idx = idx * mode_dim(k) + static_cast<std::size_t>(occupation[k]);
  }
  return idx;
}

std::vector<int> FockDims::occupation(std::size_t index) const {
  if (index >= total_) throw InvalidArgument("FockDims::occupation: index out of range");
  std::vector<int> occ(cutoffs_.size());
  for (std::size_t k = cutoffs_.size(); k-- > 0;) {
    occ[k] = static_cast<int>(index % mode_dim(k));
    index /= mode_dim(k);
  }
  return occ;
}

FockDims FockDims::concat(const FockDims& other) const {
  std::vector<int> c = cutoffs_;
  c.insert(c.end(), other.cutoffs_.begin(), other.cutoffs_.end());
  return FockDims(std::move(c));
}

FockDims FockDims::select(std::span<const std::size_t> modes) const {
  std::vector<int> c;
  c.reserve(modes.size());
  for (std::size_t m : modes) c.push_back(cutoffs_.at(m));
  return FockDims(std::move(c));
}

// ---------------------------------------------------------------------------
// States

FockRegister::FockRegister(FockDims dims, CVector amplitudes) : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != dims_.total()) {
    throw InvalidArgument("FockRegister: amplitude length does not match dims");
  }
}

FockRegister FockRegister::zero(FockDims dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  return FockRegister(std::move(dims), CVector::Zero(n));
}

FockRegister FockRegister::basis(FockDims dims, std::span<const int> occupation) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  v(static_cast<Eigen::Index>(dims.index(occupation))) = 1.0;
  return FockRegister(std::move(dims), std::move(v));
}

cplx FockRegister::amplitude(std::span<const int> occupation) const {
  return amplitudes_(static_cast<Eigen::Index>(dims_.index(occupation)));
}

FockRegister FockRegister::normalized() const {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw NumericalError("FockRegister::normalized: zero vector");
  return FockRegister(dims_, amplitudes_ / n);
}

DensityOperator::DensityOperator(FockDims dims, CMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(dims_.total());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw InvalidArgument("DensityOperator: matrix shape does not match dims");
  }
}

DensityOperator DensityOperator::pure(const FockRegister& state) {
  const CVector& v = state.amplitudes();
  return DensityOperator(state.dims(), v * v.adjoint());
}

DensityOperator DensityOperator::diagonal(FockDims dims, const RVector& populations) {
  CMatrix m = populations.cast<cplx>().asDiagonal();
  return DensityOperator(std::move(dims), std::move(m));
}

void DensityOperator::validate(bool require_unit_trace, double hermitian_tol, double eigen_tol,
                               double trace_tol) const {
  const double herm = hermiticity_defect(matrix_);
  if (herm > hermitian_tol) {
    throw NumericalError("density operator not Hermitian: max deviation " + std::to_string(herm));
  }
  const HermitianEigensystem eig(matrix_, hermitian_tol);
  if (eig.min_value() < -eigen_tol) {
    throw NumericalError("density operator has negative eigenvalue " + std::to_string(eig.min_value()));
  }
  if (require_unit_trace && std::abs(trace() - 1.0) > trace_tol) {
    throw NumericalError("density operator trace deviates from 1 by " + std::to_string(trace() - 1.0));
  }
}

ModeOperator::ModeOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw InvalidArgument("ModeOperator: matrix must be square and non-empty");
  }
}

// ---------------------------------------------------------------------------
// Operators

ModeOperator annihilation(int n_max) {
  if (n_max < 1) throw InvalidArgument("annihilation: n_max must be >= 1");
  CMatrix a = CMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return ModeOperator(std::move(a));
}

ModeOperator creation(int n_max) { return ModeOperator(annihilation(n_max).matrix().adjoint()); }

ModeOperator number_operator(int n_max) {
  if (n_max < 1) throw InvalidArgument("number_operator: n_max must be >= 1");
  CMatrix n = CMatrix::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) n(k, k) = static_cast<double>(k);
  return ModeOperator(std::move(n));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix embed(const CMatrix& op, std::size_t mode, const FockDims& dims) {
  if (mode >= dims.modes()) throw InvalidArgument("embed: mode out of range");
  if (static_cast<std::size_t>(op.rows()) != dims.mode_dim(mode) || op.rows() != op.cols()) {
    throw InvalidArgument("embed: operator dimension does not match mode");
  }
  std::size_t outer = 1;
  for (std::size_t k = 0; k < mode; ++k) outer *= dims.mode_dim(k);
  const auto inner = static_cast<Eigen::Index>(dims.stride(mode));
  CMatrix result = kron(CMatrix::Identity(static_cast<Eigen::Index>(outer), static_cast<Eigen::Index>(outer)), op);
  return kron(result, CMatrix::Identity(inner, inner));
}

CMatrix restrict_to(const CMatrix& op, const FockDims& big, const FockDims& small) {
  if (big.modes() != small.modes()) throw InvalidArgument("restrict_to: mode count mismatch");
  for (std::size_t k = 0; k < big.modes(); ++k) {
    if (small.cutoff(k) > big.cutoff(k)) throw InvalidArgument("restrict_to: target space is not contained");
  }
  std::vector<Eigen::Index> map(small.total());
  for (std::size_t i = 0; i < small.total(); ++i) {
    const auto occ = small.occupation(i);
    map[i] = static_cast<Eigen::Index>(big.index(occ));
  }
  const auto n = static_cast<Eigen::Index>(small.total());
  CMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = op(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix exponential (Higham 2005, degree 13)

namespace {

template <class Matrix>
Matrix expm_pade13(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("expm: matrix must be square");
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
                          129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
                          1323241920.0,        40840800.0,          960960.0,           16380.0,
                          182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const auto n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const Matrix x = a / std::ldexp(1.0, squarings);
  const Matrix x2 = x * x;
  const Matrix x4 = x2 * x2;
  const Matrix x6 = x4 * x2;
  const Matrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * ident;
  const Matrix u = x * u_inner;
  const Matrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * ident;
  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

// Generator of exp(theta (a1 a2^dag - a1^dag a2)) on photon-number block N,
// restricted to first-mode occupations [lo, hi]. Index i <-> occupation lo+i.
RMatrix block_generator(int total, int lo, int hi) {
  const int size = hi - lo + 1;
  RMatrix g = RMatrix::Zero(size, size);
  for (int b = lo; b <= hi; ++b) {
    const int col = b - lo;
    if (b - 1 >= lo) g(col - 1, col) = std::sqrt(static_cast<double>(b) * (total - b + 1));
    if (b + 1 <= hi) g(col + 1, col) = -std::sqrt(static_cast<double>(b + 1) * (total - b));
  }
  return g;
}

}  // namespace

CMatrix expm(const CMatrix& a) { return expm_pade13(a); }
RMatrix expm(const RMatrix& a) { return expm_pade13(a); }

CMatrix beam_splitter_unitary(double theta, const FockDims& two_mode) {
  if (two_mode.modes() != 2) throw InvalidArgument("beam_splitter_unitary: two modes required");
  if (!std::isfinite(theta)) throw InvalidArgument("beam_splitter_unitary: theta must be finite");
  const int c1 = two_mode.cutoff(0);
  const int c2 = two_mode.cutoff(1);
  const auto n = static_cast<Eigen::Index>(two_mode.total());
  CMatrix u = CMatrix::Zero(n, n);
  for (int total = 0; total <= c1 + c2; ++total) {
    const int lo = std::max(0, total - c2);
    const int hi = std::min(total, c1);
    const RMatrix block = expm(RMatrix(theta * block_generator(total, lo, hi)));
    for (int bin = lo; bin <= hi; ++bin) {
      const std::array<int, 2> in{bin, total - bin};
      const auto col = static_cast<Eigen::Index>(two_mode.index(in));
      for (int bout = lo; bout <= hi; ++bout) {
        const std::array<int, 2> out{bout, total - bout};
        u(static_cast<Eigen::Index>(two_mode.index(out)), col) = block(bout - lo, bin - lo);
      }
    }
  }
  return u;
}

BeamSplitterBlocks::BeamSplitterBlocks(double theta, int max_total) : theta_(theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("BeamSplitterBlocks: theta must be finite");
  if (max_total < 0) throw InvalidArgument("BeamSplitterBlocks: max_total must be >= 0");
  blocks_.reserve(static_cast<std::size_t>(max_total) + 1);
  for (int total = 0; total <= max_total; ++total) {
    blocks_.push_back(expm(RMatrix(theta * block_generator(total, 0, total))));
  }
}

double BeamSplitterBlocks::amplitude(int in_first, int in_second, int out_first) const {
  if (in_first < 0 || in_second < 0) throw InvalidArgument("BeamSplitterBlocks: negative occupation");
  const int total = in_first + in_second;
  if (total > max_total()) throw InvalidArgument("BeamSplitterBlocks: photon number above precomputed range");
  if (out_first < 0 || out_first > total) return 0.0;
  return blocks_[static_cast<std::size_t>(total)](out_first, in_first);
}

// ---------------------------------------------------------------------------

DensityOperator thermal_state(double n_bar, int n_max) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) throw InvalidArgument("thermal_state: n_bar must be finite and >= 0");
  if (n_max < 1) throw InvalidArgument("thermal_state: n_max must be >= 1");
  RVector p(n_max + 1);
  const double ratio = n_bar / (1.0 + n_bar);
  double term = 1.0 / (1.0 + n_bar);
  for (int k = 0; k <= n_max; ++k) {
    p(k) = term;
    term *= ratio;
  }
  return DensityOperator::diagonal(FockDims({n_max}), p);
}

FockRegister tensor(const FockRegister& a, const FockRegister& b) {
  const CVector& va = a.amplitudes();
  const CVector& vb = b.amplitudes();
  CVector out(va.size() * vb.size());
  for (Eigen::Index i = 0; i < va.size(); ++i) out.segment(i * vb.size(), vb.size()) = va(i) * vb;
  return FockRegister(a.dims().concat(b.dims()), std::move(out));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(a.dims().concat(b.dims()), kron(a.matrix(), b.matrix()));
}

namespace {

struct TraceSplit {
  FockDims kept;
  std::size_t traced_dim = 1;
  // full_index[k * traced_dim + t] for kept index k and traced index t.
  std::vector<Eigen::Index> full_index;
};

TraceSplit split_modes(const FockDims& dims, std::span<const std::size_t> keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set must be non-empty");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw InvalidArgument("partial_trace: duplicate mode in keep set");
  }
  if (kept.back() >= dims.modes()) throw InvalidArgument("partial_trace: mode index out of range");
  std::vector<std::size_t> traced;
  for (std::size_t m = 0; m < dims.modes(); ++m) {
    if (!std::binary_search(kept.begin(), kept.end(), m)) traced.push_back(m);
  }
  TraceSplit split{dims.select(kept), 1, {}};
  for (std::size_t m : traced) split.traced_dim *= dims.mode_dim(m);
  split.full_index.resize(split.kept.total() * split.traced_dim);
  std::vector<int> occ(dims.modes());
  for (std::size_t full = 0; full < dims.total(); ++full) {
    // Decode once, then assemble the kept and traced mixed-radix indices.
    std::size_t rem = full;
    for (std::size_t k = dims.modes(); k-- > 0;) {
      occ[k] = static_cast<int>(rem % dims.mode_dim(k));
      rem /= dims.mode_dim(k);
    }
    std::size_t ki = 0;
    for (std::size_t m : kept) ki = ki * dims.mode_dim(m) + static_cast<std::size_t>(occ[m]);
    std::size_t ti = 0;
    for (std::size_t m : traced) ti = ti * dims.mode_dim(m) + static_cast<std::size_t>(occ[m]);
    split.full_index[ki * split.traced_dim + ti] = static_cast<Eigen::Index>(full);
  }
  return split;
}

}  // namespace

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> keep) {
  const TraceSplit split = split_modes(rho.dims(), keep);
  const auto nk = static_cast<Eigen::Index>(split.kept.total());
  const std::size_t nt = split.traced_dim;
  CMatrix out = CMatrix::Zero(nk, nk);
  const CMatrix& m = rho.matrix();
  for (Eigen::Index c = 0; c < nk; ++c) {
    for (Eigen::Index r = 0; r < nk; ++r) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < nt; ++t) {
        acc += m(split.full_index[static_cast<std::size_t>(r) * nt + t], split.full_index[static_cast<std::size_t>(c) * nt + t]);
      }
      out(r, c) = acc;
    }
  }
  return DensityOperator(split.kept, std::move(out));
}

DensityOperator reduced_state(const FockRegister& state, std::span<const std::size_t> keep) {
  const TraceSplit split = split_modes(state.dims(), keep);
  const auto nk = static_cast<Eigen::Index>(split.kept.total());
  const auto nt = static_cast<Eigen::Index>(split.traced_dim);
  CMatrix psi(nk, nt);
  for (Eigen::Index k = 0; k < nk; ++k) {
    for (Eigen::Index t = 0; t < nt; ++t) {
      psi(k, t) = state.amplitudes()(split.full_index[static_cast<std::size_t>(k * nt + t)]);
    }
  }
  return DensityOperator(split.kept, psi * psi.adjoint());
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("hermiticity_defect: matrix must be square");
  return max_abs(m - m.adjoint());
}

CMatrix hermitian_power(const CMatrix& rho, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("hermitian_power: s must lie in [0, 1]");
  const HermitianEigensystem eig(rho, 1e-8);
  const double threshold = kEigenClampRelative * std::max(eig.max_value(), 0.0);
  return eig.reconstruct([&](double lambda) { return lambda > threshold ? std::pow(lambda, s) : 0.0; });
}

CMatrix hermitian_power(const DensityOperator& rho, double s) { return hermitian_power(rho.matrix(), s); }

double trace_norm(const CMatrix& delta) {
  const HermitianEigensystem eig(delta, 1e-8);
  return eig.values().cwiseAbs().sum();
}

}  // namespace qillum::fock
