#include "qillum/eigensystem.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qillum/error.hpp"

namespace qillum::fock {

namespace {

struct DisjointSet {
  std::vector<Eigen::Index> parent;
  explicit DisjointSet(Eigen::Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  }
  Eigen::Index find(Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[static_cast<std::size_t>(a)] = b;
  }
};

}  // namespace

HermitianEigensystem::HermitianEigensystem(const CMatrix& m, double hermitian_tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("HermitianEigensystem: matrix must be square");
  dim_ = m.rows();
  const double defect = hermiticity_defect(m);
  if (defect > hermitian_tol) {
    throw NumericalError("HermitianEigensystem: matrix not Hermitian, max deviation " + std::to_string(defect));
  }

  DisjointSet sets(dim_);
  for (Eigen::Index j = 0; j < dim_; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (m(i, j) != cplx(0.0) || m(j, i) != cplx(0.0)) sets.unite(i, j);
    }
  }
  // Roots are the smallest member, so map order follows the first index.
  std::map<Eigen::Index, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < dim_; ++i) groups[sets.find(i)].push_back(i);

  values_.resize(dim_);
  Eigen::Index offset = 0;
  blocks_.reserve(groups.size());
  for (auto& [root, indices] : groups) {
    const auto n = static_cast<Eigen::Index>(indices.size());
    Block block;
    block.offset = offset;
    if (n == 1) {
      block.values = RVector::Constant(1, m(indices[0], indices[0]).real());
      block.vectors = CMatrix::Identity(1, 1);
    } else {
      CMatrix sub(n, n);
      for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
          const auto ir = indices[static_cast<std::size_t>(r)];
          const auto ic = indices[static_cast<std::size_t>(c)];
          sub(r, c) = 0.5 * (m(ir, ic) + std::conj(m(ic, ir)));
        }
      }
      Eigen::SelfAdjointEigenSolver<CMatrix> solver(sub);
      if (solver.info() != Eigen::Success) throw NumericalError("HermitianEigensystem: eigensolver failed");
      block.values = solver.eigenvalues();
      block.vectors = solver.eigenvectors();
    }
    values_.segment(offset, n) = block.values;
    offset += n;
    block.indices = std::move(indices);
    blocks_.push_back(std::move(block));
  }
}

double HermitianEigensystem::max_value() const { return dim_ == 0 ? 0.0 : values_.maxCoeff(); }
double HermitianEigensystem::min_value() const { return dim_ == 0 ? 0.0 : values_.minCoeff(); }

RVector HermitianEigensystem::clamped_values() const {
  const double threshold = kEigenClampRelative * std::max(max_value(), 0.0);
  RVector out = values_;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) <= threshold) out(i) = 0.0;
  }
  return out;
}

CMatrix HermitianEigensystem::reconstruct(const std::function<double(double)>& f) const {
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const Block& b : blocks_) {
    const auto n = static_cast<Eigen::Index>(b.indices.size());
    RVector fv(n);
    for (Eigen::Index k = 0; k < n; ++k) fv(k) = f(b.values(k));
    const CMatrix sub = b.vectors * fv.cast<cplx>().asDiagonal() * b.vectors.adjoint();
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index r = 0; r < n; ++r) out(b.indices[static_cast<std::size_t>(r)], b.indices[static_cast<std::size_t>(c)]) = sub(r, c);
    }
  }
  return out;
}

RMatrix eigenvector_overlap(const HermitianEigensystem& u, const HermitianEigensystem& v) {
  if (u.dim() != v.dim()) throw InvalidArgument("eigenvector_overlap: dimension mismatch");
  const auto n = u.dim();
  struct Slot {
    std::size_t block;
    Eigen::Index local;
  };
  auto locate = [n](const HermitianEigensystem& e) {
    std::vector<Slot> slots(static_cast<std::size_t>(n));
    const auto bl = e.blocks();
    for (std::size_t b = 0; b < bl.size(); ++b) {
      for (std::size_t k = 0; k < bl[b].indices.size(); ++k) {
        slots[static_cast<std::size_t>(bl[b].indices[k])] = Slot{b, static_cast<Eigen::Index>(k)};
      }
    }
    return slots;
  };
  const auto su = locate(u);
  const auto sv = locate(v);

  // Rows shared by each (u-block, v-block) pair.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Eigen::Index>> shared;
  for (Eigen::Index r = 0; r < n; ++r) {
    shared[{su[static_cast<std::size_t>(r)].block, sv[static_cast<std::size_t>(r)].block}].push_back(r);
  }

  RMatrix w = RMatrix::Zero(n, n);
  const auto ub = u.blocks();
  const auto vb = v.blocks();
  for (const auto& [key, rows] : shared) {
    const auto& bu = ub[key.first];
    const auto& bv = vb[key.second];
    const auto k = static_cast<Eigen::Index>(rows.size());
    CMatrix uu(k, bu.vectors.cols());
    CMatrix vv(k, bv.vectors.cols());
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto r = static_cast<std::size_t>(rows[static_cast<std::size_t>(i)]);
      uu.row(i) = bu.vectors.row(su[r].local);
      vv.row(i) = bv.vectors.row(sv[r].local);
    }
    const CMatrix prod = uu.adjoint() * vv;
    w.block(bu.offset, bv.offset, prod.rows(), prod.cols()) = prod.cwiseAbs2();
  }
  return w;
}

}  // namespace qillum::fock
