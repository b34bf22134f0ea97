#pragma once

// Seeded random inputs for property tests.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qillum/fock.hpp"

namespace gen {

using qillum::CMatrix;
using qillum::CVector;
using qillum::cplx;

class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  cplx complex_normal() { return {normal(), normal()}; }

  CVector state(Eigen::Index dim) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_normal();
    return v / v.norm();
  }

  CMatrix matrix(Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

  CMatrix hermitian(Eigen::Index dim) {
    const CMatrix g = matrix(dim, dim);
    return 0.5 * (g + g.adjoint());
  }

  /// G G^dag / Tr, with `rank` columns (full rank when rank = 0).
  CMatrix density(Eigen::Index dim, Eigen::Index rank = 0) {
    const CMatrix g = matrix(dim, rank > 0 ? rank : dim);
    CMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
  }

  /// Density matrix whose weight decays geometrically with photon number in
  /// every mode, so truncated channels act on it faithfully.
  CMatrix low_photon_density(const qillum::fock::FockDims& dims, double decay) {
    const auto n = static_cast<Eigen::Index>(dims.total());
    CMatrix g = matrix(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto occ = dims.occupation(static_cast<std::size_t>(i));
      int total = 0;
      for (int o : occ) total += o;
      g.row(i) *= std::pow(decay, total);
    }
    CMatrix rho = g * g.adjoint();
    return rho / rho.trace().real();
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
