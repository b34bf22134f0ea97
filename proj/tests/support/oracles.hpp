#pragma once

// Independent reference computations. Everything here is written from the
// defining formulas with plain loops; none of it calls the block-wise or
// Kraus machinery under test.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// exp(A) from a 20-term Taylor series on A / 2^s, squared back s times.
inline CMatrix taylor_expm(const CMatrix& a, int terms = 20) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::ldexp(1.0, s) > 0.5) ++s;
  const CMatrix x = a / std::ldexp(1.0, s);
  CMatrix sum = CMatrix::Identity(a.rows(), a.cols());
  CMatrix term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

inline CMatrix ladder(int cutoff) {
  CMatrix a = CMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// exp(theta (a1 a2^dag - a1^dag a2)) with both modes at `cutoff`, by Taylor series.
inline CMatrix beam_splitter(double theta, int cutoff) {
  const CMatrix a = ladder(cutoff);
  const CMatrix ad = a.adjoint();
  return taylor_expm(theta * (kron(a, ad) - kron(ad, a)));
}

/// Tr over mode 1 of a two-mode operator with dims (d0, d1).
inline CMatrix trace_second(const CMatrix& rho, int d0, int d1) {
  CMatrix out = CMatrix::Zero(d0, d0);
  for (int i = 0; i < d0; ++i)
    for (int j = 0; j < d0; ++j)
      for (int t = 0; t < d1; ++t) out(i, j) += rho(i * d1 + t, j * d1 + t);
  return out;
}

/// Tr over mode 0 of a two-mode operator with dims (d0, d1).
inline CMatrix trace_first(const CMatrix& rho, int d0, int d1) {
  CMatrix out = CMatrix::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j)
      for (int t = 0; t < d0; ++t) out(i, j) += rho(t * d1 + i, t * d1 + j);
  return out;
}

/// Thermal attenuator on mode B of rho_AB (cutoff n per mode) by explicit
/// dilation: environment weights w_k for k <= env, beam splitter on (B, C)
/// built at cutoff n + env so no block is truncated, then Tr_C. `u` is
/// beam_splitter(theta, n + env).
inline CMatrix dilate_attenuator(const CMatrix& rho, int n, int env, const CMatrix& u, double n_env) {
  const int big = n + env;
  const int db = big + 1;
  const int d = n + 1;
  std::vector<double> w(env + 1);
  for (int k = 0; k <= env; ++k) w[k] = std::pow(n_env, k) / std::pow(1.0 + n_env, k + 1);
  auto uidx = [db](int b, int c) { return b * db + c; };
  CMatrix out = CMatrix::Zero(d * d, d * d);
  for (int a1 = 0; a1 < d; ++a1)
    for (int b1 = 0; b1 < d; ++b1)
      for (int a2 = 0; a2 < d; ++a2)
        for (int b2 = 0; b2 < d; ++b2) {
          cplx acc = 0.0;
          for (int k = 0; k <= env; ++k)
            for (int kp = 0; kp <= big; ++kp)
              for (int b = 0; b < d; ++b) {
                const cplx ub = u(uidx(b1, kp), uidx(b, k));
                if (ub == cplx(0.0)) continue;
                for (int c = 0; c < d; ++c) {
                  acc += w[k] * ub * rho(a1 * d + b, a2 * d + c) * std::conj(u(uidx(b2, kp), uidx(c, k)));
                }
              }
          out(a1 * d + b1, a2 * d + b2) = acc;
        }
  return out;
}

/// Pure loss on mode B of rho_AB via a vacuum environment D.
inline CMatrix dilate_loss(const CMatrix& rho, int n, double eta) {
  const int d = n + 1;
  const CMatrix u = beam_splitter(std::acos(std::sqrt(eta)), n);
  auto uidx = [d](int b, int c) { return b * d + c; };
  CMatrix out = CMatrix::Zero(d * d, d * d);
  for (int a1 = 0; a1 < d; ++a1)
    for (int b1 = 0; b1 < d; ++b1)
      for (int a2 = 0; a2 < d; ++a2)
        for (int b2 = 0; b2 < d; ++b2) {
          cplx acc = 0.0;
          for (int kp = 0; kp < d; ++kp)
            for (int b = 0; b < d; ++b)
              for (int c = 0; c < d; ++c)
                acc += u(uidx(b1, kp), uidx(b, 0)) * rho(a1 * d + b, a2 * d + c) * std::conj(u(uidx(b2, kp), uidx(c, 0)));
          out(a1 * d + b1, a2 * d + b2) = acc;
        }
  return out;
}

/// erfc from the Maclaurin series of erf, summed in long double.
inline double erfc_series(double x) {
  long double sum = 0.0L;
  long double xx = x;
  long double term = xx;  // (-1)^n x^(2n+1) / n!
  for (int n = 0; n < 200; ++n) {
    sum += term / (2 * n + 1);
    term *= -xx * xx / (n + 1);
  }
  const long double pi = 3.141592653589793238462643383279502884L;
  return static_cast<double>(1.0L - 2.0L / std::sqrt(pi) * sum);
}

/// min_s sum_i p_i^s q_i^(1-s) over a dense uniform grid.
inline double classical_chernoff(const std::vector<double>& p, const std::vector<double>& q, int points = 200001) {
  double best = 2.0;
  for (int i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / (points - 1);
    double f = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] > 0.0 && q[j] > 0.0) f += std::pow(p[j], s) * std::pow(q[j], 1.0 - s);
    }
    best = std::min(best, f);
  }
  return best;
}

/// Marginal entropy (bits) of a TMSS with mean photon number m = sinh^2 r.
inline double tmss_entropy(double m) { return (1.0 + m) * std::log2(1.0 + m) - m * std::log2(m); }

}  // namespace oracle
