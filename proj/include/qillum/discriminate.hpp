#pragma once

// Distinguishability of the two hypothesis states: single-copy Helstrom
// error, quantum Chernoff bound and the error exponents derived from it.

#include <vector>

#include "qillum/fock.hpp"

namespace qillum::discriminate {

using fock::DensityOperator;

/// (1/2)(1 - (1/2) ||rho1 - rho0||_1).
double helstrom_error(const DensityOperator& rho0, const DensityOperator& rho1);

struct ChernoffResult {
  double q_value = 1.0;
  double s_star = 0.5;
  std::vector<double> grid_s;  ///< uniform grid on [0, 1]
  std::vector<double> grid_f;  ///< Tr(rho0^s rho1^(1-s)) on grid_s
};

/// Tr(rho0^s rho1^(1-s)) evaluated on eigendecompositions computed once.
class ChernoffFunction {
 public:
  ChernoffFunction(const DensityOperator& rho0, const DensityOperator& rho1);
  double operator()(double s) const;

 private:
  RVector a_;  ///< clamped eigenvalues of rho0
  RVector b_;  ///< clamped eigenvalues of rho1
  RMatrix w_;  ///< |<a_i|b_j>|^2
};

/// Minimum of f(s) over a 101-point grid refined by golden section to 1e-6.
/// Flat minima (f within 1e-12 of 1 everywhere) report s* = 0.5.
ChernoffResult chernoff_q(const DensityOperator& rho0, const DensityOperator& rho1, int grid_points = 101);

struct ErrorPoint {
  long long copies = 0;
  double p_error = 0.5;
  double log10_p = 0.0;
};

/// (1/2) q^K evaluated in log space.
std::vector<ErrorPoint> error_curve(double q_value, const std::vector<long long>& copies);

/// weighted: -P ln q; unweighted: -ln q.
double error_exponent(double q_value, double success_probability, bool weighted = true);

double gain_ratio(double exponent_alpha, double exponent_tmss);

struct DiscriminationReport {
  double q_value = 1.0;
  double s_star = 0.5;
  double helstrom_single_copy = 0.5;
  double exponent = 0.0;
  double gain = 0.0;
  std::vector<ErrorPoint> copies_curve;
};

/// Full report for one probe. `tmss_exponent` <= 0 leaves gain at 0.
DiscriminationReport discriminate(const DensityOperator& rho0, const DensityOperator& rho1, double success_probability,
                                  const std::vector<long long>& copies, double tmss_exponent);

}  // namespace qillum::discriminate
