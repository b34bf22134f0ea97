#include "qillum/discriminate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qillum/eigensystem.hpp"
#include "qillum/error.hpp"
#include "qillum/simd/kernels.hpp"

namespace qillum::discriminate {

namespace {

void check_pair(const DensityOperator& rho0, const DensityOperator& rho1, const char* where) {
  if (!(rho0.dims() == rho1.dims())) throw InvalidArgument(std::string(where) + ": hypothesis dims differ");
}

// rho^0 is the identity, so the endpoints reduce to the trace of the other state.
RVector powered(const RVector& v, double s) {
  if (s == 0.0) return RVector::Ones(v.size());
  RVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) > 0.0 ? std::pow(v(i), s) : 0.0;
  return out;
}

}  // namespace

double helstrom_error(const DensityOperator& rho0, const DensityOperator& rho1) {
  check_pair(rho0, rho1, "helstrom_error");
  const double tn = fock::trace_norm(rho1.matrix() - rho0.matrix());
  return 0.5 * (1.0 - 0.5 * tn);
}

ChernoffFunction::ChernoffFunction(const DensityOperator& rho0, const DensityOperator& rho1) {
  check_pair(rho0, rho1, "chernoff");
  const fock::HermitianEigensystem e0(rho0.matrix(), 1e-8);
  const fock::HermitianEigensystem e1(rho1.matrix(), 1e-8);
  a_ = e0.clamped_values();
  b_ = e1.clamped_values();
  w_ = fock::eigenvector_overlap(e0, e1);
}

double ChernoffFunction::operator()(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("chernoff: s must lie in [0, 1]");
  const RVector as = powered(a_, s);
  const RVector bs = powered(b_, 1.0 - s);
  const std::span<const double> a_span(as.data(), static_cast<std::size_t>(as.size()));
  double f = 0.0;
  for (Eigen::Index j = 0; j < w_.cols(); ++j) {
    if (bs(j) == 0.0) continue;
    f += bs(j) * simd::dot(a_span, std::span<const double>(w_.col(j).data(), static_cast<std::size_t>(w_.rows())));
  }
  if (!std::isfinite(f)) throw NumericalError("chernoff: non-finite trace at s = " + std::to_string(s));
  return f;
}

ChernoffResult chernoff_q(const DensityOperator& rho0, const DensityOperator& rho1, int grid_points) {
  if (grid_points < 3) throw InvalidArgument("chernoff_q: grid needs at least 3 points");
  const ChernoffFunction f(rho0, rho1);
  ChernoffResult res;
  res.grid_s.resize(static_cast<std::size_t>(grid_points));
  res.grid_f.resize(static_cast<std::size_t>(grid_points));
  std::size_t best = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double s = static_cast<double>(i) / (grid_points - 1);
    res.grid_s[static_cast<std::size_t>(i)] = s;
    res.grid_f[static_cast<std::size_t>(i)] = f(s);
    if (res.grid_f[static_cast<std::size_t>(i)] < res.grid_f[best]) best = static_cast<std::size_t>(i);
  }
  const auto [lo_it, hi_it] = std::minmax_element(res.grid_f.begin(), res.grid_f.end());
  if (*hi_it - *lo_it <= 1e-12) {
    res.q_value = *lo_it;
    res.s_star = 0.5;
    return res;
  }

  double a = res.grid_s[best == 0 ? 0 : best - 1];
  double b = res.grid_s[std::min(best + 1, res.grid_s.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-6) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  const double s_mid = 0.5 * (a + b);
  const double f_mid = f(s_mid);
  res.q_value = res.grid_f[best];
  res.s_star = res.grid_s[best];
  for (auto [s, v] : {std::pair{x1, f1}, std::pair{x2, f2}, std::pair{s_mid, f_mid}}) {
    if (v < res.q_value) {
      res.q_value = v;
      res.s_star = s;
    }
  }
  return res;
}

std::vector<ErrorPoint> error_curve(double q_value, const std::vector<long long>& copies) {
  if (!(q_value > 0.0 && q_value <= 1.0 + 1e-12)) throw InvalidArgument("error_curve: q must lie in (0, 1]");
  const double lq = std::log(std::min(q_value, 1.0));
  std::vector<ErrorPoint> out;
  out.reserve(copies.size());
  for (long long k : copies) {
    if (k < 1) throw InvalidArgument("error_curve: copy counts must be >= 1");
    const double ln_p = std::log(0.5) + static_cast<double>(k) * lq;
    out.push_back(ErrorPoint{k, std::exp(ln_p), ln_p / std::log(10.0)});
  }
  return out;
}

double error_exponent(double q_value, double success_probability, bool weighted) {
  if (q_value <= 0.0) throw NumericalError("error_exponent: q = 0 saturates the exponent");
  if (!(q_value <= 1.0 + 1e-9)) throw InvalidArgument("error_exponent: q must lie in (0, 1]");
  if (!(success_probability >= 0.0 && success_probability <= 1.0)) {
    throw InvalidArgument("error_exponent: success probability must lie in [0, 1]");
  }
  const double e = -std::log(std::min(q_value, 1.0));
  return weighted ? success_probability * e : e;
}

double gain_ratio(double exponent_alpha, double exponent_tmss) {
  if (!(exponent_tmss > 0.0)) throw InvalidArgument("gain_ratio: reference exponent must be > 0");
  return exponent_alpha / exponent_tmss;
}

DiscriminationReport discriminate(const DensityOperator& rho0, const DensityOperator& rho1, double success_probability,
                                  const std::vector<long long>& copies, double tmss_exponent) {
  DiscriminationReport rep;
  const ChernoffResult c = chernoff_q(rho0, rho1);
  rep.q_value = c.q_value;
  rep.s_star = c.s_star;
  rep.helstrom_single_copy = helstrom_error(rho0, rho1);
  rep.exponent = error_exponent(c.q_value, success_probability, true);
  if (tmss_exponent > 0.0) rep.gain = gain_ratio(rep.exponent, tmss_exponent);
  rep.copies_curve = error_curve(c.q_value, copies);
  return rep;
}

}  // namespace qillum::discriminate
