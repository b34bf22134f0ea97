#include "qillum/receiver.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qillum/error.hpp"
#include "qillum/simd/kernels.hpp"

namespace qillum::receiver {

namespace {

using Sparse = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

// One term c * |a + da, b + db><a, b| with a per-state amplitude.
struct Term {
  int da;
  int db;
  double coeff;
  double (*amp)(int a, int b);
};

Observable assemble(int n_max, std::initializer_list<Term> terms) {
  if (n_max < 1) throw InvalidArgument("observable: n_max must be >= 1");
  const int big = n_max + 1;
  const int dim = big + 1;
  std::vector<Triplet> trips;
  for (int a = 0; a <= big; ++a) {
    for (int b = 0; b <= big; ++b) {
      for (const Term& t : terms) {
        const int a2 = a + t.da;
        const int b2 = b + t.db;
        if (a2 < 0 || b2 < 0 || a2 > big || b2 > big) continue;
        const double v = t.coeff * t.amp(a, b);
        if (v != 0.0) trips.emplace_back(a2 * dim + b2, a * dim + b, v);
      }
    }
  }
  Sparse o(dim * dim, dim * dim);
  o.setFromTriplets(trips.begin(), trips.end());
  const Sparse o2 = (o * o).pruned();

  const fock::FockDims big_dims = fock::FockDims::uniform(2, big);
  const fock::FockDims box = fock::FockDims::uniform(2, n_max);
  return Observable{fock::restrict_to(CMatrix(o), big_dims, box), fock::restrict_to(CMatrix(o2), big_dims, box)};
}

double sq(int n) { return std::sqrt(static_cast<double>(n)); }

}  // namespace

std::string_view scheme_name(Scheme s) { return s == Scheme::Dhd ? "dhd" : "photon_diff"; }

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "dhd") return Scheme::Dhd;
  if (name == "photon_diff") return Scheme::PhotonDiff;
  return std::nullopt;
}

Observable observable_dhd(int n_max) {
  return assemble(n_max, {
                             Term{0, 0, 1.0, [](int a, int) { return static_cast<double>(a); }},
                             Term{1, 1, -1.0, [](int a, int b) { return sq(a + 1) * sq(b + 1); }},
                             Term{-1, -1, -1.0, [](int a, int b) { return sq(a) * sq(b); }},
                             Term{0, 0, 1.0, [](int, int b) { return static_cast<double>(b + 1); }},
                         });
}

Observable observable_photon_diff(int n_max) {
  return assemble(n_max, {
                             Term{1, -1, 1.0, [](int a, int b) { return sq(a + 1) * sq(b); }},
                             Term{-1, 1, 1.0, [](int a, int b) { return sq(a) * sq(b + 1); }},
                         });
}

Observable observable(Scheme s, int n_max) {
  return s == Scheme::Dhd ? observable_dhd(n_max) : observable_photon_diff(n_max);
}

Moments moments(const DensityOperator& rho, const Observable& obs) {
  const CMatrix& m = rho.matrix();
  if (obs.matrix.rows() != m.rows() || obs.matrix.cols() != m.cols() || obs.square.rows() != m.rows()) {
    throw InvalidArgument("moments: observable dimension does not match state");
  }
  const auto n = static_cast<std::size_t>(m.size());
  // Tr(rho O) = sum_ij rho_ij O_ji = sum_ij conj(O_ij) rho_ij for Hermitian O.
  const cplx first = simd::dot_conj({obs.matrix.data(), n}, {m.data(), n});
  const cplx second = simd::dot_conj({obs.square.data(), n}, {m.data(), n});
  if (std::abs(first.imag()) > 1e-8 || std::abs(second.imag()) > 1e-8) {
    throw NumericalError("moments: imaginary expectation residue " + std::to_string(first.imag()));
  }
  Moments out{first.real(), second.real() - first.real() * first.real()};
  if (out.variance < 0.0) {
    if (out.variance < -1e-9) throw NumericalError("moments: negative variance " + std::to_string(out.variance));
    out.variance = 0.0;
  }
  return out;
}

ReceiverStats snr_and_error(double m0, double m1, double v0, double v1, long long copies) {
  if (copies < 1) throw InvalidArgument("snr_and_error: K must be >= 1");
  for (double v : {v0, v1}) {
    if (!(v >= -1e-9)) throw InvalidArgument("snr_and_error: variances must be >= 0");
  }
  ReceiverStats st;
  st.m0 = m0;
  st.m1 = m1;
  st.v0 = std::max(v0, 0.0);
  st.v1 = std::max(v1, 0.0);
  st.copies = copies;
  const double k = static_cast<double>(copies);
  const double s0 = std::sqrt(st.v0);
  const double s1 = std::sqrt(st.v1);
  const double spread = s0 + s1;
  const double diff = std::abs(m0 - m1);
  if (spread == 0.0) {
    if (diff == 0.0) throw InvalidArgument("snr_and_error: zero variances with equal means");
    st.perfect = true;
    st.snr_linear = std::numeric_limits<double>::infinity();
    st.snr_db = std::numeric_limits<double>::infinity();
    st.p_error = 0.0;
    st.threshold = k * 0.5 * (m0 + m1);
    return st;
  }
  st.snr_linear = k * diff * diff / (2.0 * spread * spread);
  st.snr_db = st.snr_linear > 0.0 ? 10.0 * std::log10(st.snr_linear) : -std::numeric_limits<double>::infinity();
  st.p_error = 0.5 * std::erfc(std::sqrt(k) * diff / (std::sqrt(2.0) * spread));
  st.threshold = k * (s1 * m0 + s0 * m1) / spread;
  return st;
}

ReceiverStats receiver_pipeline(const engineer::ConditionalOutcome& probe, const channel::ChannelParams& params,
                                Scheme scheme, long long copies) {
  if (!probe.feasible()) throw InvalidArgument("receiver_pipeline: probe has zero success probability");
  const auto pair = channel::hypothesis_pair(DensityOperator::pure(probe.state), params);
  const Observable obs = observable(scheme, probe.state.dims().cutoff(0));
  if (probe.state.dims().cutoff(0) != probe.state.dims().cutoff(1)) {
    throw InvalidArgument("receiver_pipeline: probe modes must share one cutoff");
  }
  const Moments h0 = moments(pair.rho0, obs);
  const Moments h1 = moments(pair.rho1, obs);
  return snr_and_error(h0.mean, h1.mean, h0.variance, h1.variance, copies);
}

}  // namespace qillum::receiver
