#pragma once

// Receiver statistics on the (idler, return) pair: quadratic observables,
// hypothesis-conditioned moments and the Gaussian threshold test.

#include <optional>
#include <string_view>

#include "qillum/channel.hpp"
#include "qillum/engineer.hpp"
#include "qillum/fock.hpp"

namespace qillum::receiver {

using fock::DensityOperator;

enum class Scheme { Dhd, PhotonDiff };

std::string_view scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Observable restricted to the n_max box together with its square. Both are
/// formed on cutoff n_max + 1 first, so the square is exact inside the box.
struct Observable {
  CMatrix matrix;
  CMatrix square;
};

/// a_A^dag a_A - (a_B^dag a_A^dag + a_B a_A) + a_B a_B^dag.
Observable observable_dhd(int n_max);

/// a_A^dag a_B + a_B^dag a_A.
Observable observable_photon_diff(int n_max);

Observable observable(Scheme s, int n_max);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const DensityOperator& rho, const Observable& obs);

struct ReceiverStats {
  double m0 = 0.0;
  double m1 = 0.0;
  double v0 = 0.0;
  double v1 = 0.0;
  double snr_linear = 0.0;
  double snr_db = 0.0;
  double p_error = 0.5;
  double threshold = 0.0;
  long long copies = 1;
  bool perfect = false;  ///< both variances zero and m0 != m1: SNR is infinite
};

ReceiverStats snr_and_error(double m0, double m1, double v0, double v1, long long copies);

ReceiverStats receiver_pipeline(const engineer::ConditionalOutcome& probe, const channel::ChannelParams& params,
                                Scheme scheme, long long copies);

}  // namespace qillum::receiver
