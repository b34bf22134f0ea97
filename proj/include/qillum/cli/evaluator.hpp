#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qillum/channel.hpp"
#include "qillum/cli/config.hpp"
#include "qillum/engineer.hpp"
#include "qillum/receiver.hpp"

namespace qillum::cli {

/// Memoizing front end over the library for one squeezing / background /
/// cutoff setting. Probes, Chernoff values and receiver statistics are keyed
/// by (protocol, T, kappa, eta).
class Evaluator {
 public:
  explicit Evaluator(const RunConfig& cfg);

  const engineer::SqueezeParams& squeeze() const { return squeeze_; }

  const engineer::ConditionalOutcome& probe(engineer::Protocol p, double t);
  /// Marginal entropy of the signal mode; NaN for an impossible outcome.
  double entropy(engineer::Protocol p, double t);
  double success(engineer::Protocol p, double t);

  /// Chernoff Q; NaN for an impossible outcome.
  double q_value(engineer::Protocol p, double t, double kappa, std::optional<double> eta);
  /// -P ln Q, zero for an impossible outcome.
  double exponent(engineer::Protocol p, double t, double kappa, std::optional<double> eta);
  /// exponent relative to the TMSS exponent under the same channel.
  double gain(engineer::Protocol p, double t, double kappa, std::optional<double> eta);
  double p_error(engineer::Protocol p, double t, double kappa, std::optional<double> eta, long long copies);

  receiver::ReceiverStats receiver(engineer::Protocol p, double t, double kappa, std::optional<double> eta,
                                   receiver::Scheme scheme, long long copies);

  /// Grid argmax of entropy or success probability, first index on ties.
  double tstar(engineer::Protocol p, TStarRule rule, const std::vector<double>& grid);

  /// Truncation warnings collected so far (leakage above 1e-6).
  const std::set<std::string>& warnings() const { return warnings_; }

 private:
  using Key = std::tuple<int, double, double, double>;
  Key key(engineer::Protocol p, double t, double kappa, std::optional<double> eta) const;
  channel::ChannelParams channel_params(double kappa, std::optional<double> eta) const;

  engineer::SqueezeParams squeeze_;
  double n_th_;
  int n_max_;
  int env_cutoff_;
  std::map<std::pair<int, double>, engineer::ConditionalOutcome> probes_;
  std::map<std::pair<int, double>, double> entropies_;
  std::map<Key, double> q_values_;
  std::map<std::tuple<int, double, double, double, int>, std::pair<receiver::Moments, receiver::Moments>> moments_;
  std::map<int, receiver::Observable> observables_;
  std::set<std::string> warnings_;
};

}  // namespace qillum::cli
