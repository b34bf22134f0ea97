#include "qillum/cli/evaluator.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "qillum/discriminate.hpp"
#include "qillum/error.hpp"

namespace qillum::cli {

namespace {

constexpr double kWarnLeakage = 1e-6;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string describe(engineer::Protocol p, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s at T=%.6g", std::string(engineer::protocol_name(p)).c_str(), t);
  return buf;
}

}  // namespace

Evaluator::Evaluator(const RunConfig& cfg)
    : squeeze_(engineer::SqueezeParams::from_r(cfg.r)), n_th_(cfg.n_th), n_max_(cfg.n_max), env_cutoff_(cfg.env_cutoff) {}

Evaluator::Key Evaluator::key(engineer::Protocol p, double t, double kappa, std::optional<double> eta) const {
  const double tk = engineer::depends_on_transmissivity(p) ? t : 0.0;
  return {static_cast<int>(p), tk, kappa, eta ? *eta : -1.0};
}

channel::ChannelParams Evaluator::channel_params(double kappa, std::optional<double> eta) const {
  channel::ChannelParams cp;
  cp.kappa = kappa;
  cp.n_th = n_th_;
  cp.eta = eta;
  cp.env_cutoff = env_cutoff_;
  return cp;
}

const engineer::ConditionalOutcome& Evaluator::probe(engineer::Protocol p, double t) {
  const double tk = engineer::depends_on_transmissivity(p) ? t : 0.0;
  const auto k = std::make_pair(static_cast<int>(p), tk);
  auto it = probes_.find(k);
  if (it == probes_.end()) {
    auto outcome = engineer::prepare_probe(p, squeeze_, tk, n_max_);
    if (outcome.leakage > kWarnLeakage) {
      warnings_.insert("probe " + describe(p, tk) + " truncation leakage " + std::to_string(outcome.leakage));
    }
    it = probes_.emplace(k, std::move(outcome)).first;
  }
  return it->second;
}

double Evaluator::entropy(engineer::Protocol p, double t) {
  const double tk = engineer::depends_on_transmissivity(p) ? t : 0.0;
  const auto k = std::make_pair(static_cast<int>(p), tk);
  auto it = entropies_.find(k);
  if (it != entropies_.end()) return it->second;
  const auto& o = probe(p, tk);
  const double e = o.feasible() ? engineer::marginal_entropy(o.state, 1) : kNaN;
  entropies_.emplace(k, e);
  return e;
}

double Evaluator::success(engineer::Protocol p, double t) { return probe(p, t).success_probability; }

double Evaluator::q_value(engineer::Protocol p, double t, double kappa, std::optional<double> eta) {
  const Key k = key(p, t, kappa, eta);
  auto it = q_values_.find(k);
  if (it != q_values_.end()) return it->second;
  const auto& o = probe(p, t);
  double q = kNaN;
  if (o.feasible()) {
    const auto pair = channel::hypothesis_pair(fock::DensityOperator::pure(o.state), channel_params(kappa, eta));
    if (pair.rho1.leakage() > kWarnLeakage) {
      warnings_.insert("rho1 for " + describe(p, t) + " trace deficit " + std::to_string(pair.rho1.leakage()));
    }
    q = discriminate::chernoff_q(pair.rho0, pair.rho1).q_value;
  }
  q_values_.emplace(k, q);
  return q;
}

double Evaluator::exponent(engineer::Protocol p, double t, double kappa, std::optional<double> eta) {
  const auto& o = probe(p, t);
  if (!o.feasible()) return 0.0;
  return discriminate::error_exponent(q_value(p, t, kappa, eta), o.success_probability, true);
}

double Evaluator::gain(engineer::Protocol p, double t, double kappa, std::optional<double> eta) {
  const double ref = exponent(engineer::Protocol::Tmss, 0.0, kappa, eta);
  return discriminate::gain_ratio(exponent(p, t, kappa, eta), ref);
}

double Evaluator::p_error(engineer::Protocol p, double t, double kappa, std::optional<double> eta, long long copies) {
  const double q = q_value(p, t, kappa, eta);
  if (std::isnan(q)) return kNaN;
  return discriminate::error_curve(q, {copies}).front().p_error;
}

receiver::ReceiverStats Evaluator::receiver(engineer::Protocol p, double t, double kappa, std::optional<double> eta,
                                            receiver::Scheme scheme, long long copies) {
  const auto [pi, tk, kk, ek] = key(p, t, kappa, eta);
  const auto mk = std::make_tuple(pi, tk, kk, ek, static_cast<int>(scheme));
  auto it = moments_.find(mk);
  if (it == moments_.end()) {
    const auto& o = probe(p, t);
    if (!o.feasible()) throw InvalidArgument("receiver: " + describe(p, t) + " is an impossible outcome");
    auto obs_it = observables_.find(static_cast<int>(scheme));
    if (obs_it == observables_.end()) {
      obs_it = observables_.emplace(static_cast<int>(scheme), receiver::observable(scheme, n_max_)).first;
    }
    const auto pair = channel::hypothesis_pair(fock::DensityOperator::pure(o.state), channel_params(kappa, eta));
    it = moments_.emplace(mk, std::make_pair(receiver::moments(pair.rho0, obs_it->second),
                                             receiver::moments(pair.rho1, obs_it->second)))
             .first;
  }
  const auto& [h0, h1] = it->second;
  return receiver::snr_and_error(h0.mean, h1.mean, h0.variance, h1.variance, copies);
}

double Evaluator::tstar(engineer::Protocol p, TStarRule rule, const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("tstar: empty transmissivity grid");
  if (!engineer::depends_on_transmissivity(p)) return 0.0;
  double best_t = grid.front();
  double best_v = -std::numeric_limits<double>::infinity();
  for (double t : grid) {
    const double v = rule == TStarRule::Entropy ? entropy(p, t) : success(p, t);
    if (!std::isnan(v) && v > best_v) {
      best_v = v;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace qillum::cli
