#include "qillum/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "qillum/error.hpp"
#include "qillum/simd/kernels.hpp"

namespace qillum::channel {

namespace {

constexpr double kMinWeight = 1e-14;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Shift d when every nonzero sits at (b + d, b); nullopt otherwise.
std::optional<int> diagonal_shift(const CMatrix& m) {
  std::optional<int> shift;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) == cplx(0.0)) continue;
      const int d = static_cast<int>(r - c);
      if (shift && *shift != d) return std::nullopt;
      shift = d;
    }
  }
  return shift ? shift : std::optional<int>(0);
}

}  // namespace

void ChannelParams::validate() const {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw InvalidArgument("kappa must lie in [0, 1]");
  if (!(n_th >= 0.0) || !std::isfinite(n_th)) throw InvalidArgument("n_th must be finite and >= 0");
  if (eta && !(*eta >= 0.0 && *eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
  if (env_cutoff < 0) throw InvalidArgument("env_cutoff must be >= 0");
}

double ChannelParams::injected_n_th() const {
  if (kappa >= 1.0) throw InvalidArgument("injected background diverges at kappa = 1");
  return n_th / (1.0 - kappa);
}

KrausChannel::KrausChannel(std::vector<fock::ModeOperator> operators, std::vector<double> weights)
    : operators_(std::move(operators)), weights_(std::move(weights)) {
  if (operators_.empty()) throw InvalidArgument("KrausChannel: at least one operator required");
  if (weights_.size() != operators_.size()) throw InvalidArgument("KrausChannel: one weight per operator required");
  dim_ = operators_.front().dim();
  const auto n = static_cast<Eigen::Index>(dim_);
  std::map<int, CMatrix> grams;
  for (std::size_t i = 0; i < operators_.size(); ++i) {
    const CMatrix& k = operators_[i].matrix();
    if (operators_[i].dim() != dim_) throw InvalidArgument("KrausChannel: operators differ in dimension");
    const auto shift = diagonal_shift(k);
    if (!shift) {
      dense_.push_back(i);
      continue;
    }
    const int d = *shift;
    CVector u = CVector::Zero(n);
    for (Eigen::Index b = std::max<Eigen::Index>(0, -d); b < std::min<Eigen::Index>(n, n - d); ++b) u(b) = k(b + d, b);
    auto [it, fresh] = grams.try_emplace(d, CMatrix::Zero(n, n));
    it->second.noalias() += u * u.adjoint();
  }
  for (auto& [d, g] : grams) groups_.push_back(ShiftGroup{d, std::move(g)});
}

CMatrix KrausChannel::completeness() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& k : operators_) sum.noalias() += k.matrix().adjoint() * k.matrix();
  return sum;
}

double KrausChannel::completeness_defect(int max_level) const {
  const CMatrix c = completeness();
  const auto top = std::min<Eigen::Index>(max_level + 1, static_cast<Eigen::Index>(dim_));
  if (top <= 0) return 0.0;
  return fock::max_abs(c.topLeftCorner(top, top) - CMatrix::Identity(top, top));
}

int default_env_cutoff(double n_bar_env, int n_max, double max_leakage) {
  if (!(n_bar_env >= 0.0) || !std::isfinite(n_bar_env)) throw InvalidArgument("environment occupation must be >= 0");
  const double ratio = n_bar_env / (1.0 + n_bar_env);
  int c = std::max(n_max, 1);
  while (std::pow(ratio, c + 1) > max_leakage) ++c;
  return c;
}

KrausChannel thermal_attenuator_kraus(double kappa, double n_bar_env, int n_max, int env_cutoff,
                                      double max_env_leakage) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw InvalidArgument("thermal_attenuator_kraus: kappa must lie in [0, 1]");
  if (!(n_bar_env >= 0.0) || !std::isfinite(n_bar_env)) {
    throw InvalidArgument("thermal_attenuator_kraus: environment occupation must be finite and >= 0");
  }
  if (n_max < 1) throw InvalidArgument("thermal_attenuator_kraus: n_max must be >= 1");
  if (env_cutoff < 0) throw InvalidArgument("thermal_attenuator_kraus: env_cutoff must be >= 0");
  if (env_cutoff == 0) env_cutoff = default_env_cutoff(n_bar_env, n_max, max_env_leakage);
  const double ratio = n_bar_env / (1.0 + n_bar_env);
  const double tail = std::pow(ratio, env_cutoff + 1);
  if (tail > max_env_leakage) {
    throw InvalidArgument("thermal_attenuator_kraus: env_cutoff " + std::to_string(env_cutoff) +
                          " leaves thermal tail " + std::to_string(tail) + "; need env_cutoff >= " +
                          std::to_string(default_env_cutoff(n_bar_env, n_max, max_env_leakage)));
  }

  const fock::BeamSplitterBlocks blocks(std::acos(std::sqrt(kappa)), n_max + env_cutoff);
  const Eigen::Index dim = n_max + 1;
  std::vector<fock::ModeOperator> ops;
  std::vector<double> weights;
  double w = 1.0 / (1.0 + n_bar_env);
  for (int k = 0; k <= env_cutoff; ++k, w *= ratio) {
    if (w < kMinWeight) break;
    const double sw = std::sqrt(w);
    for (int kp = 0; kp <= n_max + k; ++kp) {
      CMatrix op = CMatrix::Zero(dim, dim);
      bool any = false;
      for (int b = std::max(0, kp - k); b <= n_max; ++b) {
        const int bp = b + k - kp;
        if (bp > n_max) break;
        const double a = blocks.amplitude(b, k, bp);
        if (a == 0.0) continue;
        op(bp, b) = sw * a;
        any = true;
      }
      if (!any) continue;
      ops.emplace_back(std::move(op));
      weights.push_back(w);
    }
  }
  return KrausChannel(std::move(ops), std::move(weights));
}

KrausChannel amplitude_damping_kraus(double eta, int n_max) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("amplitude_damping_kraus: eta must lie in [0, 1]");
  if (n_max < 1) throw InvalidArgument("amplitude_damping_kraus: n_max must be >= 1");
  std::vector<fock::ModeOperator> ops;
  std::vector<double> weights;
  for (int k = 0; k <= n_max; ++k) {
    CMatrix op = CMatrix::Zero(n_max + 1, n_max + 1);
    bool any = false;
    for (int n = k; n <= n_max; ++n) {
      const double v = std::sqrt(binomial(n, k) * std::pow(eta, n - k) * std::pow(1.0 - eta, k));
      if (v == 0.0) continue;
      op(n - k, n) = v;
      any = true;
    }
    if (!any) continue;
    ops.emplace_back(std::move(op));
    weights.push_back(1.0);
  }
  return KrausChannel(std::move(ops), std::move(weights));
}

DensityOperator apply_channel(const KrausChannel& channel, const DensityOperator& rho, std::size_t mode) {
  const auto& dims = rho.dims();
  if (mode >= dims.modes()) throw InvalidArgument("apply_channel: mode out of range");
  if (dims.mode_dim(mode) != channel.dim()) throw InvalidArgument("apply_channel: channel dimension does not match mode");

  const auto n = static_cast<Eigen::Index>(dims.total());
  const auto d = static_cast<Eigen::Index>(channel.dim());
  const auto inner = static_cast<Eigen::Index>(dims.stride(mode));
  const Eigen::Index outer = n / (d * inner);
  const Eigen::Index span_len = d * inner;
  const CMatrix& in = rho.matrix();
  CMatrix out = CMatrix::Zero(n, n);

  for (const auto& group : channel.shift_groups()) {
    const Eigen::Index s = group.shift;
    const Eigen::Index lo = std::max<Eigen::Index>(0, -s);
    const Eigen::Index hi = std::min<Eigen::Index>(d, d - s);  // exclusive
    if (lo >= hi) continue;
    // mult(b * inner + i, c) = gram(b, c): the multiplier expanded along the inner modes.
    CMatrix mult(span_len, d);
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::Index b = 0; b < d; ++b) mult.col(c).segment(b * inner, inner).setConstant(group.gram(b, c));
    }
    const Eigen::Index seg = (hi - lo) * inner;
    for (Eigen::Index col = 0; col < n; ++col) {
      const Eigen::Index c = (col / inner) % d;
      if (c < lo || c >= hi) continue;
      const Eigen::Index target_col = col + s * inner;
      const cplx* mcol = mult.col(c).data() + lo * inner;
      for (Eigen::Index o = 0; o < outer; ++o) {
        const Eigen::Index row0 = o * span_len + lo * inner;
        simd::hadamard_madd(std::span<cplx>(out.col(target_col).data() + row0 + s * inner, static_cast<std::size_t>(seg)),
                            std::span<const cplx>(in.col(col).data() + row0, static_cast<std::size_t>(seg)),
                            std::span<const cplx>(mcol, static_cast<std::size_t>(seg)));
      }
    }
  }
  for (std::size_t idx : channel.dense_operators()) {
    const CMatrix k = fock::embed(channel.operators()[idx].matrix(), mode, dims);
    out.noalias() += k * in * k.adjoint();
  }
  return DensityOperator(dims, std::move(out));
}

DensityOperator pure_loss(const DensityOperator& rho, std::size_t mode, double eta) {
  if (mode >= rho.dims().modes()) throw InvalidArgument("pure_loss: mode out of range");
  if (eta == 1.0) return rho;
  return apply_channel(amplitude_damping_kraus(eta, rho.dims().cutoff(mode)), rho, mode);
}

HypothesisPair hypothesis_pair(const DensityOperator& probe, const ChannelParams& params) {
  params.validate();
  if (probe.dims().modes() != 2) throw InvalidArgument("hypothesis_pair: two-mode probe required");
  const int n_ret = probe.dims().cutoff(1);
  const std::array<std::size_t, 1> keep_a{0};
  DensityOperator rho0 = fock::tensor(fock::partial_trace(probe, keep_a), fock::thermal_state(params.n_th, n_ret));
  DensityOperator rho1 = probe;
  if (params.kappa < 1.0) {
    const KrausChannel k = thermal_attenuator_kraus(params.kappa, params.injected_n_th(), n_ret, params.env_cutoff);
    rho1 = apply_channel(k, probe, 1);
  }
  if (params.eta) rho1 = pure_loss(rho1, 1, *params.eta);
  return HypothesisPair{std::move(rho0), std::move(rho1)};
}

}  // namespace qillum::channel
