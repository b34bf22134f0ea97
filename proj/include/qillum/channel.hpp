#pragma once

// Target-present / target-absent hypothesis states. The thermal attenuator
// (beam splitter against a thermal environment) and the pure-loss channel are
// applied in Kraus form; every operator here shifts photon number by a fixed
// amount, which apply_channel exploits.

#include <optional>
#include <vector>

#include "qillum/fock.hpp"

namespace qillum::channel {

using fock::DensityOperator;

struct ChannelParams {
  double kappa = 0.01;         ///< target reflectivity
  double n_th = 1.0;           ///< background photons seen by the receiver
  std::optional<double> eta;   ///< pure-loss transmissivity applied under H1
  int env_cutoff = 0;          ///< 0 selects the smallest cutoff meeting the leakage bound

  void validate() const;
  /// Environment occupation n_th / (1 - kappa) injected into the beam splitter.
  double injected_n_th() const;
};

class KrausChannel {
 public:
  /// Operators sharing one photon-number shift; gram = sum u u^dag over their
  /// diagonals, indexed by input level.
  struct ShiftGroup {
    int shift = 0;
    CMatrix gram;
  };

  KrausChannel(std::vector<fock::ModeOperator> operators, std::vector<double> weights);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return operators_.size(); }
  const std::vector<fock::ModeOperator>& operators() const { return operators_; }
  const std::vector<double>& weights() const { return weights_; }

  /// sum_i K_i^dag K_i.
  CMatrix completeness() const;
  /// max-abs deviation of the completeness sum from identity on levels 0..max_level.
  double completeness_defect(int max_level) const;

  const std::vector<ShiftGroup>& shift_groups() const { return groups_; }
  /// Indices of operators that are not single-diagonal.
  const std::vector<std::size_t>& dense_operators() const { return dense_; }

 private:
  std::size_t dim_ = 0;
  std::vector<fock::ModeOperator> operators_;
  std::vector<double> weights_;
  std::vector<ShiftGroup> groups_;
  std::vector<std::size_t> dense_;
};

/// Smallest cutoff c >= n_max with thermal tail (n/(1+n))^(c+1) <= max_leakage.
int default_env_cutoff(double n_bar_env, int n_max, double max_leakage = 1e-8);

/// K_{k'k} = sqrt(w_k) <k'|U_BS|k>_env with cos^2(theta) = kappa and w_k the
/// thermal weights of the environment. Operators with w_k < 1e-14 are
/// dropped. env_cutoff = 0 picks default_env_cutoff. Throws InvalidArgument
/// when the thermal tail beyond env_cutoff exceeds max_env_leakage.
KrausChannel thermal_attenuator_kraus(double kappa, double n_bar_env, int n_max, int env_cutoff = 0,
                                      double max_env_leakage = 1e-8);

/// E_k[n-k, n] = sqrt(C(n,k) eta^(n-k) (1-eta)^k), k = 0..n_max.
KrausChannel amplitude_damping_kraus(double eta, int n_max);

DensityOperator apply_channel(const KrausChannel& channel, const DensityOperator& rho, std::size_t mode);

DensityOperator pure_loss(const DensityOperator& rho, std::size_t mode, double eta);

struct HypothesisPair {
  DensityOperator rho0;  ///< Tr_B(probe) x thermal(n_th)
  DensityOperator rho1;  ///< attenuated (and optionally lossy) return
};

/// Probe modes are (A, B). kappa = 1 leaves the probe untouched under H1.
HypothesisPair hypothesis_pair(const DensityOperator& probe, const ChannelParams& params);

}  // namespace qillum::channel
