#pragma once

// Probe-state engineering on the (idler A, signal B) pair: the two-mode
// squeezed state, local conditional photon operations and the nonlocal
// photon-addition states, plus a brute-force simulator of the full
// auxiliary-mode network.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qillum/fock.hpp"

namespace qillum::engineer {

using fock::DensityOperator;
using fock::FockDims;
using fock::FockRegister;

struct SqueezeParams {
  double r = 0.0;
  double lambda = 0.0;  ///< tanh(r)

  static SqueezeParams from_r(double r);
  /// Squeezing with sinh^2(r) = mean_photons.
  static SqueezeParams from_mean_photons(double mean_photons);

  double mean_photons() const;
  double sech2() const;  ///< 1 - lambda^2
};

enum class TargetModes { A, B, Both };

/// Conditional beam-splitter operation: inject |aux_in>, detect |aux_detect>.
struct NgoSpec {
  int aux_in = 0;
  int aux_detect = 0;
  double transmissivity = 1.0;
  TargetModes target = TargetModes::B;

  void validate() const;
};

struct ConditionalOutcome {
  FockRegister state;               ///< normalized by the full heralding probability
  double success_probability = 0.0;
  double leakage = 0.0;             ///< norm deficit of `state` from truncation

  bool feasible() const { return success_probability > 0.0; }
};

/// sqrt(1 - lambda^2) sum_n lambda^n |n, n>, n = 0..n_max.
FockRegister tmss(const SqueezeParams& params, int n_max);

/// <n'| U_BS |n> coefficient mapping |k> to |k + n - n'> of the target mode.
double b_coefficient(int n, int n_prime, int k, double transmissivity);

/// Applies the operation to mode A, B or independently to both. Output
/// cutoff is n_max per mode; amplitudes pushed above it are counted as
/// leakage. An impossible outcome returns success_probability = 0 and a zero
/// state.
ConditionalOutcome apply_local_ngo(const FockRegister& input, const NgoSpec& ngo, int n_max);

/// Closed-form nonlocal photon-addition state with one or two auxiliary
/// photons.
ConditionalOutcome nlpa_state(int aux_photons, const SqueezeParams& params, double transmissivity, int n_max);

/// Entropy in bits over clamped eigenvalues, 0 log 0 = 0.
double von_neumann_entropy(const DensityOperator& rho);

/// Entropy of the single-mode marginal of a pure multi-mode state.
double marginal_entropy(const FockRegister& state, std::size_t mode);

/// Simulates TMSS(A,B) x |m>|n>, BS_A between the auxiliaries
/// (transmissivity bsA_ratio), BS(T) on aux1-A and aux2-B, then projects the
/// auxiliaries onto <m'|<n'|. The output lives on cutoff n_max + m + n per mode.
ConditionalOutcome protocol_oracle(std::array<int, 2> aux_in, std::array<int, 2> aux_detect, double transmissivity,
                                   double bsA_ratio, const SqueezeParams& params, int n_max);

/// |<a|b>|^2 over the occupations both registers can represent.
double overlap_fidelity(const FockRegister& a, const FockRegister& b);

enum class Protocol { Tmss, Pa, Ps, Pc, Pa2, Ps2, Pc2, Nlpa1, Nlpa2 };

std::string_view protocol_name(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view name);
const std::vector<Protocol>& all_protocols();

/// True for every protocol whose state depends on the transmissivity.
bool depends_on_transmissivity(Protocol p);

ConditionalOutcome prepare_probe(Protocol p, const SqueezeParams& params, double transmissivity, int n_max);

}  // namespace qillum::engineer
