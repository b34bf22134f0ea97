#include "qillum/engineer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qillum/eigensystem.hpp"
#include "qillum/error.hpp"

namespace qillum::engineer {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void check_transmissivity(double t, const char* where) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument(std::string(where) + ": transmissivity must lie in [0, 1]");
}

void check_cutoff(int n_max, const char* where) {
  if (n_max < 1) throw InvalidArgument(std::string(where) + ": n_max must be >= 1");
}

}  // namespace

SqueezeParams SqueezeParams::from_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("squeezing parameter r must be finite and >= 0");
  return SqueezeParams{r, std::tanh(r)};
}

SqueezeParams SqueezeParams::from_mean_photons(double mean_photons) {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw InvalidArgument("mean photon number must be finite and >= 0");
  }
  return from_r(std::asinh(std::sqrt(mean_photons)));
}

double SqueezeParams::mean_photons() const {
  const double s = std::sinh(r);
  return s * s;
}

double SqueezeParams::sech2() const {
  const double c = std::cosh(r);
  return 1.0 / (c * c);
}

void NgoSpec::validate() const {
  if (aux_in < 0 || aux_detect < 0) throw InvalidArgument("NgoSpec: auxiliary photon numbers must be >= 0");
  check_transmissivity(transmissivity, "NgoSpec");
}

FockRegister tmss(const SqueezeParams& params, int n_max) {
  check_cutoff(n_max, "tmss");
  const FockDims dims = FockDims::uniform(2, n_max);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  const double norm = std::sqrt(1.0 - params.lambda * params.lambda);
  double lp = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    const std::array<int, 2> occ{n, n};
    amp(static_cast<Eigen::Index>(dims.index(occ))) = norm * lp;
    lp *= params.lambda;
  }
  return FockRegister(dims, std::move(amp));
}

double b_coefficient(int n, int n_prime, int k, double transmissivity) {
  if (n < 0 || n_prime < 0 || k < 0) throw InvalidArgument("b_coefficient: indices must be >= 0");
  check_transmissivity(transmissivity, "b_coefficient");
  if (k + n - n_prime < 0) return 0.0;
  const double st = std::sqrt(transmissivity);
  const double sr = std::sqrt(1.0 - transmissivity);
  const double scale =
      std::exp(0.5 * (log_factorial(k + n - n_prime) + log_factorial(n_prime) - log_factorial(k) - log_factorial(n)));
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double c = binomial(n, i) * binomial(k, n_prime - i);
    if (c == 0.0) continue;
    const double sign = ((n_prime - i) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * c * std::pow(st, k + 2 * i - n_prime) * std::pow(sr, n + n_prime - 2 * i);
  }
  return sum * scale;
}

ConditionalOutcome apply_local_ngo(const FockRegister& input, const NgoSpec& ngo, int n_max) {
  ngo.validate();
  check_cutoff(n_max, "apply_local_ngo");
  if (input.dims().modes() != 2) throw InvalidArgument("apply_local_ngo: two-mode input required");

  const bool on_a = ngo.target != TargetModes::B;
  const bool on_b = ngo.target != TargetModes::A;
  const int shift = ngo.aux_in - ngo.aux_detect;
  auto table = [&](bool active, int cutoff) {
    std::vector<double> c(static_cast<std::size_t>(cutoff) + 1, 1.0);
    if (active) {
      for (int k = 0; k <= cutoff; ++k) {
        c[static_cast<std::size_t>(k)] = b_coefficient(ngo.aux_in, ngo.aux_detect, k, ngo.transmissivity);
      }
    }
    return c;
  };
  const int ca = input.dims().cutoff(0);
  const int cb = input.dims().cutoff(1);
  const auto coef_a = table(on_a, ca);
  const auto coef_b = table(on_b, cb);
  const int da = on_a ? shift : 0;
  const int db = on_b ? shift : 0;

  const FockDims out_dims = FockDims::uniform(2, n_max);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(out_dims.total()));
  double full = 0.0;
  double kept = 0.0;
  const CVector& in = input.amplitudes();
  for (int ka = 0; ka <= ca; ++ka) {
    const int a = ka + da;
    if (a < 0) continue;
    for (int kb = 0; kb <= cb; ++kb) {
      const int b = kb + db;
      if (b < 0) continue;
      const cplx v = in(static_cast<Eigen::Index>(ka) * (cb + 1) + kb) * coef_a[static_cast<std::size_t>(ka)] *
                     coef_b[static_cast<std::size_t>(kb)];
      const double w = std::norm(v);
      full += w;
      if (a <= n_max && b <= n_max) {
        out(static_cast<Eigen::Index>(a) * (n_max + 1) + b) = v;
        kept += w;
      }
    }
  }
  if (full <= 0.0) return ConditionalOutcome{FockRegister::zero(out_dims), 0.0, 0.0};
  out /= std::sqrt(full);
  return ConditionalOutcome{FockRegister(out_dims, std::move(out)), std::min(full, 1.0), std::max(0.0, 1.0 - kept / full)};
}

ConditionalOutcome nlpa_state(int aux_photons, const SqueezeParams& params, double transmissivity, int n_max) {
  if (aux_photons != 1 && aux_photons != 2) throw InvalidArgument("nlpa_state: aux_photons must be 1 or 2");
  check_transmissivity(transmissivity, "nlpa_state");
  check_cutoff(n_max, "nlpa_state");
  const double lt = params.lambda * transmissivity;
  if (lt >= 1.0) throw InvalidArgument("nlpa_state: lambda * T must be < 1");
  const double base = 1.0 - lt * lt;
  const double x2 = lt * lt;

  const FockDims dims = FockDims::uniform(2, n_max);
  CVector amp = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double total = 0.0;
  double pow_x2 = 1.0;
  for (int n = 0; n + aux_photons <= n_max; ++n) {
    double w;
    if (aux_photons == 1) {
      w = base * base * pow_x2 * (n + 1);
    } else {
      w = base * base * base * pow_x2 * (n + 1) * (n + 2) / 2.0;
    }
    const double a = std::sqrt(w) * inv_sqrt2;
    const int hi = n + aux_photons;
    const std::array<int, 2> lo_hi{n, hi};
    const std::array<int, 2> hi_lo{hi, n};
    if (aux_photons == 1) {
      amp(static_cast<Eigen::Index>(dims.index(hi_lo))) = a;
      amp(static_cast<Eigen::Index>(dims.index(lo_hi))) = a;
    } else {
      amp(static_cast<Eigen::Index>(dims.index(lo_hi))) = a;
      amp(static_cast<Eigen::Index>(dims.index(hi_lo))) = -a;
    }
    total += w;
    pow_x2 *= x2;
  }
  const double one_minus_t = 1.0 - transmissivity;
  const double success = aux_photons == 1 ? params.sech2() * one_minus_t / (base * base)
                                          : params.sech2() * one_minus_t * one_minus_t / (base * base * base);
  return ConditionalOutcome{FockRegister(dims, std::move(amp)), success, std::max(0.0, 1.0 - total)};
}

double von_neumann_entropy(const DensityOperator& rho) {
  const fock::HermitianEigensystem eig(rho.matrix(), 1e-8);
  if (eig.min_value() < -1e-8) {
    throw NumericalError("von_neumann_entropy: operator not positive semidefinite, eigenvalue " +
                         std::to_string(eig.min_value()));
  }
  const RVector v = eig.clamped_values();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) > 0.0) s -= v(i) * std::log2(v(i));
  }
  return s;
}

double marginal_entropy(const FockRegister& state, std::size_t mode) {
  const std::array<std::size_t, 1> keep{mode};
  return von_neumann_entropy(fock::reduced_state(state, keep));
}

ConditionalOutcome protocol_oracle(std::array<int, 2> aux_in, std::array<int, 2> aux_detect, double transmissivity,
                                   double bsA_ratio, const SqueezeParams& params, int n_max) {
  check_transmissivity(transmissivity, "protocol_oracle");
  check_transmissivity(bsA_ratio, "protocol_oracle (BS_A ratio)");
  check_cutoff(n_max, "protocol_oracle");
  for (int v : {aux_in[0], aux_in[1], aux_detect[0], aux_detect[1]}) {
    if (v < 0) throw InvalidArgument("protocol_oracle: auxiliary photon numbers must be >= 0");
  }
  const double l2 = params.lambda * params.lambda;
  const double tail = std::pow(l2, n_max + 1);
  if (tail > 1e-4) {
    int needed = n_max;
    while (std::pow(l2, needed + 1) > 1e-4) ++needed;
    throw InvalidArgument("protocol_oracle: cutoff " + std::to_string(n_max) + " leaks " + std::to_string(tail) +
                          "; need n_max >= " + std::to_string(needed));
  }

  const int m = aux_in[0];
  const int n = aux_in[1];
  const int aux_total = m + n;
  const int out_cutoff = n_max + aux_total;
  const fock::BeamSplitterBlocks bs_a(std::acos(std::sqrt(bsA_ratio)), aux_total);
  const fock::BeamSplitterBlocks bs(std::acos(std::sqrt(transmissivity)), out_cutoff);

  const FockRegister input = tmss(params, n_max);
  const FockDims out_dims = FockDims::uniform(2, out_cutoff);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(out_dims.total()));
  for (int j1 = 0; j1 <= aux_total; ++j1) {
    const int j2 = aux_total - j1;
    const double alpha = bs_a.amplitude(m, n, j1);
    if (alpha == 0.0) continue;
    for (int k = 0; k <= n_max; ++k) {
      const int a = k + j1 - aux_detect[0];
      const int b = k + j2 - aux_detect[1];
      if (a < 0 || b < 0) continue;
      const std::array<int, 2> in_occ{k, k};
      const cplx c = input.amplitude(in_occ);
      const double amp_a = bs.amplitude(j1, k, aux_detect[0]);
      const double amp_b = bs.amplitude(j2, k, aux_detect[1]);
      const std::array<int, 2> occ{a, b};
      out(static_cast<Eigen::Index>(out_dims.index(occ))) += c * alpha * amp_a * amp_b;
    }
  }
  const double p = out.squaredNorm();
  if (p <= 0.0) return ConditionalOutcome{FockRegister::zero(out_dims), 0.0, tail};
  out /= std::sqrt(p);
  return ConditionalOutcome{FockRegister(out_dims, std::move(out)), std::min(p, 1.0), tail};
}

double overlap_fidelity(const FockRegister& a, const FockRegister& b) {
  if (a.dims().modes() != b.dims().modes()) throw InvalidArgument("overlap_fidelity: mode count mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.dims().total(); ++i) {
    const auto occ = a.dims().occupation(i);
    bool inside = true;
    for (std::size_t k = 0; k < occ.size(); ++k) inside = inside && occ[k] <= b.dims().cutoff(k);
    if (!inside) continue;
    acc += std::conj(a.amplitudes()(static_cast<Eigen::Index>(i))) *
           b.amplitudes()(static_cast<Eigen::Index>(b.dims().index(occ)));
  }
  return std::norm(acc);
}

std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Tmss: return "tmss";
    case Protocol::Pa: return "pa";
    case Protocol::Ps: return "ps";
    case Protocol::Pc: return "pc";
    case Protocol::Pa2: return "pa2";
    case Protocol::Ps2: return "ps2";
    case Protocol::Pc2: return "pc2";
    case Protocol::Nlpa1: return "nlpa1";
    case Protocol::Nlpa2: return "nlpa2";
  }
  return "?";
}

const std::vector<Protocol>& all_protocols() {
  static const std::vector<Protocol> all{Protocol::Tmss, Protocol::Pa,  Protocol::Ps,    Protocol::Pc,   Protocol::Pa2,
                                         Protocol::Ps2,  Protocol::Pc2, Protocol::Nlpa1, Protocol::Nlpa2};
  return all;
}

std::optional<Protocol> parse_protocol(std::string_view name) {
  for (Protocol p : all_protocols()) {
    if (protocol_name(p) == name) return p;
  }
  return std::nullopt;
}

bool depends_on_transmissivity(Protocol p) { return p != Protocol::Tmss; }

ConditionalOutcome prepare_probe(Protocol p, const SqueezeParams& params, double transmissivity, int n_max) {
  auto local = [&](int in, int detect, TargetModes target) {
    return apply_local_ngo(tmss(params, n_max), NgoSpec{in, detect, transmissivity, target}, n_max);
  };
  switch (p) {
    case Protocol::Tmss: {
      const double tail = std::pow(params.lambda * params.lambda, n_max + 1);
      return ConditionalOutcome{tmss(params, n_max), 1.0, tail};
    }
    case Protocol::Pa: return local(1, 0, TargetModes::B);
    case Protocol::Ps: return local(0, 1, TargetModes::B);
    case Protocol::Pc: return local(1, 1, TargetModes::B);
    case Protocol::Pa2: return local(1, 0, TargetModes::Both);
    case Protocol::Ps2: return local(0, 1, TargetModes::Both);
    case Protocol::Pc2: return local(1, 1, TargetModes::Both);
    case Protocol::Nlpa1: return nlpa_state(1, params, transmissivity, n_max);
    case Protocol::Nlpa2: return nlpa_state(2, params, transmissivity, n_max);
  }
  throw InvalidArgument("prepare_probe: unknown protocol");
}

}  // namespace qillum::engineer
