// qillum: figure presets and parameter sweeps, written as CSV.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qillum/cli/config.hpp"
#include "qillum/cli/evaluator.hpp"
#include "qillum/cli/presets.hpp"
#include "qillum/cli/sweep.hpp"
#include "qillum/error.hpp"
#include "qillum/simd/kernels.hpp"

namespace {

constexpr int kExitArgs = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int run(int argc, char** argv) {
  CLI::App app{"Quantum-illumination probe engineering and discrimination"};
  app.set_version_flag("--version", "qillum 1.0.0");

  // Flags are collected as raw strings and applied after the config file,
  // so both paths share one parser and one set of range checks.
  std::map<std::string, std::string> flags;
  std::optional<std::string> config_path;
  std::optional<std::string> simd;
  bool list = false;
  auto opt = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  opt("--preset", "preset", "figure preset (fig1a ... fig12)");
  opt("--out", "out_dir", "output directory");
  opt("--r", "r", "squeezing parameter r");
  opt("--kappa", "kappa", "target reflectivity");
  opt("--nth", "n_th", "background mean photon number");
  opt("--eta", "eta", "loss transmissivity applied under H1 (or 'none')");
  opt("--nmax", "n_max", "Fock cutoff per mode");
  opt("--env-cutoff", "env_cutoff", "environment cutoff (0 = automatic)");
  opt("--T", "T", "transmissivity grid: comma list or start:stop:count");
  opt("--K", "K", "copy counts: comma list");
  opt("--protocols", "protocols", "comma list of tmss,pa,ps,pc,pa2,ps2,pc2,nlpa1,nlpa2");
  opt("--scheme", "scheme", "receiver: dhd or photon_diff");
  opt("--sweep", "sweep", "sweep parameter: T, kappa, K, eta or r");
  opt("--metric", "metric", "sweep metric: entropy, success, q, p_error, exponent, gain, snr_db");
  opt("--grid", "grid", "sweep grid (kappa grid for fig9 presets)");
  opt("--tstar", "tstar", "transmissivity rule where T is not swept: entropy or success");
  opt("--copies", "copies", "K used by receiver and single-K metrics");
  app.add_option("--config", config_path, "config file of key = value lines");
  app.add_option("--simd", simd, "force kernel backend: scalar or avx2");
  app.add_flag("--list-presets", list, "print preset names and their files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitArgs;
  }

  if (list) {
    for (const auto& name : qillum::cli::preset_names()) {
      std::cout << name;
      for (const auto& f : qillum::cli::preset_files(name)) std::cout << ' ' << f;
      std::cout << '\n';
    }
    return 0;
  }
  if (simd) {
    if (*simd == "scalar") {
      qillum::simd::set_backend(qillum::simd::Backend::Scalar);
    } else if (*simd == "avx2") {
      qillum::simd::set_backend(qillum::simd::Backend::Avx2);
    } else {
      throw qillum::InvalidArgument("--simd must be scalar or avx2");
    }
  }

  qillum::cli::RunConfig cfg = qillum::cli::default_config();
  if (config_path) qillum::cli::load_config_file(cfg, *config_path);
  for (const auto& [k, v] : flags) qillum::cli::apply_setting(cfg, k, v);
  qillum::cli::validate(cfg);

  if (!cfg.sweep.empty()) {
    if (cfg.metric.empty()) throw qillum::InvalidArgument("--sweep requires --metric");
    const auto path = qillum::cli::run_sweep(cfg, std::cerr);
    std::cout << "wrote " << path.string() << '\n';
    return 0;
  }
  if (cfg.preset == "custom" || cfg.preset.empty()) {
    throw qillum::InvalidArgument("nothing to do: give --preset <name> or --sweep <param> --metric <name>");
  }
  qillum::cli::Evaluator ev(cfg);
  const auto paths = qillum::cli::run_preset(cfg.preset, cfg, ev, std::cout);
  for (const auto& w : ev.warnings()) std::cerr << "warning: " << w << '\n';
  for (const auto& p : paths) std::cout << "wrote " << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qillum::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgs;
  } catch (const qillum::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const qillum::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}
