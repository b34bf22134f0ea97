#include "qillum/cli/presets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>

#include "qillum/cli/csv.hpp"
#include "qillum/error.hpp"

namespace qillum::cli {

namespace {

using engineer::Protocol;

enum class Kind { Entropy, Success, ErrorCurve, Gain, Snr };

struct Preset {
  Kind kind;
  std::vector<Protocol> protocols;
  TStarRule rule = TStarRule::Entropy;  // error-curve panels
  bool lossy = false;                   // default eta = 0.1
  bool photon_diff_nlpa = false;        // fig9b
  std::vector<std::string> files;
};

const std::vector<Protocol> kOne{Protocol::Pa, Protocol::Ps, Protocol::Pc, Protocol::Nlpa1};
const std::vector<Protocol> kTwo{Protocol::Pa2, Protocol::Ps2, Protocol::Pc2, Protocol::Nlpa2};
const std::vector<Protocol> kMixed{Protocol::Pa2, Protocol::Ps2, Protocol::Pc2, Protocol::Nlpa1};
const std::vector<Protocol> kGainOne{Protocol::Nlpa1, Protocol::Pa, Protocol::Pc, Protocol::Ps};
const std::vector<Protocol> kGainMixed{Protocol::Nlpa1, Protocol::Pa2, Protocol::Pc2, Protocol::Ps2};

const std::map<std::string, Preset>& registry() {
  static const std::map<std::string, Preset> presets{
      {"fig1a", {Kind::Entropy, kOne, TStarRule::Entropy, false, false, {"fig1a.csv"}}},
      {"fig1b", {Kind::Success, kOne, TStarRule::Entropy, false, false, {"fig1b.csv"}}},
      {"fig1c", {Kind::ErrorCurve, kOne, TStarRule::Entropy, false, false, {"fig1c.csv"}}},
      {"fig1d", {Kind::ErrorCurve, kOne, TStarRule::Success, false, false, {"fig1d.csv"}}},
      {"fig3", {Kind::Gain, kGainOne, TStarRule::Entropy, false, false, {"fig3a.csv", "fig3b.csv", "fig3c.csv", "fig3d.csv"}}},
      {"fig4a", {Kind::Entropy, kTwo, TStarRule::Entropy, false, false, {"fig4a.csv"}}},
      {"fig4b", {Kind::Success, kTwo, TStarRule::Entropy, false, false, {"fig4b.csv"}}},
      {"fig4c", {Kind::ErrorCurve, kTwo, TStarRule::Entropy, false, false, {"fig4c.csv"}}},
      {"fig4d", {Kind::ErrorCurve, kTwo, TStarRule::Success, false, false, {"fig4d.csv"}}},
      {"fig7a", {Kind::ErrorCurve, kMixed, TStarRule::Entropy, false, false, {"fig7a.csv"}}},
      {"fig7b", {Kind::ErrorCurve, kMixed, TStarRule::Success, false, false, {"fig7b.csv"}}},
      {"fig8", {Kind::Gain, kGainMixed, TStarRule::Entropy, false, false, {"fig8a.csv", "fig8b.csv", "fig8c.csv", "fig8d.csv"}}},
      {"fig9a", {Kind::Snr, kMixed, TStarRule::Entropy, false, false, {"fig9a.csv"}}},
      {"fig9b", {Kind::Snr, kMixed, TStarRule::Entropy, false, true, {"fig9b.csv"}}},
      {"fig11a", {Kind::ErrorCurve, kMixed, TStarRule::Entropy, true, false, {"fig11a.csv"}}},
      {"fig11b", {Kind::ErrorCurve, kMixed, TStarRule::Success, true, false, {"fig11b.csv"}}},
      {"fig12", {Kind::Gain, kGainMixed, TStarRule::Entropy, true, false, {"fig12a.csv", "fig12b.csv", "fig12c.csv", "fig12d.csv"}}},
  };
  return presets;
}

const Preset& lookup(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw InvalidArgument("unknown preset '" + name + "'");
  return it->second;
}

std::string col(std::string_view prefix, Protocol p) { return std::string(prefix) + std::string(engineer::protocol_name(p)); }

std::vector<double> default_kappa_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 50; ++i) g.push_back(i / 1000.0);
  return g;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<std::string> preset_files(const std::string& name) { return lookup(name).files; }

std::vector<std::filesystem::path> run_preset(const std::string& name, const RunConfig& cfg, Evaluator& ev,
                                              std::ostream& log) {
  const Preset& preset = lookup(name);
  std::vector<Protocol> protocols;
  for (Protocol p : preset.protocols) {
    if (cfg.protocols.empty() || std::find(cfg.protocols.begin(), cfg.protocols.end(), p) != cfg.protocols.end()) {
      protocols.push_back(p);
    }
  }
  if (protocols.empty()) throw InvalidArgument("preset " + name + ": none of the requested protocols apply");

  std::vector<double> t_storage;
  const std::vector<double>& t_grid = effective_T_grid(cfg, t_storage);
  const std::vector<long long> k_grid = cfg.K_grid.empty() ? default_K_grid() : cfg.K_grid;
  const std::optional<double> eta = preset.lossy ? std::optional<double>(cfg.eta.value_or(0.1)) : cfg.eta;
  const double kappa = cfg.kappa;

  std::map<Protocol, double> t_entropy;
  std::map<Protocol, double> t_success;
  for (Protocol p : protocols) {
    t_entropy[p] = ev.tstar(p, TStarRule::Entropy, t_grid);
    t_success[p] = ev.tstar(p, TStarRule::Success, t_grid);
    log << "T* " << name << ' ' << engineer::protocol_name(p) << " entropy=" << format_real(t_entropy[p])
        << " success=" << format_real(t_success[p]) << '\n';
  }

  std::vector<std::filesystem::path> written;
  switch (preset.kind) {
    case Kind::Entropy:
    case Kind::Success: {
      const bool entropy = preset.kind == Kind::Entropy;
      CsvTable t;
      t.header.push_back("T");
      for (Protocol p : protocols) t.header.push_back(col(entropy ? "EV_" : "P_", p));
      if (entropy) t.header.push_back("EV_tmss");
      for (double tv : t_grid) {
        std::vector<double> row{tv};
        for (Protocol p : protocols) row.push_back(entropy ? ev.entropy(p, tv) : ev.success(p, tv));
        if (entropy) row.push_back(ev.entropy(Protocol::Tmss, 0.0));
        t.add_numeric_row(row);
      }
      written.push_back(write_csv(cfg.out_dir, preset.files.front(), t));
      break;
    }
    case Kind::ErrorCurve: {
      const auto& tsel = preset.rule == TStarRule::Entropy ? t_entropy : t_success;
      CsvTable t;
      t.header.push_back("K");
      if (preset.lossy) t.header.push_back("perr_tmss_noiseless");
      t.header.push_back("perr_tmss");
      for (Protocol p : protocols) t.header.push_back(col("perr_", p));
      for (long long k : k_grid) {
        std::vector<double> row{static_cast<double>(k)};
        if (preset.lossy) row.push_back(ev.p_error(Protocol::Tmss, 0.0, kappa, std::nullopt, k));
        row.push_back(ev.p_error(Protocol::Tmss, 0.0, kappa, eta, k));
        for (Protocol p : protocols) row.push_back(ev.p_error(p, tsel.at(p), kappa, eta, k));
        t.add_numeric_row(row);
      }
      written.push_back(write_csv(cfg.out_dir, preset.files.front(), t));
      break;
    }
    case Kind::Gain: {
      for (std::size_t i = 0; i < preset.protocols.size(); ++i) {
        const Protocol p = preset.protocols[i];
        if (std::find(protocols.begin(), protocols.end(), p) == protocols.end()) continue;
        CsvTable t;
        t.header = {"T", col("G_", p)};
        for (double tv : t_grid) t.add_numeric_row({tv, ev.gain(p, tv, kappa, eta)});
        written.push_back(write_csv(cfg.out_dir, preset.files[i], t));
      }
      break;
    }
    case Kind::Snr: {
      const auto& tsel = cfg.tstar == TStarRule::Entropy ? t_entropy : t_success;
      const std::vector<double> kappas = cfg.grid.empty() ? default_kappa_grid() : cfg.grid;
      for (double kv : kappas) {
        if (!(kv > 0.0 && kv <= 1.0)) throw InvalidArgument("kappa grid values must lie in (0, 1]");
      }
      CsvTable t;
      t.header = {"kappa", "snr_db_tmss"};
      for (Protocol p : protocols) t.header.push_back(col("snr_db_", p));
      for (double kv : kappas) {
        std::vector<double> row{kv, ev.receiver(Protocol::Tmss, 0.0, kv, eta, receiver::Scheme::Dhd, cfg.copies).snr_db};
        for (Protocol p : protocols) {
          const auto scheme = preset.photon_diff_nlpa && p == Protocol::Nlpa1 ? receiver::Scheme::PhotonDiff
                                                                              : receiver::Scheme::Dhd;
          row.push_back(ev.receiver(p, tsel.at(p), kv, eta, scheme, cfg.copies).snr_db);
        }
        t.add_numeric_row(row);
      }
      written.push_back(write_csv(cfg.out_dir, preset.files.front(), t));
      break;
    }
  }
  return written;
}

}  // namespace qillum::cli
