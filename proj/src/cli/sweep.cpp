#include "qillum/cli/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qillum/cli/evaluator.hpp"
#include "qillum/error.hpp"

namespace qillum::cli {

namespace {

using engineer::Protocol;

std::vector<double> sweep_grid(const RunConfig& cfg) {
  if (!cfg.grid.empty()) return cfg.grid;
  if (cfg.sweep == "T") return cfg.T_grid.empty() ? default_T_grid() : cfg.T_grid;
  if (cfg.sweep == "K") {
    const auto ks = cfg.K_grid.empty() ? default_K_grid() : cfg.K_grid;
    return std::vector<double>(ks.begin(), ks.end());
  }
  throw InvalidArgument("sweep over " + cfg.sweep + " needs --grid");
}

void check_grid(const std::string& param, const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("sweep grid must be non-empty");
  if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidArgument("sweep grid must be sorted ascending");
  for (double v : grid) {
    if (param == "T" && !(v >= 0.0 && v < 1.0)) throw InvalidArgument("T values must lie in [0, 1)");
    if (param == "kappa" && !(v > 0.0 && v <= 1.0)) throw InvalidArgument("kappa values must lie in (0, 1]");
    if (param == "eta" && !(v >= 0.0 && v <= 1.0)) throw InvalidArgument("eta values must lie in [0, 1]");
    if (param == "r" && !(v >= 0.0)) throw InvalidArgument("r values must be >= 0");
    if (param == "K" && !(v >= 1.0 && v == std::floor(v))) throw InvalidArgument("K values must be integers >= 1");
  }
}

}  // namespace

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> p{"T", "kappa", "K", "eta", "r"};
  return p;
}

const std::vector<std::string>& sweep_metrics() {
  static const std::vector<std::string> m{"entropy", "success", "q", "p_error", "exponent", "gain", "snr_db"};
  return m;
}

CsvTable sweep_table(const RunConfig& cfg, std::ostream& log) {
  const auto& params = sweep_parameters();
  if (std::find(params.begin(), params.end(), cfg.sweep) == params.end()) {
    throw InvalidArgument("unknown sweep parameter '" + cfg.sweep + "' (T, kappa, K, eta, r)");
  }
  const auto& metrics = sweep_metrics();
  if (std::find(metrics.begin(), metrics.end(), cfg.metric) == metrics.end()) {
    throw InvalidArgument("unknown metric '" + cfg.metric + "'");
  }
  const std::vector<double> grid = sweep_grid(cfg);
  check_grid(cfg.sweep, grid);

  std::vector<Protocol> protocols = cfg.protocols;
  if (protocols.empty()) {
    protocols = {Protocol::Tmss, Protocol::Pa, Protocol::Ps, Protocol::Pc, Protocol::Nlpa1};
    if (cfg.metric == "gain") protocols.erase(protocols.begin());
  }
  if (cfg.metric == "gain" && std::find(protocols.begin(), protocols.end(), Protocol::Tmss) != protocols.end()) {
    throw InvalidArgument("metric gain is undefined for tmss, the reference protocol");
  }

  std::vector<double> t_storage;
  const std::vector<double>& t_grid = effective_T_grid(cfg, t_storage);

  CsvTable table;
  table.header = {cfg.sweep, "protocol", cfg.metric};

  // One evaluator per squeezing value; r sweeps rebuild it per grid point.
  Evaluator base(cfg);
  for (double v : grid) {
    RunConfig point = cfg;
    Evaluator* ev = &base;
    std::optional<Evaluator> local;
    if (cfg.sweep == "r") {
      point.r = v;
      local.emplace(point);
      ev = &*local;
    }
    for (Protocol p : protocols) {
      double t;
      if (cfg.sweep == "T") {
        t = v;
      } else if (t_grid.size() == 1) {
        t = t_grid.front();
      } else {
        t = ev->tstar(p, cfg.tstar, t_grid);
      }
      const double kappa = cfg.sweep == "kappa" ? v : cfg.kappa;
      const std::optional<double> eta = cfg.sweep == "eta" ? std::optional<double>(v) : cfg.eta;
      const long long k = cfg.sweep == "K" ? static_cast<long long>(v) : cfg.copies;
      double value = 0.0;
      if (cfg.metric == "entropy") {
        value = ev->entropy(p, t);
      } else if (cfg.metric == "success") {
        value = ev->success(p, t);
      } else if (cfg.metric == "q") {
        value = ev->q_value(p, t, kappa, eta);
      } else if (cfg.metric == "p_error") {
        value = ev->p_error(p, t, kappa, eta, k);
      } else if (cfg.metric == "exponent") {
        value = ev->exponent(p, t, kappa, eta);
      } else if (cfg.metric == "gain") {
        value = ev->gain(p, t, kappa, eta);
      } else {
        value = ev->receiver(p, t, kappa, eta, cfg.scheme, k).snr_db;
      }
      table.add_row({format_real(v), std::string(engineer::protocol_name(p)), format_real(value)});
    }
    if (local) {
      for (const auto& w : local->warnings()) log << "warning: " << w << '\n';
    }
  }
  for (const auto& w : base.warnings()) log << "warning: " << w << '\n';
  return table;
}

std::filesystem::path run_sweep(const RunConfig& cfg, std::ostream& log) {
  const CsvTable t = sweep_table(cfg, log);
  return write_csv(cfg.out_dir, "sweep_" + cfg.sweep + "_" + cfg.metric + ".csv", t);
}

}  // namespace qillum::cli
