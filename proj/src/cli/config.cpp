#include "qillum/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qillum/error.hpp"

namespace qillum::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw InvalidArgument("invalid number for " + std::string(what) + ": '" + s + "'");
  }
  return v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    // Accept integral values written in scientific notation, e.g. 1e6.
    const double d = parse_real(s, what);
    if (d != std::floor(d) || std::abs(d) > 9e15) {
      throw InvalidArgument("invalid integer for " + std::string(what) + ": '" + s + "'");
    }
    return static_cast<long long>(d);
  }
  return v;
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  for (char& c : k) c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (k == "nth") return "n_th";
  if (k == "nmax") return "n_max";
  if (k == "out") return "out_dir";
  if (k == "t") return "T";
  if (k == "k") return "K";
  return k;
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.r = engineer::SqueezeParams::from_mean_photons(0.05).r;
  return cfg;
}

std::vector<double> default_T_grid() {
  std::vector<double> g;
  for (int i = 0; i < 96; ++i) g.push_back((i + 1) / 100.0);
  for (double extra : {0.041, 0.125, 0.5, 0.99}) g.push_back(extra);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), g.end());
  return g;
}

std::vector<long long> default_K_grid() {
  std::vector<long long> g;
  for (int i = 0; i <= 24; ++i) g.push_back(std::llround(std::pow(10.0, 1.0 + i / 4.0)));
  return g;
}

std::vector<double> parse_real_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InvalidArgument("empty grid");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidArgument("range grid must be start:stop:count");
    const double a = parse_real(parts[0], "grid start");
    const double b = parse_real(parts[1], "grid stop");
    const long long n = parse_integer(parts[2], "grid count");
    if (n < 1) throw InvalidArgument("grid count must be >= 1");
    std::vector<double> g;
    for (long long i = 0; i < n; ++i) g.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return g;
  }
  std::vector<double> g;
  for (auto p : split(text, ',')) g.push_back(parse_real(p, "grid value"));
  return g;
}

std::vector<long long> parse_int_list(std::string_view text) {
  if (trim(text).empty()) throw InvalidArgument("empty integer list");
  std::vector<long long> g;
  for (auto p : split(text, ',')) g.push_back(parse_integer(p, "K"));
  return g;
}

std::vector<engineer::Protocol> parse_protocol_list(std::string_view text) {
  std::vector<engineer::Protocol> out;
  for (auto p : split(text, ',')) {
    const auto proto = engineer::parse_protocol(p);
    if (!proto) throw InvalidArgument("unknown protocol '" + std::string(p) + "'");
    if (std::find(out.begin(), out.end(), *proto) == out.end()) out.push_back(*proto);
  }
  if (out.empty()) throw InvalidArgument("empty protocol list");
  return out;
}

void apply_setting(RunConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = normalize_key(key_in);
  const std::string_view value = trim(value_in);
  if (key == "preset") {
    cfg.preset = std::string(value);
  } else if (key == "r") {
    cfg.r = parse_real(value, key);
  } else if (key == "sinh2r" || key == "mean_photons") {
    cfg.r = engineer::SqueezeParams::from_mean_photons(parse_real(value, key)).r;
  } else if (key == "kappa") {
    cfg.kappa = parse_real(value, key);
  } else if (key == "n_th") {
    cfg.n_th = parse_real(value, key);
  } else if (key == "eta") {
    if (value == "none" || value.empty()) {
      cfg.eta.reset();
    } else {
      cfg.eta = parse_real(value, key);
    }
  } else if (key == "n_max") {
    cfg.n_max = static_cast<int>(parse_integer(value, key));
  } else if (key == "env_cutoff") {
    cfg.env_cutoff = static_cast<int>(parse_integer(value, key));
  } else if (key == "T") {
    cfg.T_grid = parse_real_grid(value);
  } else if (key == "K") {
    cfg.K_grid = parse_int_list(value);
  } else if (key == "protocols") {
    cfg.protocols = parse_protocol_list(value);
  } else if (key == "scheme") {
    const auto s = receiver::parse_scheme(value);
    if (!s) throw InvalidArgument("unknown scheme '" + std::string(value) + "' (dhd or photon_diff)");
    cfg.scheme = *s;
  } else if (key == "out_dir") {
    if (value.empty()) throw InvalidArgument("output directory must not be empty");
    cfg.out_dir = std::string(value);
  } else if (key == "sweep") {
    cfg.sweep = std::string(value);
  } else if (key == "metric") {
    cfg.metric = std::string(value);
  } else if (key == "grid") {
    cfg.grid = parse_real_grid(value);
  } else if (key == "tstar") {
    if (value == "entropy") {
      cfg.tstar = TStarRule::Entropy;
    } else if (value == "success") {
      cfg.tstar = TStarRule::Success;
    } else {
      throw InvalidArgument("tstar must be 'entropy' or 'success'");
    }
  } else if (key == "copies") {
    cfg.copies = parse_integer(value, key);
  } else {
    throw InvalidArgument("unknown configuration key '" + std::string(key_in) + "'");
  }
}

void load_config_stream(RunConfig& cfg, std::istream& in, const std::string& origin) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    try {
      apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  load_config_stream(cfg, in, path);
}

void validate(const RunConfig& cfg) {
  if (!(cfg.r >= 0.0) || !std::isfinite(cfg.r)) throw InvalidArgument("r must be finite and >= 0");
  if (!(cfg.kappa > 0.0 && cfg.kappa <= 1.0)) throw InvalidArgument("kappa must lie in (0, 1]");
  if (!(cfg.n_th >= 0.0)) throw InvalidArgument("n_th must be >= 0");
  if (cfg.eta && !(*cfg.eta >= 0.0 && *cfg.eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
  if (cfg.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  if (cfg.env_cutoff < 0) throw InvalidArgument("env_cutoff must be >= 0");
  for (double t : cfg.T_grid) {
    if (!(t >= 0.0 && t < 1.0)) throw InvalidArgument("T grid values must lie in [0, 1)");
  }
  for (long long k : cfg.K_grid) {
    if (k < 1) throw InvalidArgument("K values must be >= 1");
  }
  if (cfg.copies < 1) throw InvalidArgument("copies must be >= 1");
}

const std::vector<double>& effective_T_grid(const RunConfig& cfg, std::vector<double>& storage) {
  if (!cfg.T_grid.empty()) return cfg.T_grid;
  storage = default_T_grid();
  return storage;
}

}  // namespace qillum::cli
