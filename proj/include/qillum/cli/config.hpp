#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qillum/engineer.hpp"
#include "qillum/receiver.hpp"

namespace qillum::cli {

enum class TStarRule { Entropy, Success };

struct RunConfig {
  std::string preset = "custom";
  double r = 0.0;  ///< set from sinh^2 r = 0.05 by default_config()
  double kappa = 0.01;
  double n_th = 1.0;
  std::optional<double> eta;
  int n_max = 24;
  int env_cutoff = 0;  ///< 0 = automatic
  std::vector<double> T_grid;
  std::vector<long long> K_grid;
  std::vector<engineer::Protocol> protocols;  ///< empty = preset default
  receiver::Scheme scheme = receiver::Scheme::Dhd;
  std::string out_dir = "out";

  std::string sweep;   ///< parameter name for --sweep; empty for presets
  std::string metric;
  std::vector<double> grid;  ///< explicit sweep grid
  TStarRule tstar = TStarRule::Entropy;
  long long copies = 1000000;  ///< K used by receiver metrics
};

RunConfig default_config();

/// Default transmissivity grid: 96 uniform points on [0.01, 0.96] plus
/// 0.041, 0.125, 0.5 and 0.99, sorted and de-duplicated.
std::vector<double> default_T_grid();

/// 10^1 .. 10^7, four points per decade, rounded to integers.
std::vector<long long> default_K_grid();

/// Comma list "a,b,c" or "start:stop:count".
std::vector<double> parse_real_grid(std::string_view text);
std::vector<long long> parse_int_list(std::string_view text);
std::vector<engineer::Protocol> parse_protocol_list(std::string_view text);

/// Applies one `key = value` setting. Keys accept '-' or '_' and the short
/// CLI spellings (nth, nmax, out). Throws InvalidArgument on unknown keys or
/// malformed values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Reads `key = value` lines with '#' comments.
void load_config_file(RunConfig& cfg, const std::string& path);
void load_config_stream(RunConfig& cfg, std::istream& in, const std::string& origin);

/// Range checks on every field.
void validate(const RunConfig& cfg);

const std::vector<double>& effective_T_grid(const RunConfig& cfg, std::vector<double>& storage);

}  // namespace qillum::cli
