#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qillum/cli/config.hpp"
#include "qillum/cli/evaluator.hpp"

namespace qillum::cli {

const std::vector<std::string>& preset_names();

/// CSV file names a preset writes, in order.
std::vector<std::string> preset_files(const std::string& name);

/// Runs a figure preset, writing its CSV files under cfg.out_dir. Selected
/// transmissivities are reported on `log`. Returns the written paths.
std::vector<std::filesystem::path> run_preset(const std::string& name, const RunConfig& cfg, Evaluator& ev,
                                              std::ostream& log);

}  // namespace qillum::cli
