#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qillum/cli/config.hpp"
#include "qillum/cli/csv.hpp"

namespace qillum::cli {

const std::vector<std::string>& sweep_parameters();
const std::vector<std::string>& sweep_metrics();

/// Long-format table: <param>,protocol,<metric>, one row per grid point per
/// protocol. Protocols not evaluated at the swept T use a fixed T: the single
/// value of the T grid if it has one, else the per-protocol T* under cfg.tstar.
CsvTable sweep_table(const RunConfig& cfg, std::ostream& log);

/// Writes sweep_<param>_<metric>.csv under cfg.out_dir.
std::filesystem::path run_sweep(const RunConfig& cfg, std::ostream& log);

}  // namespace qillum::cli
