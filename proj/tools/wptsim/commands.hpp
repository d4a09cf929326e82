#pragma once

// wptsim subcommands. Each command validates the configuration, runs the
// computation and returns its outputs as in-memory text; nothing touches the
// filesystem until every output is ready (see write_outputs).

#include <filesystem>
#include <map>
#include <string>

#include "config.hpp"

namespace wpt::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kNumerical = 3 };

// file name -> contents
using Outputs = std::map<std::string, std::string>;

struct CommandResult {
  std::string report;  // human-readable summary for stdout
  Outputs files;
};

CommandResult cmd_d0(const RunConfig& cfg);
CommandResult cmd_coupling_curve(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_compare(const RunConfig& cfg);
CommandResult cmd_ingest(const std::filesystem::path& touchstone, double r_load,
                         const MeasurementSpec& spec);

// Load resistance the config asks for (resolving delta / max-efficiency
// rules against the layout).
double resolve_load(const RunConfig& cfg);

// Exact sweep CSV header for n channels (repeater columns always present).
std::string sweep_csv_header(int n_channels);

std::string format_number(double v);

void write_outputs(const Outputs& files, const std::filesystem::path& dir);

}  // namespace wpt::cli
