#pragma once

// Run configuration for wptsim. One JSON document; every length carries its
// unit in the key name (_mm, _mhz, _ohm, _mohm, _uh). Unknown keys are
// rejected. See presets/README.md for the full schema.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wpt/wpt.hpp"

namespace wpt::cli {

struct CouplingCurveSpec {
  double offset_start = 0.0;  // m
  double offset_end = 0.15;
  int steps = 31;
  std::vector<double> axial_gaps{0.0};  // m
};

enum class LoadRule { Fixed, Delta, MaxEfficiency };

struct LoadSpec {
  LoadRule rule = LoadRule::Fixed;
  double resistance = 0.0;       // Fixed
  double delta = 0.1;            // Delta
  double reference_gap = 0.05;   // Delta: receiver gap above the repeater, m
  double position = 0.0;         // MaxEfficiency: receiver y, m
};

struct MeasurementSpec {
  std::string touchstone;          // path, relative to the config file
  std::optional<double> load;      // ohm
  double report_center = 1e6;      // Hz
  double report_window = 0.02;     // relative
};

struct RunConfig {
  std::filesystem::path source;  // config file, for resolving relative paths
  std::optional<SpiralCoil> coil;
  QuadratureOptions quadrature;
  double d0_axial_gap = 0.0;
  CouplingCurveSpec coupling_curve;
  std::optional<LinearArrayLayout> layout;
  std::optional<ElectricalParams> electrical;
  std::optional<LoadSpec> load;
  std::optional<SweepSpec> sweep;
  std::optional<MeasurementSpec> measurement;
  std::filesystem::path output_dir = ".";
  bool svg = false;
};

// Throws ValidationError (or ParseError for malformed JSON).
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& source = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace wpt::cli
