#pragma once

// Two-port network data in Touchstone (.s2p) form and the loaded-link
// efficiency derived from it.

#include <string>
#include <string_view>
#include <vector>

#include "wpt/circuit.hpp"

namespace wpt {

struct TwoPortRecord {
  double frequency = 0.0;  // Hz
  Matrix2 s{};             // s[i][j] = S_(i+1)(j+1)
  double z0 = 50.0;        // ohm
};

enum class TouchstoneFormat { RI, MA, DB };
enum class FrequencyUnit { Hz, kHz, MHz, GHz };

struct TouchstoneData {
  std::vector<TwoPortRecord> records;  // ascending frequency
  std::vector<std::string> warnings;
  TouchstoneFormat format = TouchstoneFormat::MA;
  FrequencyUnit unit = FrequencyUnit::GHz;
  double z0 = 50.0;
};

// Throws ParseError for a malformed option line, a data row without nine
// numbers, or input with no data rows. Out-of-order frequencies are sorted
// and reported in `warnings`.
TouchstoneData parse_touchstone(std::string_view text);

std::string write_touchstone(const std::vector<TwoPortRecord>& records, TouchstoneFormat format,
                             FrequencyUnit unit, double z0);

// Z = Z0 (I + S)(I - S)^-1. Throws DegenerateNetworkError if I - S is
// singular.
Matrix2 s_to_z(const TwoPortRecord& record);
// S = (Z - Z0 I)(Z + Z0 I)^-1.
Matrix2 z_to_s(const Matrix2& z, double z0);

struct LoadedTwoPort {
  double efficiency = 0.0;
  Complex i1;  // per volt at port 1
  Complex i2;
  bool anomaly = false;  // efficiency >= 1: the data is not passive
};

LoadedTwoPort efficiency_from_two_port(const Matrix2& z, double r_load);
LoadedTwoPort efficiency_from_two_port(const TwoPortRecord& record, double r_load);

struct OptimalLoad {
  double load = 0.0;
  double efficiency = 0.0;
};

// Golden-section style search for the load maximising efficiency over
// [r_min, r_max].
OptimalLoad max_efficiency_load(const Matrix2& z, double r_min, double r_max);

struct EfficiencyPoint {
  double frequency = 0.0;
  LoadedTwoPort result;
};

std::vector<EfficiencyPoint> efficiency_sweep(const std::vector<TwoPortRecord>& records,
                                              double r_load);

// Point of highest efficiency within +/- window (relative) of `center`.
// Throws ValidationError if no point falls in the window.
EfficiencyPoint report_point(const std::vector<EfficiencyPoint>& points, double center,
                             double window);

// Records exported from the circuit model at the given frequencies.
std::vector<TwoPortRecord> export_two_port(const WptSystem& system,
                                           const std::vector<double>& frequencies, double z0);

}  // namespace wpt
