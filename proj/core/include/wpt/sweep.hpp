#pragma once

// Linear multi-channel array: n transmitters in the z = 0 plane at
// y = i * d0, n repeaters stacked z_tx_rp above them, and one receiver that
// moves along y at height z_tx_rp + z_rp_rx (or z_rp_rx above the
// transmitters when the repeater row is removed).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpt/analytic.hpp"
#include "wpt/circuit.hpp"
#include "wpt/geometry.hpp"

namespace wpt {

enum class CouplingMode {
  Practical,  // every mutual term from geometry
  Ideal,      // terms between different channels forced to zero
};

struct LinearArrayLayout {
  int n_channels = 4;
  double channel_spacing = 0.0;  // d0, m
  double z_tx_rp = 0.0;          // m
  double z_rp_rx = 0.0;          // m
  SpiralCoil coil;
  CouplingMode coupling_mode = CouplingMode::Practical;
  bool repeaters = true;

  void validate() const;
};

// Measured or assigned values for one coil. Unset fields fall back to the
// geometry-derived inductance, ElectricalParams::default_resistance and the
// common tuning frequency.
struct CoilElectrical {
  std::optional<double> inductance;          // H
  std::optional<double> resistance;          // ohm
  std::optional<double> resonant_frequency;  // Hz
};

struct ElectricalParams {
  std::vector<CoilElectrical> tx;  // empty or n_channels entries
  std::vector<CoilElectrical> rp;
  CoilElectrical rx;
  double default_resistance = 0.0;
  double tuning_frequency = 1e6;
  double operating_frequency = 1e6;
  // Tune each capacitor to the coil's own resonant_frequency instead of the
  // common tuning frequency.
  bool use_measured_f0 = false;
  double source_voltage = 1.0;
  double source_resistance = 0.0;
  double load_resistance = 0.0;
};

class ArraySystemFactory {
 public:
  ArraySystemFactory(LinearArrayLayout layout, ElectricalParams electrical,
                     QuadratureOptions quadrature = {});

  // Fully populated system with the receiver centred at (0, y, z).
  WptSystem at(double y, double z) const;
  WptSystem at(double y) const { return at(y, receiver_height()); }

  double receiver_height() const;
  const LinearArrayLayout& layout() const { return layout_; }
  const ElectricalParams& electrical() const { return electrical_; }
  void set_load_resistance(double r_load);

 private:
  LinearArrayLayout layout_;
  ElectricalParams electrical_;
  QuadratureOptions quadrature_;
  std::vector<SpiralCoil> coils_;  // array coils, receiver excluded
  WptSystem base_;                 // receiver row present, its couplings zero
};

ArraySystemFactory build_array_system(const LinearArrayLayout& layout,
                                      const ElectricalParams& electrical,
                                      const QuadratureOptions& quadrature = {});

enum class Normalization { PerTraceMax, None };

struct SweepSpec {
  double y_start = 0.0;
  double y_end = 0.0;
  int steps = 61;
  Normalization normalization = Normalization::PerTraceMax;

  void validate() const;
  double position(int i) const;
};

struct SweepRow {
  double y = 0.0;
  double y_over_d0 = 0.0;
  std::vector<Complex> currents;
  Complex input_current;
  double output_power = 0.0;
  double efficiency = 0.0;
  double xi_tx = 0.0;
  double xi_rp = 0.0;
  double xi_rx = 0.0;
  double residual = 0.0;
  double energy_imbalance = 0.0;  // |P_in - losses - P_out| / P_in
  analytic::LoadVoltageContributions contributions;
};

struct SweepResult {
  std::vector<std::string> names;
  std::vector<Role> roles;
  std::vector<SweepRow> rows;
  Normalization normalization = Normalization::PerTraceMax;

  std::vector<std::size_t> indices(Role role) const;
  // |current| of one coil over the sweep, normalised per `normalization`.
  std::vector<double> trace(std::size_t coil) const;
  std::vector<double> input_trace() const;
  std::vector<double> efficiencies() const;
};

// Solves every sweep position; rows come back in position order regardless
// of how many worker threads are used (0 picks hardware concurrency).
SweepResult sweep_receiver(const ArraySystemFactory& factory, const SweepSpec& spec,
                           unsigned threads = 0);

struct IdealPracticalComparison {
  SweepResult ideal;
  SweepResult practical;
  double max_deviation = 0.0;  // over all normalised coil and input traces
};

IdealPracticalComparison compare_ideal_practical(const LinearArrayLayout& layout,
                                                 const ElectricalParams& electrical,
                                                 const SweepSpec& spec,
                                                 const QuadratureOptions& quadrature = {});

// Same transmitters and receiver with the repeater row removed; the
// receiver sits z_rp_rx above the transmitters.
SweepResult conventional_baseline(const LinearArrayLayout& layout,
                                  const ElectricalParams& electrical, const SweepSpec& spec,
                                  const QuadratureOptions& quadrature = {});

double max_abs_deviation(const std::vector<double>& a, const std::vector<double>& b);

// (max - min) / max.
double relative_variation(const std::vector<double>& values);

// Load giving the target delta for a single coaxial channel of the layout
// with the receiver z_rp_rx above the repeater.
double delta_rule_load(const LinearArrayLayout& layout, double omega0, double delta,
                       const QuadratureOptions& quadrature = {});

// Load that minimises the repeater and receiver loss ratios with the
// receiver at lateral position y: R_L = R * Q * sum(k_rp_rx) / sqrt(n),
// using the mean repeater L and R.
double max_efficiency_load(const ArraySystemFactory& factory, double y);

}  // namespace wpt
