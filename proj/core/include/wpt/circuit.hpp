#pragma once

// N-coil phasor model of a coupled-resonator link. Every coil is a series
// RLC loop; coils interact only through mutual inductance. Transmitters are
// wired in parallel across one voltage source, the single receiver carries
// the load. Phasor amplitudes are RMS, so P = |I|^2 R with no factor 1/2.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpt/geometry.hpp"
#include "wpt/matrix.hpp"

namespace wpt {

enum class Role { Tx, Repeater, Rx };

const char* to_string(Role role);

struct Resonator {
  Role role = Role::Tx;
  double inductance = 0.0;   // H
  double capacitance = 0.0;  // F
  double resistance = 0.0;   // ohm, series parasitic
  std::string name;
  std::optional<SpiralCoil> coil;
};

struct WptSystem {
  std::vector<Resonator> resonators;
  RealMatrix mutual;  // H, symmetric; diagonal ignored
  double source_voltage = 1.0;
  double load_resistance = 0.0;
  double frequency = 1e6;
  double source_resistance = 0.0;  // shared by the parallel transmitters

  // Throws ValidationError on any broken invariant.
  void validate() const;

  std::size_t rx_index() const;
  std::vector<std::size_t> indices(Role role) const;
  double omega() const;
};

struct CurrentSolution {
  std::vector<Complex> currents;  // A, one per resonator
  double input_power = 0.0;       // W delivered by the ideal source
  double output_power = 0.0;      // W in the load
  std::vector<double> losses;     // W, parasitic loss per resonator
  double source_loss = 0.0;       // W in the source resistance
  double efficiency = 0.0;
  double residual = 0.0;          // ||Z I - V|| / ||V||
};

// Series tuning capacitor, C = 1 / ((2 pi f0)^2 L).
double tune_capacitance(double inductance, double resonant_frequency);

// X = omega L - 1 / (omega C).
double reactance(double inductance, double capacitance, double omega);

ComplexMatrix assemble_impedance_matrix(const WptSystem& system, double omega);

inline constexpr double kResidualLimit = 1e-10;

// Solves Z I = V with the source voltage on every transmitter row.
// Throws SingularMatrixError for degenerate inputs and NumericalError if the
// residual exceeds kResidualLimit.
CurrentSolution solve_currents(const WptSystem& system, double omega);
CurrentSolution solve_currents(const WptSystem& system);

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

// Open-circuit impedance parameters of the link seen as a two-port: port 1
// drives all transmitters in parallel, port 2 is the receiver coil with the
// load removed. Source and load resistances are excluded.
Matrix2 two_port_impedance(const WptSystem& system, double omega);

}  // namespace wpt
