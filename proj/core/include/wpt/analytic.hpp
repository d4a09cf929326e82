#pragma once

// Closed-form currents, output power and loss ratios for the two-coil,
// three-coil (transmitter, repeater, receiver) and n-channel links at
// resonance. All mutual inductances are signed.

#include <span>
#include <vector>

#include "wpt/circuit.hpp"

namespace wpt::analytic {

struct TwoCoilCurrents {
  Complex tx;
  Complex rx;
};

TwoCoilCurrents two_coil_currents(double r_tx, double r_rx, double r_load, double m, double omega0,
                                  double v_s);

// Mutual inductance that maximises |I_rx| for a two-coil link.
double two_coil_optimal_mutual(double r_tx, double r_rx, double r_load, double omega0);

// Three-coil chain with R_tx = R_rp = R and the receiver resistance folded
// into the load. `a` is the complex denominator, `delta` the coupling
// asymmetry 2 M_tx_rx M_rp_rx w0 / (M_tx_rp R_L) that controls how well the
// lossless simplification holds.
struct ThreeCoilDiagnostics {
  Complex a;
  double delta = 0.0;
  Complex tx;
  Complex rp;
  Complex rx;
};

struct ThreeCoilMutuals {
  double tx_rp = 0.0;
  double tx_rx = 0.0;
  double rp_rx = 0.0;
};

double three_coil_delta(const ThreeCoilMutuals& m, double r_load, double omega0);

ThreeCoilDiagnostics three_coil_currents_full(double r, double r_load, const ThreeCoilMutuals& m,
                                              double omega0, double v_s);

struct ThreeCoilCurrents {
  Complex tx;
  Complex rp;
  Complex rx;
};

// Lossless limit, valid for delta << 1. Callers check the regime with
// three_coil_delta.
ThreeCoilCurrents three_coil_currents_simplified(double r_load, const ThreeCoilMutuals& m,
                                                 double omega0, double v_s);

// Load resistance giving a prescribed delta.
double load_for_delta(const ThreeCoilMutuals& m, double omega0, double delta);

// Receiver current induced by n transmitter/repeater channels.
Complex multichannel_rx_current(std::span<const double> m_tx_rx, std::span<const double> m_rp_rx,
                                std::span<const Complex> i_tx, std::span<const Complex> i_rp,
                                double r, double r_load, double omega0);

double multichannel_output_power(double v_s, double r_load, double k_tx_rp,
                                 std::span<const double> k_rp_rx);

struct EfficiencyBreakdown {
  double xi_tx = 0.0;
  double xi_rp = 0.0;
  double xi_rx = 0.0;
  double gamma = 0.0;  // R_L / R
  double q = 0.0;      // w0 L / R
  double eta = 0.0;
};

EfficiencyBreakdown loss_ratios(int n_channels, double q, double gamma, double k_tx_rp,
                                std::span<const double> k_rp_rx);

// Gamma minimising xi_rp + xi_rx: Gamma* = Q sum(k) / sqrt(n).
double optimal_load_ratio(int n_channels, double q, std::span<const double> k_rp_rx);

// Induced-voltage split at the receiver. Each coil's contribution is the EMF
// -j w M_i,rx I_i; the contributions sum to (R_L + Z_rx) I_rx.
struct LoadVoltageContributions {
  std::vector<Complex> per_coil;  // zero at the receiver index
  Complex tx_total;
  Complex rp_total;
  double tx_percent = 0.0;  // |tx_total| / (|tx_total| + |rp_total|)
  double rp_percent = 0.0;
  double phase_difference_deg = 0.0;  // arg(rp_total) - arg(tx_total), in (-180, 180]
};

LoadVoltageContributions load_voltage_contributions(const WptSystem& system,
                                                    const CurrentSolution& solution, double omega);

}  // namespace wpt::analytic
