#pragma once

// Shared test fixtures: the reference coil, measured coil values and
// independent oracles that do not go through the library's quadrature.

#include <cmath>
#include <numbers>
#include <random>

#include "wpt/wpt.hpp"

namespace wpt::test {

inline SpiralCoil reference_coil() { return SpiralCoil{0.100, 8, 0.004, 0.002, {}}; }

inline constexpr double kD0 = 57.55e-3;
inline constexpr double kZTxRp = 10e-3;

// Mutual inductance of two coaxial circular filaments (Maxwell):
//   M = mu0 sqrt(a b) [(2/k - k) K(k) - (2/k) E(k)],
//   k^2 = 4 a b / ((a + b)^2 + z^2).
inline double coaxial_mutual_oracle(double a, double b, double z) {
  const double k2 = 4.0 * a * b / ((a + b) * (a + b) + z * z);
  const double k = std::sqrt(k2);
  return kMu0 * std::sqrt(a * b) *
         ((2.0 / k - k) * std::comp_ellint_1(k) - (2.0 / k) * std::comp_ellint_2(k));
}

inline LinearArrayLayout reference_layout(double z_rp_rx) {
  LinearArrayLayout l;
  l.n_channels = 4;
  l.channel_spacing = kD0;
  l.z_tx_rp = kZTxRp;
  l.z_rp_rx = z_rp_rx;
  l.coil = reference_coil();
  return l;
}

// Measured inductance, resistance and resonance per coil. Capacitors are
// tuned to 1 MHz unless use_measured_f0 is switched on.
inline ElectricalParams measured_electrical(double r_load) {
  const double tx_l[] = {4.64, 4.69, 4.69, 4.90};
  const double tx_r[] = {55, 53, 55, 67};
  const double rp_l[] = {4.70, 4.58, 4.61, 4.73};
  const double rp_r[] = {49, 52, 57, 65};
  const double tx_f[] = {0.9972, 0.9968, 0.9990, 0.9990};
  const double rp_f[] = {1.0024, 0.9930, 0.9988, 1.0024};
  ElectricalParams e;
  for (int i = 0; i < 4; ++i) {
    e.tx.push_back({tx_l[i] * 1e-6, tx_r[i] * 1e-3, tx_f[i] * 1e6});
    e.rp.push_back({rp_l[i] * 1e-6, rp_r[i] * 1e-3, rp_f[i] * 1e6});
  }
  e.rx = {4.47e-6, 42e-3, 1.0020e6};
  e.load_resistance = r_load;
  return e;
}

// Identical coils with one resistance everywhere.
inline ElectricalParams uniform_electrical(double r, double r_load) {
  ElectricalParams e;
  e.default_resistance = r;
  e.load_resistance = r_load;
  return e;
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Random series-RLC system with arbitrary roles; at least one Tx and one Rx.
inline WptSystem random_system(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> l_dist(1e-6, 10e-6), r_dist(0.01, 2.0),
      f_dist(0.5e6, 2e6), detune(0.9, 1.1), k_dist(-0.3, 0.3), rl_dist(0.5, 50.0);
  WptSystem s;
  s.frequency = f_dist(rng);
  s.source_voltage = 1.0 + r_dist(rng);
  s.load_resistance = rl_dist(rng);
  for (int i = 0; i < n; ++i) {
    Resonator r;
    r.role = i == n - 1 ? Role::Rx : (i % 2 == 0 ? Role::Tx : Role::Repeater);
    r.inductance = l_dist(rng);
    r.capacitance = tune_capacitance(r.inductance, s.frequency * detune(rng));
    r.resistance = r_dist(rng);
    r.name = std::string(to_string(r.role)) + std::to_string(i);
    s.resonators.push_back(r);
  }
  s.mutual = RealMatrix(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double m = k_dist(rng) * std::sqrt(s.resonators[i].inductance * s.resonators[j].inductance);
      s.mutual(i, j) = s.mutual(j, i) = m;
    }
  }
  return s;
}

}  // namespace wpt::test
