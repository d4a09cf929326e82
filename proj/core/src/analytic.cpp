#include "wpt/analytic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "wpt/error.hpp"

namespace wpt::analytic {
namespace {
constexpr Complex kJ{0.0, 1.0};
}

TwoCoilCurrents two_coil_currents(double r_tx, double r_rx, double r_load, double m, double omega0,
                                  double v_s) {
  const double rl = r_rx + r_load;
  const double den = omega0 * omega0 * m * m + r_tx * rl;
  return {v_s * rl / den, -kJ * omega0 * m * v_s / den};
}

double two_coil_optimal_mutual(double r_tx, double r_rx, double r_load, double omega0) {
  return std::sqrt(r_tx * (r_rx + r_load)) / omega0;
}

double three_coil_delta(const ThreeCoilMutuals& m, double r_load, double omega0) {
  if (m.tx_rp == 0.0) throw DegenerateCouplingError("delta undefined for zero Tx-repeater coupling");
  return 2.0 * m.tx_rx * m.rp_rx * omega0 / (m.tx_rp * r_load);
}

ThreeCoilDiagnostics three_coil_currents_full(double r, double r_load, const ThreeCoilMutuals& m,
                                              double omega0, double v_s) {
  const double w = omega0;
  const double w2 = w * w;
  ThreeCoilDiagnostics d;
  d.delta = m.tx_rp != 0.0 ? three_coil_delta(m, r_load, w) : 0.0;
  // Written out without delta so that M_tx_rp = 0 stays finite.
  d.a = r * r * r_load + r * w2 * (m.tx_rx * m.tx_rx + m.rp_rx * m.rp_rx) +
        m.tx_rp * m.tx_rp * r_load * w2 - kJ * 2.0 * w * w2 * m.tx_rp * m.tx_rx * m.rp_rx;
  d.tx = (m.rp_rx * m.rp_rx * w2 + r * r_load) * v_s / d.a;
  d.rp = (-kJ * w * m.tx_rp * r_load - w2 * m.tx_rx * m.rp_rx) * v_s / d.a;
  d.rx = (-kJ * w * m.tx_rx * r - w2 * m.tx_rp * m.rp_rx) * v_s / d.a;
  return d;
}

ThreeCoilCurrents three_coil_currents_simplified(double r_load, const ThreeCoilMutuals& m,
                                                 double omega0, double v_s) {
  if (m.tx_rp == 0.0) throw DegenerateCouplingError("simplified currents need M_tx_rp != 0");
  return {m.rp_rx * m.rp_rx * v_s / (m.tx_rp * m.tx_rp * r_load),
          -kJ * v_s / (omega0 * m.tx_rp),
          -m.rp_rx * v_s / (m.tx_rp * r_load)};
}

double load_for_delta(const ThreeCoilMutuals& m, double omega0, double delta) {
  if (!(delta > 0.0)) throw ValidationError("target delta must be > 0");
  if (m.tx_rp == 0.0) throw DegenerateCouplingError("delta undefined for zero Tx-repeater coupling");
  return std::abs(2.0 * m.tx_rx * m.rp_rx * omega0 / (m.tx_rp * delta));
}

Complex multichannel_rx_current(std::span<const double> m_tx_rx, std::span<const double> m_rp_rx,
                                std::span<const Complex> i_tx, std::span<const Complex> i_rp,
                                double r, double r_load, double omega0) {
  const std::size_t n = m_tx_rx.size();
  if (m_rp_rx.size() != n || i_tx.size() != n || i_rp.size() != n) {
    throw ValidationError("multichannel inputs must all have the same length");
  }
  Complex emf{};
  for (std::size_t i = 0; i < n; ++i) {
    emf += kJ * omega0 * m_tx_rx[i] * i_tx[i];
    emf += kJ * omega0 * m_rp_rx[i] * i_rp[i];
  }
  return -emf / (r_load + r);
}

double multichannel_output_power(double v_s, double r_load, double k_tx_rp,
                                 std::span<const double> k_rp_rx) {
  if (k_tx_rp == 0.0) throw DegenerateCouplingError("output power needs nonzero Tx-repeater coupling");
  const double sum = std::accumulate(k_rp_rx.begin(), k_rp_rx.end(), 0.0);
  return v_s * v_s * sum * sum / (k_tx_rp * k_tx_rp * r_load);
}

EfficiencyBreakdown loss_ratios(int n_channels, double q, double gamma, double k_tx_rp,
                                std::span<const double> k_rp_rx) {
  if (!(q > 0.0) || !(gamma > 0.0)) throw ValidationError("loss ratios need Q > 0 and Gamma > 0");
  if (k_tx_rp == 0.0) throw DegenerateCouplingError("loss ratios need nonzero Tx-repeater coupling");
  double sum = 0.0;
  double sum4 = 0.0;
  for (double k : k_rp_rx) {
    sum += k;
    sum4 += k * k * k * k;
  }
  if (sum == 0.0) throw DegenerateCouplingError("repeater-receiver couplings sum to zero");

  EfficiencyBreakdown out;
  out.q = q;
  out.gamma = gamma;
  out.xi_tx = sum4 / (gamma * k_tx_rp * k_tx_rp * sum * sum);
  out.xi_rp = n_channels * gamma / (q * q * sum * sum);
  out.xi_rx = 1.0 / gamma;
  out.eta = 1.0 / (1.0 + out.xi_tx + out.xi_rp + out.xi_rx);
  return out;
}

double optimal_load_ratio(int n_channels, double q, std::span<const double> k_rp_rx) {
  if (n_channels < 1 || !(q > 0.0)) throw ValidationError("optimal load needs n >= 1 and Q > 0");
  const double sum = std::accumulate(k_rp_rx.begin(), k_rp_rx.end(), 0.0);
  if (sum == 0.0) throw DegenerateCouplingError("repeater-receiver couplings sum to zero");
  return q * std::abs(sum) / std::sqrt(static_cast<double>(n_channels));
}

LoadVoltageContributions load_voltage_contributions(const WptSystem& system,
                                                    const CurrentSolution& solution, double omega) {
  const std::size_t rx = system.rx_index();
  LoadVoltageContributions out;
  out.per_coil.resize(system.resonators.size());
  for (std::size_t i = 0; i < system.resonators.size(); ++i) {
    if (i == rx) continue;
    const Complex v = -kJ * omega * system.mutual(i, rx) * solution.currents[i];
    out.per_coil[i] = v;
    if (system.resonators[i].role == Role::Tx) out.tx_total += v;
    if (system.resonators[i].role == Role::Repeater) out.rp_total += v;
  }
  const double tx = std::abs(out.tx_total);
  const double rp = std::abs(out.rp_total);
  if (tx + rp > 0.0) {
    out.tx_percent = 100.0 * tx / (tx + rp);
    out.rp_percent = 100.0 * rp / (tx + rp);
  }
  if (tx > 0.0 && rp > 0.0) {
    double deg = std::arg(out.rp_total / out.tx_total) * 180.0 / std::numbers::pi;
    if (deg <= -180.0) deg += 360.0;
    out.phase_difference_deg = deg;
  }
  return out;
}

}  // namespace wpt::analytic
