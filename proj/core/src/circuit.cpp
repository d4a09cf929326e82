#include "wpt/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wpt/error.hpp"

namespace wpt {

const char* to_string(Role role) {
  switch (role) {
    case Role::Tx:
      return "Tx";
    case Role::Repeater:
      return "Rp";
    case Role::Rx:
      return "Rx";
  }
  return "?";
}

void WptSystem::validate() const {
  const std::size_t n = resonators.size();
  if (mutual.size() != n) {
    throw ValidationError("mutual inductance matrix must be " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
  int rx = 0;
  int tx = 0;
  for (const auto& r : resonators) {
    if (!(r.inductance > 0.0)) throw ValidationError("resonator " + r.name + ": L must be > 0");
    if (!(r.capacitance > 0.0)) throw ValidationError("resonator " + r.name + ": C must be > 0");
    if (!(r.resistance >= 0.0)) throw ValidationError("resonator " + r.name + ": R must be >= 0");
    rx += r.role == Role::Rx;
    tx += r.role == Role::Tx;
  }
  if (rx != 1) throw ValidationError("system needs exactly one receiver, found " + std::to_string(rx));
  if (tx < 1) throw ValidationError("system needs at least one transmitter");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = mutual(i, j);
      const double b = mutual(j, i);
      if (!std::isfinite(a) || std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) {
        throw ValidationError("mutual inductance matrix must be symmetric and finite");
      }
    }
  }
  if (!(load_resistance > 0.0)) throw ValidationError("load resistance must be > 0");
  if (!(frequency > 0.0)) throw ValidationError("operating frequency must be > 0");
  if (!(source_resistance >= 0.0)) throw ValidationError("source resistance must be >= 0");
  if (!std::isfinite(source_voltage)) throw ValidationError("source voltage must be finite");
}

std::size_t WptSystem::rx_index() const {
  const auto it = std::find_if(resonators.begin(), resonators.end(),
                               [](const Resonator& r) { return r.role == Role::Rx; });
  if (it == resonators.end()) throw ValidationError("system has no receiver");
  return static_cast<std::size_t>(it - resonators.begin());
}

std::vector<std::size_t> WptSystem::indices(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < resonators.size(); ++i) {
    if (resonators[i].role == role) out.push_back(i);
  }
  return out;
}

double WptSystem::omega() const { return 2.0 * std::numbers::pi * frequency; }

double tune_capacitance(double inductance, double resonant_frequency) {
  if (!(inductance > 0.0) || !(resonant_frequency > 0.0)) {
    throw ValidationError("tuning needs L > 0 and f0 > 0");
  }
  const double w = 2.0 * std::numbers::pi * resonant_frequency;
  return 1.0 / (w * w * inductance);
}

double reactance(double inductance, double capacitance, double omega) {
  return omega * inductance - 1.0 / (omega * capacitance);
}

ComplexMatrix assemble_impedance_matrix(const WptSystem& system, double omega) {
  system.validate();
  const std::size_t n = system.resonators.size();
  ComplexMatrix z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = system.resonators[i];
    z(i, i) = {r.resistance, reactance(r.inductance, r.capacitance, omega)};
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) z(i, j) = {0.0, omega * system.mutual(i, j)};
    }
  }
  z(system.rx_index(), system.rx_index()) += system.load_resistance;
  if (system.source_resistance > 0.0) {
    const auto tx = system.indices(Role::Tx);
    for (auto i : tx) {
      for (auto j : tx) z(i, j) += system.source_resistance;
    }
  }
  return z;
}

CurrentSolution solve_currents(const WptSystem& system, double omega) {
  if (!(omega > 0.0)) throw ValidationError("angular frequency must be > 0");
  const ComplexMatrix z = assemble_impedance_matrix(system, omega);
  const std::size_t n = system.resonators.size();
  const auto tx = system.indices(Role::Tx);

  std::vector<Complex> v(n);
  for (auto i : tx) v[i] = system.source_voltage;

  CurrentSolution sol;
  sol.currents = solve_dense(z, v);

  const auto zi = multiply(z, sol.currents);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += std::norm(zi[i] - v[i]);
    den += std::norm(v[i]);
  }
  sol.residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  if (!(sol.residual < kResidualLimit)) {
    std::ostringstream msg;
    msg << "circuit solve residual " << sol.residual << " exceeds " << kResidualLimit;
    throw NumericalError(msg.str());
  }

  Complex input_current{};
  for (auto i : tx) input_current += sol.currents[i];
  sol.input_power = std::real(system.source_voltage * std::conj(input_current));
  sol.source_loss = std::norm(input_current) * system.source_resistance;
  sol.losses.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sol.losses[i] = std::norm(sol.currents[i]) * system.resonators[i].resistance;
  }
  sol.output_power = std::norm(sol.currents[system.rx_index()]) * system.load_resistance;
  sol.efficiency = sol.input_power > 0.0 ? sol.output_power / sol.input_power : 0.0;
  return sol;
}

CurrentSolution solve_currents(const WptSystem& system) {
  return solve_currents(system, system.omega());
}

Matrix2 two_port_impedance(const WptSystem& system, double omega) {
  WptSystem open = system;
  const std::size_t rx = open.rx_index();
  // Assemble with a unit load and subtract it again; keeps validate() happy.
  open.load_resistance = 1.0;
  open.source_resistance = 0.0;
  ComplexMatrix z = assemble_impedance_matrix(open, omega);
  z(rx, rx) -= 1.0;

  const std::size_t n = z.size();
  const auto tx = open.indices(Role::Tx);

  // Y_port = B^T Z^-1 B, B columns: all Tx rows, the Rx row.
  std::vector<Complex> drive1(n), drive2(n);
  for (auto i : tx) drive1[i] = 1.0;
  drive2[rx] = 1.0;
  const auto x1 = solve_dense(z, drive1);
  const auto x2 = solve_dense(z, drive2);

  Complex y11{}, y21{};
  for (auto i : tx) {
    y11 += x1[i];
  }
  y21 = x1[rx];
  Complex y12{};
  for (auto i : tx) y12 += x2[i];
  const Complex y22 = x2[rx];

  const Complex det = y11 * y22 - y12 * y21;
  if (std::abs(det) == 0.0) throw SingularMatrixError("two-port admittance matrix is singular");
  return Matrix2{{{y22 / det, -y12 / det}, {-y21 / det, y11 / det}}};
}

}  // namespace wpt
