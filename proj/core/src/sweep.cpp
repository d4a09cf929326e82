#include "wpt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "wpt/error.hpp"

namespace wpt {
namespace {

// Identical parallel coils: M depends only on |dy| and |dz|. Evaluating every
// pair through this form makes mirrored placements bitwise identical.
double offset_mutual(const SpiralCoil& tmpl, double dy, double dz, const QuadratureOptions& q) {
  const SpiralCoil a = tmpl.moved_to({});
  const SpiralCoil b = tmpl.moved_to({0.0, std::abs(dy), std::abs(dz)});
  return coil_mutual(a, b, q);
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void LinearArrayLayout::validate() const {
  if (n_channels < 1) throw ValidationError("array needs at least one channel");
  if (!(channel_spacing > 0.0)) throw ValidationError("channel spacing must be > 0");
  if (repeaters && !(z_tx_rp > 0.0)) throw ValidationError("Tx-repeater gap must be > 0");
  if (!(z_rp_rx > 0.0)) throw ValidationError("receiver gap must be > 0");
  coil.validate();
}

ArraySystemFactory::ArraySystemFactory(LinearArrayLayout layout, ElectricalParams electrical,
                                       QuadratureOptions quadrature)
    : layout_(std::move(layout)), electrical_(std::move(electrical)), quadrature_(quadrature) {
  layout_.validate();
  const int n = layout_.n_channels;
  const auto check_size = [n](const std::vector<CoilElectrical>& v, const char* what) {
    if (!v.empty() && v.size() != static_cast<std::size_t>(n)) {
      throw ValidationError(std::string(what) + " overrides must list all " + std::to_string(n) +
                            " coils");
    }
  };
  check_size(electrical_.tx, "transmitter");
  check_size(electrical_.rp, "repeater");
  if (!(electrical_.operating_frequency > 0.0) || !(electrical_.tuning_frequency > 0.0)) {
    throw ValidationError("frequencies must be > 0");
  }

  const double geometric_l = coil_self_inductance(layout_.coil, quadrature_);

  struct Placement {
    Role role;
    int channel;
    std::string name;
    const CoilElectrical* overrides;
  };
  std::vector<Placement> placements;
  static const CoilElectrical kNone{};
  for (int i = 0; i < n; ++i) {
    placements.push_back({Role::Tx, i, "Tx" + std::to_string(i + 1),
                          electrical_.tx.empty() ? &kNone : &electrical_.tx[i]});
  }
  if (layout_.repeaters) {
    for (int i = 0; i < n; ++i) {
      placements.push_back({Role::Repeater, i, "Rp" + std::to_string(i + 1),
                            electrical_.rp.empty() ? &kNone : &electrical_.rp[i]});
    }
  }
  placements.push_back({Role::Rx, -1, "Rx", &electrical_.rx});

  for (const auto& p : placements) {
    Resonator r;
    r.role = p.role;
    r.name = p.name;
    r.inductance = p.overrides->inductance.value_or(geometric_l);
    r.resistance = p.overrides->resistance.value_or(electrical_.default_resistance);
    const double f0 = electrical_.use_measured_f0
                          ? p.overrides->resonant_frequency.value_or(electrical_.tuning_frequency)
                          : electrical_.tuning_frequency;
    r.capacitance = tune_capacitance(r.inductance, f0);
    if (p.role != Role::Rx) {
      const double z = p.role == Role::Tx ? 0.0 : layout_.z_tx_rp;
      r.coil = layout_.coil.moved_to({0.0, p.channel * layout_.channel_spacing, z});
      coils_.push_back(*r.coil);
    }
    base_.resonators.push_back(std::move(r));
  }

  const std::size_t total = base_.resonators.size();
  base_.mutual = RealMatrix(total);
  std::map<std::pair<double, double>, double> cache;
  for (std::size_t i = 0; i < coils_.size(); ++i) {
    for (std::size_t j = i + 1; j < coils_.size(); ++j) {
      if (layout_.coupling_mode == CouplingMode::Ideal && placements[i].channel != placements[j].channel) {
        continue;
      }
      const double dy = std::abs(coils_[j].center.y - coils_[i].center.y);
      const double dz = std::abs(coils_[j].center.z - coils_[i].center.z);
      auto [it, fresh] = cache.try_emplace({dy, dz}, 0.0);
      if (fresh) it->second = offset_mutual(layout_.coil, dy, dz, quadrature_);
      base_.mutual(i, j) = base_.mutual(j, i) = it->second;
    }
  }

  base_.source_voltage = electrical_.source_voltage;
  base_.source_resistance = electrical_.source_resistance;
  base_.frequency = electrical_.operating_frequency;
  base_.load_resistance = electrical_.load_resistance;
}

double ArraySystemFactory::receiver_height() const {
  return layout_.repeaters ? layout_.z_tx_rp + layout_.z_rp_rx : layout_.z_rp_rx;
}

void ArraySystemFactory::set_load_resistance(double r_load) {
  electrical_.load_resistance = r_load;
  base_.load_resistance = r_load;
}

WptSystem ArraySystemFactory::at(double y, double z) const {
  WptSystem sys = base_;
  const std::size_t rx = sys.resonators.size() - 1;
  const SpiralCoil rx_coil = layout_.coil.moved_to({0.0, y, z});
  sys.resonators[rx].coil = rx_coil;
  for (std::size_t i = 0; i < coils_.size(); ++i) {
    const double m = offset_mutual(layout_.coil, y - coils_[i].center.y, z - coils_[i].center.z,
                                   quadrature_);
    sys.mutual(i, rx) = sys.mutual(rx, i) = m;
  }
  sys.validate();
  return sys;
}

ArraySystemFactory build_array_system(const LinearArrayLayout& layout,
                                      const ElectricalParams& electrical,
                                      const QuadratureOptions& quadrature) {
  return ArraySystemFactory(layout, electrical, quadrature);
}

void SweepSpec::validate() const {
  if (steps < 2) throw ValidationError("sweep needs at least 2 steps");
  if (!std::isfinite(y_start) || !std::isfinite(y_end)) {
    throw ValidationError("sweep bounds must be finite");
  }
}

double SweepSpec::position(int i) const {
  if (i == steps - 1) return y_end;
  return y_start + (y_end - y_start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<std::size_t> SweepResult::indices(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (roles[i] == role) out.push_back(i);
  }
  return out;
}

namespace {
std::vector<double> normalise(std::vector<double> v, Normalization mode) {
  if (mode == Normalization::PerTraceMax) {
    const double peak = *std::max_element(v.begin(), v.end());
    if (peak > 0.0) {
      for (double& x : v) x /= peak;
    }
  }
  return v;
}
}  // namespace

std::vector<double> SweepResult::trace(std::size_t coil) const {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(std::abs(r.currents.at(coil)));
  return normalise(std::move(v), normalization);
}

std::vector<double> SweepResult::input_trace() const {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(std::abs(r.input_current));
  return normalise(std::move(v), normalization);
}

std::vector<double> SweepResult::efficiencies() const {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r.efficiency);
  return v;
}

namespace {

SweepRow solve_row(const ArraySystemFactory& factory, double y) {
  const WptSystem sys = factory.at(y);
  const double w = sys.omega();
  const CurrentSolution sol = solve_currents(sys, w);

  SweepRow row;
  row.y = y;
  row.y_over_d0 = y / factory.layout().channel_spacing;
  row.currents = sol.currents;
  row.output_power = sol.output_power;
  row.efficiency = sol.efficiency;
  row.residual = sol.residual;

  double loss_tx = 0.0;
  double loss_rp = 0.0;
  double loss_rx = 0.0;
  double loss_total = sol.source_loss;
  for (std::size_t i = 0; i < sys.resonators.size(); ++i) {
    loss_total += sol.losses[i];
    switch (sys.resonators[i].role) {
      case Role::Tx:
        row.input_current += sol.currents[i];
        loss_tx += sol.losses[i];
        break;
      case Role::Repeater:
        loss_rp += sol.losses[i];
        break;
      case Role::Rx:
        loss_rx += sol.losses[i];
        break;
    }
  }
  if (sol.output_power > 0.0) {
    row.xi_tx = loss_tx / sol.output_power;
    row.xi_rp = loss_rp / sol.output_power;
    row.xi_rx = loss_rx / sol.output_power;
  }
  row.energy_imbalance = std::abs(sol.input_power - loss_total - sol.output_power) /
                         std::max(std::abs(sol.input_power), 1e-300);
  row.contributions = analytic::load_voltage_contributions(sys, sol, w);
  return row;
}

}  // namespace

SweepResult sweep_receiver(const ArraySystemFactory& factory, const SweepSpec& spec,
                           unsigned threads) {
  spec.validate();
  SweepResult result;
  result.normalization = spec.normalization;
  {
    const WptSystem probe = factory.at(spec.position(0));
    for (const auto& r : probe.resonators) {
      result.names.push_back(r.name);
      result.roles.push_back(r.role);
    }
  }
  result.rows.resize(static_cast<std::size_t>(spec.steps));

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.steps));

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  int first_error_index = spec.steps;

  const auto worker = [&] {
    for (int i = next++; i < spec.steps; i = next++) {
      const double y = spec.position(i);
      try {
        result.rows[static_cast<std::size_t>(i)] = solve_row(factory, y);
      } catch (const NumericalError& e) {
        std::ostringstream msg;
        msg << "receiver at y = " << y * 1e3 << " mm: " << e.what();
        std::lock_guard lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::make_exception_ptr(NumericalError(msg.str()));
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

double max_abs_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("traces differ in length");
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

double relative_variation(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
}

IdealPracticalComparison compare_ideal_practical(const LinearArrayLayout& layout,
                                                 const ElectricalParams& electrical,
                                                 const SweepSpec& spec,
                                                 const QuadratureOptions& quadrature) {
  LinearArrayLayout ideal = layout;
  ideal.coupling_mode = CouplingMode::Ideal;
  LinearArrayLayout practical = layout;
  practical.coupling_mode = CouplingMode::Practical;

  IdealPracticalComparison out;
  out.ideal = sweep_receiver(build_array_system(ideal, electrical, quadrature), spec);
  out.practical = sweep_receiver(build_array_system(practical, electrical, quadrature), spec);
  for (std::size_t c = 0; c < out.ideal.names.size(); ++c) {
    out.max_deviation =
        std::max(out.max_deviation, max_abs_deviation(out.ideal.trace(c), out.practical.trace(c)));
  }
  out.max_deviation = std::max(
      out.max_deviation, max_abs_deviation(out.ideal.input_trace(), out.practical.input_trace()));
  return out;
}

SweepResult conventional_baseline(const LinearArrayLayout& layout,
                                  const ElectricalParams& electrical, const SweepSpec& spec,
                                  const QuadratureOptions& quadrature) {
  LinearArrayLayout conventional = layout;
  conventional.repeaters = false;
  ElectricalParams params = electrical;
  params.rp.clear();
  return sweep_receiver(build_array_system(conventional, params, quadrature), spec);
}

double delta_rule_load(const LinearArrayLayout& layout, double omega0, double delta,
                       const QuadratureOptions& quadrature) {
  layout.validate();
  analytic::ThreeCoilMutuals m;
  m.tx_rp = offset_mutual(layout.coil, 0.0, layout.z_tx_rp, quadrature);
  m.rp_rx = offset_mutual(layout.coil, 0.0, layout.z_rp_rx, quadrature);
  m.tx_rx = offset_mutual(layout.coil, 0.0, layout.z_tx_rp + layout.z_rp_rx, quadrature);
  return analytic::load_for_delta(m, omega0, delta);
}

double max_efficiency_load(const ArraySystemFactory& factory, double y) {
  const WptSystem sys = factory.at(y);
  const auto rps = sys.indices(Role::Repeater);
  if (rps.empty()) throw ValidationError("max-efficiency load needs a repeater row");
  const std::size_t rx = sys.rx_index();
  std::vector<double> l_rp, r_rp, k;
  for (auto i : rps) {
    l_rp.push_back(sys.resonators[i].inductance);
    r_rp.push_back(sys.resonators[i].resistance);
    k.push_back(sys.mutual(i, rx) /
                std::sqrt(sys.resonators[i].inductance * sys.resonators[rx].inductance));
  }
  const double r = mean(r_rp);
  if (!(r > 0.0)) throw ValidationError("max-efficiency load needs lossy repeaters");
  const double q = sys.omega() * mean(l_rp) / r;
  return r * analytic::optimal_load_ratio(static_cast<int>(rps.size()), q, k);
}

}  // namespace wpt
