#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "svg.hpp"

namespace wpt::cli {
namespace {

constexpr double kMm = 1e-3;

const SpiralCoil& need_coil(const RunConfig& cfg) {
  if (!cfg.coil) throw ValidationError("config needs a coil section");
  return *cfg.coil;
}

void need_array(const RunConfig& cfg) {
  need_coil(cfg);
  if (!cfg.layout) throw ValidationError("config needs a layout section");
  if (!cfg.electrical || !cfg.load) throw ValidationError("config needs an electrical section with a load");
  if (!cfg.sweep) throw ValidationError("config needs a sweep section");
  cfg.sweep->validate();
}

ArraySystemFactory make_factory(const RunConfig& cfg, const LinearArrayLayout& layout) {
  ElectricalParams e = *cfg.electrical;
  if (!layout.repeaters) e.rp.clear();
  e.load_resistance = cfg.load->rule == LoadRule::Fixed ? cfg.load->resistance : 1.0;
  return ArraySystemFactory(layout, e, cfg.quadrature);
}

std::string csv_row(std::initializer_list<double> values) {
  std::string out;
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  return out;
}

std::string sweep_csv(const SweepResult& r, int n, double d0) {
  std::string out = sweep_csv_header(n) + "\n";
  const auto tx = r.indices(Role::Tx);
  const auto rp = r.indices(Role::Repeater);
  const auto rx = r.indices(Role::Rx).at(0);
  std::vector<std::vector<double>> tx_traces, rp_traces;
  for (auto i : tx) tx_traces.push_back(r.trace(i));
  for (auto i : rp) rp_traces.push_back(r.trace(i));
  const auto rx_trace = r.trace(rx);
  const auto in_trace = r.input_trace();

  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    const auto& row = r.rows[k];
    std::string line = format_number(row.y / kMm) + "," + format_number(row.y / d0);
    for (const auto& t : tx_traces) line += "," + format_number(t[k]);
    for (int c = 0; c < n; ++c) {
      const double v = rp_traces.empty() ? 0.0 : rp_traces[static_cast<std::size_t>(c)][k];
      line += "," + format_number(v);
    }
    line += "," + format_number(rx_trace[k]) + "," + format_number(in_trace[k]);
    line += "," + csv_row({row.output_power, row.efficiency, row.xi_tx, row.xi_rp, row.xi_rx});
    out += line + "\n";
  }
  return out;
}

std::string contributions_csv(const SweepResult& r, double d0) {
  std::string out = "y_mm,y_over_d0,tx_share_pct,rp_share_pct,phase_difference_deg\n";
  for (const auto& row : r.rows) {
    out += csv_row({row.y / kMm, row.y / d0, row.contributions.tx_percent,
                    row.contributions.rp_percent, row.contributions.phase_difference_deg}) +
           "\n";
  }
  return out;
}

std::vector<double> x_over_d0(const SweepResult& r) {
  std::vector<double> x;
  for (const auto& row : r.rows) x.push_back(row.y_over_d0);
  return x;
}

std::vector<double> abs_rx(const SweepResult& r) {
  const auto rx = r.indices(Role::Rx).at(0);
  std::vector<double> v;
  for (const auto& row : r.rows) v.push_back(std::abs(row.currents[rx]));
  return v;
}

std::string describe_load(const RunConfig& cfg, double r_load) {
  std::ostringstream s;
  s << "load resistance " << format_number(r_load) << " ohm (";
  switch (cfg.load->rule) {
    case LoadRule::Fixed:
      s << "fixed";
      break;
    case LoadRule::Delta:
      s << "delta rule, delta = " << cfg.load->delta << " at receiver gap "
        << cfg.load->reference_gap / kMm << " mm";
      break;
    case LoadRule::MaxEfficiency:
      s << "max-efficiency rule at y = " << cfg.load->position / kMm << " mm";
      break;
  }
  s << ")";
  return s.str();
}

double resolve_load_with(const RunConfig& cfg, const ArraySystemFactory& factory) {
  switch (cfg.load->rule) {
    case LoadRule::Fixed:
      return cfg.load->resistance;
    case LoadRule::Delta: {
      LinearArrayLayout ref = *cfg.layout;
      ref.z_rp_rx = cfg.load->reference_gap;
      return delta_rule_load(ref, 2.0 * std::numbers::pi * cfg.electrical->operating_frequency,
                             cfg.load->delta, cfg.quadrature);
    }
    case LoadRule::MaxEfficiency:
      return max_efficiency_load(factory, cfg.load->position);
  }
  return cfg.load->resistance;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string sweep_csv_header(int n) {
  std::string h = "y_mm,y_over_d0";
  for (int i = 1; i <= n; ++i) h += ",i_tx" + std::to_string(i) + "_norm";
  for (int i = 1; i <= n; ++i) h += ",i_rp" + std::to_string(i) + "_norm";
  h += ",i_rx_norm,i_in_norm,p_out_w,eta,xi_tx,xi_rp,xi_rx";
  return h;
}

double resolve_load(const RunConfig& cfg) {
  need_array(cfg);
  if (cfg.load->rule == LoadRule::Fixed) return cfg.load->resistance;
  return resolve_load_with(cfg, make_factory(cfg, *cfg.layout));
}

CommandResult cmd_d0(const RunConfig& cfg) {
  const SpiralCoil& coil = need_coil(cfg);
  const UncouplingResult r = find_uncoupling_distance(coil, cfg.d0_axial_gap, cfg.quadrature);

  CommandResult out;
  std::ostringstream rep;
  rep << "uncoupling distance d0 = " << format_number(r.distance / kMm) << " mm"
      << " (axial gap " << format_number(cfg.d0_axial_gap / kMm) << " mm)\n"
      << "  final bracket [" << format_number(r.bracket_low / kMm) << ", "
      << format_number(r.bracket_high / kMm) << "] mm, tolerance "
      << format_number(kUncouplingTolerance / kMm) << " mm\n"
      << "  initial M: " << format_number(r.mutual_at_low) << " H at "
      << format_number(0.5 * coil.outer_diameter / kMm) << " mm, " << format_number(r.mutual_at_high)
      << " H at " << format_number(1.5 * coil.outer_diameter / kMm) << " mm\n"
      << "  mutual-inductance evaluations: " << r.evaluations << "\n";
  out.report = rep.str();
  out.files["d0.csv"] = "axial_gap_mm,d0_mm,bracket_low_mm,bracket_high_mm,evaluations\n" +
                        csv_row({cfg.d0_axial_gap / kMm, r.distance / kMm, r.bracket_low / kMm,
                                 r.bracket_high / kMm, static_cast<double>(r.evaluations)}) +
                        "\n";
  return out;
}

CommandResult cmd_coupling_curve(const RunConfig& cfg) {
  const SpiralCoil& coil = need_coil(cfg);
  const auto& spec = cfg.coupling_curve;
  const SpiralCoil base = coil.moved_to({});
  const double l = coil_self_inductance(base, cfg.quadrature);

  CommandResult out;
  std::string csv = "z_mm,offset_mm,k\n";
  std::vector<double> x;
  std::vector<Series> series;
  for (double z : spec.axial_gaps) {
    Series s{"z = " + format_number(z / kMm) + " mm", {}};
    for (int i = 0; i < spec.steps; ++i) {
      const double offset =
          spec.offset_start + (spec.offset_end - spec.offset_start) * i / (spec.steps - 1);
      // coincident coils: the pair is the coil itself
      const double m = offset == 0.0 && z == 0.0
                           ? l
                           : coil_mutual(base, base.moved_to({0.0, offset, z}), cfg.quadrature);
      const double k = m / l;
      csv += csv_row({z / kMm, offset / kMm, k}) + "\n";
      if (series.empty()) x.push_back(offset / kMm);
      s.y.push_back(k);
    }
    series.push_back(std::move(s));
  }
  out.files["coupling_curve.csv"] = std::move(csv);
  if (cfg.svg) {
    out.files["coupling_curve.svg"] =
        svg_line_chart("Coupling coefficient vs lateral offset", "offset (mm)", x, series);
  }
  out.report = "self inductance " + format_number(l * 1e6) + " uH; " +
               std::to_string(spec.axial_gaps.size() * static_cast<std::size_t>(spec.steps)) +
               " coupling points written\n";
  return out;
}

CommandResult cmd_sweep(const RunConfig& cfg) {
  need_array(cfg);
  ArraySystemFactory factory = make_factory(cfg, *cfg.layout);
  const double r_load = resolve_load_with(cfg, factory);
  factory.set_load_resistance(r_load);

  const SweepResult r = sweep_receiver(factory, *cfg.sweep);
  const double d0 = cfg.layout->channel_spacing;
  const int n = cfg.layout->n_channels;

  CommandResult out;
  out.files["sweep.csv"] = sweep_csv(r, n, d0);
  out.files["voltage_contributions.csv"] = contributions_csv(r, d0);
  if (cfg.svg) {
    std::vector<Series> currents;
    for (auto i : r.indices(Role::Tx)) currents.push_back({r.names[i], r.trace(i)});
    currents.push_back({"Rx", r.trace(r.indices(Role::Rx).at(0))});
    currents.push_back({"input", r.input_trace()});
    out.files["sweep_currents.svg"] =
        svg_line_chart("Normalised coil currents", "y_rx / d0", x_over_d0(r), currents);
    out.files["sweep_efficiency.svg"] = svg_line_chart(
        "Efficiency", "y_rx / d0", x_over_d0(r), {Series{"eta", r.efficiencies()}});
  }

  const auto eta = r.efficiencies();
  const auto [lo, hi] = std::minmax_element(eta.begin(), eta.end());
  std::ostringstream rep;
  rep << describe_load(cfg, r_load) << "\n"
      << "efficiency min " << format_number(*lo) << ", max " << format_number(*hi)
      << ", spread " << format_number(100.0 * (*hi - *lo)) << " percentage points\n"
      << "output current variation (max-min)/max " << format_number(relative_variation(abs_rx(r)))
      << "\n";
  out.report = rep.str();
  return out;
}

CommandResult cmd_compare(const RunConfig& cfg) {
  need_array(cfg);
  LinearArrayLayout proposed_layout = *cfg.layout;
  proposed_layout.repeaters = true;
  LinearArrayLayout conventional_layout = *cfg.layout;
  conventional_layout.repeaters = false;

  ArraySystemFactory proposed = make_factory(cfg, proposed_layout);
  const double r_load = resolve_load_with(cfg, proposed);
  proposed.set_load_resistance(r_load);
  ArraySystemFactory conventional = make_factory(cfg, conventional_layout);
  conventional.set_load_resistance(r_load);

  const SweepResult p = sweep_receiver(proposed, *cfg.sweep);
  const SweepResult c = sweep_receiver(conventional, *cfg.sweep);
  const double d0 = cfg.layout->channel_spacing;
  const int n = cfg.layout->n_channels;

  const auto p_rx = abs_rx(p);
  const auto c_rx = abs_rx(c);
  const auto p_norm = p.trace(p.indices(Role::Rx).at(0));
  const auto c_norm = c.trace(c.indices(Role::Rx).at(0));

  std::string csv =
      "y_mm,y_over_d0,i_out_norm_proposed,i_out_norm_conventional,i_out_a_proposed,"
      "i_out_a_conventional,eta_proposed,eta_conventional\n";
  for (std::size_t k = 0; k < p.rows.size(); ++k) {
    csv += csv_row({p.rows[k].y / kMm, p.rows[k].y / d0, p_norm[k], c_norm[k], p_rx[k], c_rx[k],
                    p.rows[k].efficiency, c.rows[k].efficiency}) +
           "\n";
  }

  CommandResult out;
  out.files["compare.csv"] = std::move(csv);
  out.files["compare_proposed.csv"] = sweep_csv(p, n, d0);
  out.files["compare_conventional.csv"] = sweep_csv(c, n, d0);
  if (cfg.svg) {
    out.files["compare.svg"] = svg_line_chart(
        "Proposed vs conventional", "y_rx / d0", x_over_d0(p),
        {Series{"i_out proposed", p_norm}, Series{"i_out conventional", c_norm},
         Series{"eta proposed", p.efficiencies()}, Series{"eta conventional", c.efficiencies()}});
  }

  const double pv = relative_variation(p_rx);
  const double cv = relative_variation(c_rx);
  std::ostringstream rep;
  rep << describe_load(cfg, r_load) << "\n"
      << "output current variation: proposed " << format_number(pv) << ", conventional "
      << format_number(cv) << " (ratio " << format_number(pv > 0 ? cv / pv : 0.0) << ")\n";
  const auto pe = p.efficiencies();
  const auto ce = c.efficiencies();
  rep << "efficiency: proposed " << format_number(*std::min_element(pe.begin(), pe.end())) << ".."
      << format_number(*std::max_element(pe.begin(), pe.end())) << ", conventional "
      << format_number(*std::min_element(ce.begin(), ce.end())) << ".."
      << format_number(*std::max_element(ce.begin(), ce.end())) << "\n";
  out.report = rep.str();
  return out;
}

CommandResult cmd_ingest(const std::filesystem::path& touchstone, double r_load,
                         const MeasurementSpec& spec) {
  if (!(r_load > 0.0)) throw ValidationError("ingest needs a load resistance > 0");
  std::ifstream in(touchstone);
  if (!in) throw ValidationError("cannot read Touchstone file " + touchstone.string());
  std::ostringstream text;
  text << in.rdbuf();
  const TouchstoneData data = parse_touchstone(text.str());
  const auto points = efficiency_sweep(data.records, r_load);

  CommandResult out;
  std::string csv = "frequency_hz,eta,i1_abs,i2_abs\n";
  int anomalies = 0;
  for (const auto& p : points) {
    csv += csv_row({p.frequency, p.result.efficiency, std::abs(p.result.i1), std::abs(p.result.i2)}) +
           "\n";
    anomalies += p.result.anomaly;
  }
  out.files["ingest.csv"] = std::move(csv);

  std::ostringstream rep;
  for (const auto& w : data.warnings) rep << "warning: " << w << "\n";
  if (anomalies > 0) {
    rep << "warning: " << anomalies << " point(s) report efficiency >= 1 (non-passive data)\n";
  }
  rep << data.records.size() << " records, load " << format_number(r_load) << " ohm\n";
  try {
    const EfficiencyPoint best = report_point(points, spec.report_center, spec.report_window);
    rep << "reported efficiency " << format_number(best.result.efficiency) << " at "
        << format_number(best.frequency) << " Hz (max within +/-"
        << format_number(100.0 * spec.report_window) << "% of "
        << format_number(spec.report_center) << " Hz)\n";
    const auto rec = std::find_if(data.records.begin(), data.records.end(),
                                  [&](const TwoPortRecord& r) { return r.frequency == best.frequency; });
    const OptimalLoad opt = max_efficiency_load(s_to_z(*rec), 1e-3, 1e4);
    rep << "load maximising efficiency there: " << format_number(opt.load) << " ohm (eta "
        << format_number(opt.efficiency) << ")\n";
  } catch (const ValidationError&) {
    rep << "no records within the reporting window\n";
  }
  out.report = rep.str();
  return out;
}

void write_outputs(const Outputs& files, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + (dir / name).string());
    f << content;
  }
}

}  // namespace wpt::cli
