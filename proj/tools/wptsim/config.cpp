#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wpt::cli {
namespace {

using nlohmann::json;

// Typed access to one JSON object that remembers which keys were read so
// leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail_key(key, "must be a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : (seen_.insert(key), fallback);
  }
  double positive(const std::string& key) {
    const double v = number(key);
    if (!(v > 0.0)) fail_key(key, "must be > 0");
    return v;
  }
  int integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) fail_key(key, "must be an integer");
    return v.get<int>();
  }
  int integer(const std::string& key, int fallback) {
    return has(key) ? integer(key) : (seen_.insert(key), fallback);
  }
  bool boolean(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) fail_key(key, "must be true or false");
    return j_.at(key).get<bool>();
  }
  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail_key(key, "must be a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : (seen_.insert(key), fallback);
  }
  Section child(const std::string& key) { return Section(at(key), path_ + "." + key); }
  const json& raw(const std::string& key) { return at(key); }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) fail("unknown key '" + key + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("config " + path_ + ": " + what);
  }
  [[noreturn]] void fail_key(const std::string& key, const std::string& what) const {
    throw ValidationError("config " + path_ + "." + key + ": " + what);
  }

  const std::string& path() const { return path_; }

 private:
  const json& at(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) fail("missing required key '" + key + "'");
    return j_.at(key);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

constexpr double kMm = 1e-3;
constexpr double kMhz = 1e6;

SpiralCoil read_coil(Section s) {
  SpiralCoil c;
  c.outer_diameter = s.positive("outer_diameter_mm") * kMm;
  c.turns = s.integer("turns");
  c.radial_pitch = s.number("radial_pitch_mm", 0.0) * kMm;
  c.wire_diameter = s.positive("wire_diameter_mm") * kMm;
  s.finish();
  c.validate();
  return c;
}

QuadratureOptions read_quadrature(Section s) {
  QuadratureOptions q;
  q.base_order = s.integer("base_order", q.base_order);
  q.max_order = s.integer("max_order", q.max_order);
  q.max_coaxial_order = s.integer("max_coaxial_order", q.max_coaxial_order);
  q.adaptive = s.boolean("adaptive", q.adaptive);
  s.finish();
  if (q.base_order < 4 || q.max_order < q.base_order || q.max_coaxial_order < q.base_order) {
    s.fail("orders must satisfy 4 <= base_order <= max_order, max_coaxial_order");
  }
  return q;
}

CouplingCurveSpec read_curve(Section s) {
  CouplingCurveSpec c;
  c.offset_start = s.number("offset_start_mm") * kMm;
  c.offset_end = s.number("offset_end_mm") * kMm;
  c.steps = s.integer("steps");
  const json& z = s.raw("z_mm");
  if (!z.is_array() || z.empty()) s.fail_key("z_mm", "must be a non-empty array of numbers");
  c.axial_gaps.clear();
  for (const auto& v : z) {
    if (!v.is_number() || v.get<double>() < 0.0) s.fail_key("z_mm", "entries must be numbers >= 0");
    c.axial_gaps.push_back(v.get<double>() * kMm);
  }
  s.finish();
  if (c.steps < 2) s.fail_key("steps", "must be >= 2");
  if (!(c.offset_start >= 0.0) || !(c.offset_end > c.offset_start)) {
    s.fail("need 0 <= offset_start_mm < offset_end_mm");
  }
  return c;
}

LinearArrayLayout read_layout(Section s) {
  LinearArrayLayout l;
  l.n_channels = s.integer("n_channels");
  l.channel_spacing = s.positive("channel_spacing_mm") * kMm;
  l.repeaters = s.boolean("repeaters", true);
  l.z_tx_rp = (l.repeaters ? s.positive("z_tx_rp_mm") : s.number("z_tx_rp_mm", 0.0)) * kMm;
  l.z_rp_rx = s.positive("z_rp_rx_mm") * kMm;
  const std::string mode = s.string("coupling_mode", "practical");
  if (mode == "practical") {
    l.coupling_mode = CouplingMode::Practical;
  } else if (mode == "ideal") {
    l.coupling_mode = CouplingMode::Ideal;
  } else {
    s.fail_key("coupling_mode", "must be \"practical\" or \"ideal\"");
  }
  s.finish();
  if (l.n_channels < 1) s.fail_key("n_channels", "must be >= 1");
  return l;
}

CoilElectrical read_coil_electrical(Section s) {
  CoilElectrical e;
  if (s.has("inductance_uh")) e.inductance = s.positive("inductance_uh") * 1e-6;
  if (s.has("resistance_mohm")) {
    e.resistance = s.number("resistance_mohm") * 1e-3;
    if (*e.resistance < 0.0) s.fail_key("resistance_mohm", "must be >= 0");
  }
  if (s.has("f0_mhz")) e.resonant_frequency = s.positive("f0_mhz") * kMhz;
  s.finish();
  return e;
}

LoadSpec read_load(Section s) {
  LoadSpec load;
  const std::string rule = s.string("rule");
  if (rule == "fixed") {
    load.rule = LoadRule::Fixed;
    load.resistance = s.positive("resistance_ohm");
  } else if (rule == "delta") {
    load.rule = LoadRule::Delta;
    load.delta = s.positive("delta");
    load.reference_gap = s.positive("reference_z_rp_rx_mm") * kMm;
  } else if (rule == "max_efficiency") {
    load.rule = LoadRule::MaxEfficiency;
    load.position = s.number("position_mm", 0.0) * kMm;
  } else {
    s.fail_key("rule", "must be \"fixed\", \"delta\" or \"max_efficiency\"");
  }
  s.finish();
  return load;
}

void read_electrical(Section s, RunConfig& cfg) {
  ElectricalParams e;
  e.operating_frequency = s.positive("frequency_mhz") * kMhz;
  e.tuning_frequency = s.number("tuning_frequency_mhz", e.operating_frequency / kMhz) * kMhz;
  e.use_measured_f0 = s.boolean("use_measured_f0", false);
  e.source_voltage = s.number("source_voltage_v", 1.0);
  e.source_resistance = s.number("source_resistance_ohm", 0.0);
  e.default_resistance = s.number("default_resistance_mohm") * 1e-3;
  if (e.default_resistance < 0.0) s.fail_key("default_resistance_mohm", "must be >= 0");
  if (e.source_resistance < 0.0) s.fail_key("source_resistance_ohm", "must be >= 0");
  if (!(e.tuning_frequency > 0.0)) s.fail_key("tuning_frequency_mhz", "must be > 0");
  cfg.load = read_load(s.child("load"));

  const int n = cfg.layout ? cfg.layout->n_channels : 0;
  if (s.has("coils")) {
    Section coils = s.child("coils");
    const auto named = [&](const std::string& name) -> std::optional<CoilElectrical> {
      if (!coils.has(name)) return std::nullopt;
      return read_coil_electrical(coils.child(name));
    };
    bool any_tx = false, any_rp = false;
    std::vector<CoilElectrical> tx(static_cast<std::size_t>(n)), rp(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (auto v = named("Tx" + std::to_string(i + 1))) {
        tx[static_cast<std::size_t>(i)] = *v;
        any_tx = true;
      }
      if (auto v = named("Rp" + std::to_string(i + 1))) {
        rp[static_cast<std::size_t>(i)] = *v;
        any_rp = true;
      }
    }
    if (auto v = named("Rx")) e.rx = *v;
    coils.finish();
    if (any_tx) e.tx = std::move(tx);
    if (any_rp) e.rp = std::move(rp);
  }
  s.finish();
  cfg.electrical = std::move(e);
}

SweepSpec read_sweep(Section s) {
  SweepSpec sw;
  sw.y_start = s.number("y_start_mm") * kMm;
  sw.y_end = s.number("y_end_mm") * kMm;
  sw.steps = s.integer("steps", 61);
  const std::string norm = s.string("normalization", "per_trace_max");
  if (norm == "per_trace_max") {
    sw.normalization = Normalization::PerTraceMax;
  } else if (norm == "none") {
    sw.normalization = Normalization::None;
  } else {
    s.fail_key("normalization", "must be \"per_trace_max\" or \"none\"");
  }
  s.finish();
  if (sw.steps < 2) s.fail_key("steps", "must be >= 2");
  return sw;
}

MeasurementSpec read_measurement(Section s) {
  MeasurementSpec m;
  m.touchstone = s.string("touchstone", "");
  if (s.has("load_ohm")) m.load = s.positive("load_ohm");
  m.report_center = s.number("report_center_mhz", 1.0) * kMhz;
  m.report_window = s.number("report_window", 0.02);
  s.finish();
  if (!(m.report_center > 0.0) || !(m.report_window > 0.0)) s.fail("report window must be > 0");
  return m;
}

}  // namespace

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& source) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  cfg.source = source;
  Section s(root, "$");
  if (s.has("coil")) cfg.coil = read_coil(s.child("coil"));
  if (s.has("quadrature")) cfg.quadrature = read_quadrature(s.child("quadrature"));
  if (s.has("d0")) {
    Section d = s.child("d0");
    cfg.d0_axial_gap = d.number("axial_gap_mm", 0.0) * kMm;
    d.finish();
    if (cfg.d0_axial_gap < 0.0) d.fail_key("axial_gap_mm", "must be >= 0");
  }
  if (s.has("coupling_curve")) cfg.coupling_curve = read_curve(s.child("coupling_curve"));
  if (s.has("layout")) {
    cfg.layout = read_layout(s.child("layout"));
    if (!cfg.coil) s.fail("layout needs a coil section");
    cfg.layout->coil = *cfg.coil;
    cfg.layout->validate();
  }
  if (s.has("electrical")) read_electrical(s.child("electrical"), cfg);
  if (s.has("sweep")) cfg.sweep = read_sweep(s.child("sweep"));
  if (s.has("measurement")) cfg.measurement = read_measurement(s.child("measurement"));
  if (s.has("output")) {
    Section o = s.child("output");
    cfg.output_dir = o.string("dir", ".");
    cfg.svg = o.boolean("svg", false);
    o.finish();
  }
  s.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

}  // namespace wpt::cli
