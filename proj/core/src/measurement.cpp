#include "wpt/measurement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "wpt/error.hpp"

namespace wpt {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view tok, double& out) {
  // from_chars for double is available in libstdc++ 11.
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

double unit_scale(FrequencyUnit u) {
  switch (u) {
    case FrequencyUnit::Hz:
      return 1.0;
    case FrequencyUnit::kHz:
      return 1e3;
    case FrequencyUnit::MHz:
      return 1e6;
    case FrequencyUnit::GHz:
      return 1e9;
  }
  return 1.0;
}

const char* unit_name(FrequencyUnit u) {
  switch (u) {
    case FrequencyUnit::Hz:
      return "Hz";
    case FrequencyUnit::kHz:
      return "kHz";
    case FrequencyUnit::MHz:
      return "MHz";
    case FrequencyUnit::GHz:
      return "GHz";
  }
  return "Hz";
}

const char* format_name(TouchstoneFormat f) {
  switch (f) {
    case TouchstoneFormat::RI:
      return "RI";
    case TouchstoneFormat::MA:
      return "MA";
    case TouchstoneFormat::DB:
      return "DB";
  }
  return "RI";
}

Complex decode(double a, double b, TouchstoneFormat f) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  switch (f) {
    case TouchstoneFormat::RI:
      return {a, b};
    case TouchstoneFormat::MA:
      return std::polar(a, b * kDeg);
    case TouchstoneFormat::DB:
      return std::polar(std::pow(10.0, a / 20.0), b * kDeg);
  }
  return {};
}

void option_line(std::string_view line, int line_no, TouchstoneData& data) {
  const auto toks = split_ws(line.substr(1));
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string t = lower(toks[i]);
    if (t == "hz") {
      data.unit = FrequencyUnit::Hz;
    } else if (t == "khz") {
      data.unit = FrequencyUnit::kHz;
    } else if (t == "mhz") {
      data.unit = FrequencyUnit::MHz;
    } else if (t == "ghz") {
      data.unit = FrequencyUnit::GHz;
    } else if (t == "ri") {
      data.format = TouchstoneFormat::RI;
    } else if (t == "ma") {
      data.format = TouchstoneFormat::MA;
    } else if (t == "db") {
      data.format = TouchstoneFormat::DB;
    } else if (t == "s") {
      // only scattering parameters are supported
    } else if (t == "y" || t == "z" || t == "h" || t == "g") {
      throw ParseError("line " + std::to_string(line_no) + ": only S-parameter files are supported");
    } else if (t == "r") {
      if (i + 1 >= toks.size() || !parse_double(toks[i + 1], data.z0) || !(data.z0 > 0.0)) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": option line needs a positive reference impedance after R");
      }
      ++i;
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown option '" +
                       std::string(toks[i]) + "'");
    }
  }
}

Matrix2 identity() { return Matrix2{{{1.0, 0.0}, {0.0, 1.0}}}; }

Matrix2 add(const Matrix2& a, const Matrix2& b, double sign) {
  Matrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][j] + sign * b[i][j];
  return out;
}

Matrix2 mul(const Matrix2& a, const Matrix2& b) {
  Matrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

Matrix2 inverse(const Matrix2& m, const char* what) {
  const Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  double scale = 0.0;
  for (const auto& r : m)
    for (const auto& v : r) scale = std::max(scale, std::abs(v));
  if (!(std::abs(det) > 1e-14 * scale * scale)) throw DegenerateNetworkError(what);
  return Matrix2{{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

}  // namespace

TouchstoneData parse_touchstone(std::string_view text) {
  TouchstoneData data;
  bool seen_option = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;

    if (toks.front().front() == '#') {
      if (seen_option) {
        data.warnings.push_back("line " + std::to_string(line_no) + ": extra option line ignored");
        continue;
      }
      option_line(line.substr(line.find('#')), line_no, data);
      seen_option = true;
      continue;
    }
    if (toks.front().front() == '[') {
      throw ParseError("line " + std::to_string(line_no) + ": Touchstone 2.0 keywords are not supported");
    }
    if (!seen_option) {
      throw ParseError("line " + std::to_string(line_no) + ": data before the option line");
    }
    if (toks.size() != 9) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 9 columns, found " +
                       std::to_string(toks.size()));
    }
    double v[9];
    for (int i = 0; i < 9; ++i) {
      if (!parse_double(toks[static_cast<std::size_t>(i)], v[i])) {
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                         std::string(toks[static_cast<std::size_t>(i)]) + "'");
      }
    }
    TwoPortRecord rec;
    rec.frequency = v[0] * unit_scale(data.unit);
    rec.z0 = data.z0;
    if (!(rec.frequency > 0.0)) {
      throw ParseError("line " + std::to_string(line_no) + ": frequency must be > 0");
    }
    // Two-port column order is S11 S21 S12 S22.
    rec.s[0][0] = decode(v[1], v[2], data.format);
    rec.s[1][0] = decode(v[3], v[4], data.format);
    rec.s[0][1] = decode(v[5], v[6], data.format);
    rec.s[1][1] = decode(v[7], v[8], data.format);
    data.records.push_back(rec);
  }

  if (data.records.empty()) throw ParseError("no network data found");
  const auto by_freq = [](const TwoPortRecord& a, const TwoPortRecord& b) {
    return a.frequency < b.frequency;
  };
  if (!std::is_sorted(data.records.begin(), data.records.end(), by_freq)) {
    data.warnings.emplace_back("frequencies are not monotone; records were sorted");
    std::stable_sort(data.records.begin(), data.records.end(), by_freq);
  }
  return data;
}

std::string write_touchstone(const std::vector<TwoPortRecord>& records, TouchstoneFormat format,
                             FrequencyUnit unit, double z0) {
  std::string out = "! two-port network data\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "# %s S %s R %.17g\n", unit_name(unit), format_name(format), z0);
  out += buf;
  const double scale = unit_scale(unit);
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out += buf;
  };
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g", r.frequency / scale);
    out += buf;
    for (const auto& [i, j] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
      const Complex s = r.s[i][j];
      switch (format) {
        case TouchstoneFormat::RI:
          put(s.real());
          put(s.imag());
          break;
        case TouchstoneFormat::MA:
          put(std::abs(s));
          put(std::arg(s) * 180.0 / std::numbers::pi);
          break;
        case TouchstoneFormat::DB:
          put(20.0 * std::log10(std::abs(s)));
          put(std::arg(s) * 180.0 / std::numbers::pi);
          break;
      }
    }
    out += '\n';
  }
  return out;
}

Matrix2 s_to_z(const TwoPortRecord& record) {
  const Matrix2 i = identity();
  const Matrix2 lhs = add(i, record.s, 1.0);
  const Matrix2 rhs = inverse(add(i, record.s, -1.0), "I - S is singular: network has no Z-parameters");
  Matrix2 z = mul(lhs, rhs);
  for (auto& r : z)
    for (auto& v : r) v *= record.z0;
  return z;
}

Matrix2 z_to_s(const Matrix2& z, double z0) {
  Matrix2 zi = identity();
  for (auto& r : zi)
    for (auto& v : r) v *= z0;
  return mul(add(z, zi, -1.0), inverse(add(z, zi, 1.0), "Z + Z0 I is singular"));
}

LoadedTwoPort efficiency_from_two_port(const Matrix2& z, double r_load) {
  if (!(r_load > 0.0)) throw ValidationError("load resistance must be > 0");
  const Complex den = z[1][1] + r_load;
  if (std::abs(den) == 0.0) throw DegenerateNetworkError("Z22 + R_L vanishes");
  const Complex zin = z[0][0] - z[0][1] * z[1][0] / den;
  if (std::abs(zin) == 0.0) throw DegenerateNetworkError("input impedance vanishes");
  LoadedTwoPort out;
  out.i1 = 1.0 / zin;
  out.i2 = -z[1][0] / den * out.i1;
  const double p_in = std::real(std::conj(out.i1));
  const double p_out = std::norm(out.i2) * r_load;
  out.efficiency = p_in > 0.0 ? p_out / p_in : 0.0;
  out.anomaly = out.efficiency >= 1.0 || p_in <= 0.0;
  return out;
}

LoadedTwoPort efficiency_from_two_port(const TwoPortRecord& record, double r_load) {
  return efficiency_from_two_port(s_to_z(record), r_load);
}

OptimalLoad max_efficiency_load(const Matrix2& z, double r_min, double r_max) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw ValidationError("load search needs 0 < r_min < r_max");
  // Search in log(R) so the bracket can span decades.
  const auto neg_eta = [&](double log_r) {
    return -efficiency_from_two_port(z, std::exp(log_r)).efficiency;
  };
  const auto [log_r, value] =
      boost::math::tools::brent_find_minima(neg_eta, std::log(r_min), std::log(r_max), 40);
  return {std::exp(log_r), -value};
}

std::vector<EfficiencyPoint> efficiency_sweep(const std::vector<TwoPortRecord>& records,
                                              double r_load) {
  std::vector<EfficiencyPoint> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.frequency, efficiency_from_two_port(r, r_load)});
  return out;
}

EfficiencyPoint report_point(const std::vector<EfficiencyPoint>& points, double center,
                             double window) {
  const EfficiencyPoint* best = nullptr;
  for (const auto& p : points) {
    if (std::abs(p.frequency - center) > window * center) continue;
    if (best == nullptr || p.result.efficiency > best->result.efficiency) best = &p;
  }
  if (best == nullptr) throw ValidationError("no data within the reporting window");
  return *best;
}

std::vector<TwoPortRecord> export_two_port(const WptSystem& system,
                                           const std::vector<double>& frequencies, double z0) {
  std::vector<TwoPortRecord> out;
  out.reserve(frequencies.size());
  for (double f : frequencies) {
    TwoPortRecord r;
    r.frequency = f;
    r.z0 = z0;
    r.s = z_to_s(two_port_impedance(system, 2.0 * std::numbers::pi * f), z0);
    out.push_back(r);
  }
  return out;
}

}  // namespace wpt
