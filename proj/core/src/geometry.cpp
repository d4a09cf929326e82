#include "wpt/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <tuple>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "wpt/error.hpp"

namespace wpt {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Number of e-foldings the trapezoid error should shrink by.
constexpr double kTargetDecay = 32.0;

int next_pow2(double n) {
  if (!(n > 1.0)) return 1;
  if (n > static_cast<double>(1 << 30)) return 1 << 30;
  return static_cast<int>(std::bit_ceil(static_cast<std::uint32_t>(std::ceil(n))));
}

// Fixed pair order so that M(a, b) and M(b, a) evaluate the same sum.
bool canonical_less(const FilamentLoop& a, const FilamentLoop& b) {
  return std::tie(a.radius, a.center.x, a.center.y, a.center.z) <
         std::tie(b.radius, b.center.x, b.center.y, b.center.z);
}

struct PairGeometry {
  double ra;
  double rb;
  double rho;  // lateral centre distance
  double z;    // axial centre distance
};

PairGeometry relative(const FilamentLoop& a, const FilamentLoop& b) {
  const Vec3 d = b.center - a.center;
  return {a.radius, b.radius, std::hypot(d.x, d.y), d.z};
}

bool is_coaxial(const PairGeometry& g) {
  return g.rho <= 1e-12 * std::max(g.ra, g.rb);
}

// Smallest distance between points of the two circles. A point on loop a
// sits at a distance from b's axis ranging over [|rho - ra|, rho + ra].
double closest_approach(const PairGeometry& g) {
  const double lo = std::abs(g.rho - g.ra);
  const double hi = g.rho + g.ra;
  double radial = 0.0;
  if (g.rb < lo) {
    radial = lo - g.rb;
  } else if (g.rb > hi) {
    radial = g.rb - hi;
  }
  return std::hypot(radial, g.z);
}

int order_for(const PairGeometry& g, const QuadratureOptions& opts) {
  if (!opts.adaptive) return opts.base_order;
  const int cap = is_coaxial(g) ? opts.max_coaxial_order : opts.max_order;
  const double d = closest_approach(g);
  const double strip = std::acosh(1.0 + d * d / (2.0 * g.ra * g.rb));
  const int wanted = strip > 0.0 ? next_pow2(kTargetDecay / strip) : cap;
  return std::clamp(wanted, opts.base_order, std::max(cap, opts.base_order));
}

void check_loop(const FilamentLoop& l) {
  if (!(l.radius > 0.0) || !std::isfinite(l.radius)) {
    throw ValidationError("filament radius must be positive");
  }
}

// Trapezoid rule on [0, 2pi)^2 with loop b sampled at half-step offsets.
double tensor_sum(const PairGeometry& g, int n) {
  const double h = kTwoPi / n;
  std::vector<double> cb(n), sb(n);
  for (int j = 0; j < n; ++j) {
    const double p = (j + 0.5) * h;
    cb[j] = std::cos(p);
    sb[j] = std::sin(p);
  }
  const double z2 = g.z * g.z;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = i * h;
    const double ca = std::cos(p);
    const double sa = std::sin(p);
    const double u = g.rho - g.ra * ca;
    const double v = -g.ra * sa;
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double dx = u + g.rb * cb[j];
      const double dy = v + g.rb * sb[j];
      const double dist = std::sqrt(dx * dx + dy * dy + z2);
      row += (ca * cb[j] + sa * sb[j]) / dist;
    }
    total += row;
  }
  return total * h * h;
}

// Same tensor rule for coaxial loops: the integrand depends only on
// p1 - p2, so the N^2 sum is N copies of a 1-D sum.
double coaxial_sum(const PairGeometry& g, int n) {
  const double h = kTwoPi / n;
  const double base = g.ra * g.ra + g.rb * g.rb + g.z * g.z;
  const double cross = 2.0 * g.ra * g.rb;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double c = std::cos((k + 0.5) * h);
    total += c / std::sqrt(base - cross * c);
  }
  return total * h * h * n;
}

}  // namespace

void SpiralCoil::validate() const {
  const auto bad = [](double v) { return !(v > 0.0) || !std::isfinite(v); };
  if (bad(outer_diameter)) throw ValidationError("coil outer diameter must be positive");
  if (turns < 1) throw ValidationError("coil must have at least one turn");
  if (bad(wire_diameter)) throw ValidationError("coil wire diameter must be positive");
  if (turns > 1 && bad(radial_pitch)) throw ValidationError("coil radial pitch must be positive");
  if (!(inner_radius() > wire_radius())) {
    std::ostringstream msg;
    msg << "innermost loop radius " << inner_radius() * 1e3 << " mm does not clear wire radius "
        << wire_radius() * 1e3 << " mm (outer diameter " << outer_diameter * 1e3 << " mm, "
        << turns << " turns, pitch " << radial_pitch * 1e3 << " mm)";
    throw ValidationError(msg.str());
  }
}

SpiralCoil SpiralCoil::scaled(double s) const {
  SpiralCoil out = *this;
  out.outer_diameter *= s;
  out.radial_pitch *= s;
  out.wire_diameter *= s;
  out.center = s * center;
  return out;
}

std::vector<FilamentLoop> decompose_to_filaments(const SpiralCoil& coil) {
  coil.validate();
  std::vector<FilamentLoop> loops;
  loops.reserve(static_cast<std::size_t>(coil.turns));
  for (int k = 0; k < coil.turns; ++k) {
    loops.push_back({coil.outer_radius() - k * coil.radial_pitch, coil.center});
  }
  return loops;
}

int quadrature_order(const FilamentLoop& a, const FilamentLoop& b, const QuadratureOptions& opts) {
  check_loop(a);
  check_loop(b);
  return canonical_less(b, a) ? order_for(relative(b, a), opts) : order_for(relative(a, b), opts);
}

double filament_mutual(const FilamentLoop& a, const FilamentLoop& b, const QuadratureOptions& opts) {
  check_loop(a);
  check_loop(b);
  if (opts.base_order < 4) throw ValidationError("quadrature order must be at least 4");

  const auto [first, second] = canonical_less(b, a) ? std::pair{b, a} : std::pair{a, b};
  const PairGeometry g = relative(first, second);
  const double scale = std::max(g.ra, g.rb);
  if (g.rho <= 1e-12 * scale && std::abs(g.z) <= 1e-12 * scale &&
      std::abs(g.ra - g.rb) <= 1e-12 * scale) {
    throw SingularConfigurationError("coincident filaments: mutual inductance is singular");
  }

  const int n = order_for(g, opts);
  const double sum = is_coaxial(g) ? coaxial_sum(g, n) : tensor_sum(g, n);
  return kMu0 * g.ra * g.rb / (4.0 * std::numbers::pi) * sum;
}

double coil_mutual(const SpiralCoil& a, const SpiralCoil& b, const QuadratureOptions& opts) {
  const auto la = decompose_to_filaments(a);
  const auto lb = decompose_to_filaments(b);
  double m = 0.0;
  for (const auto& fa : la) {
    for (const auto& fb : lb) m += filament_mutual(fa, fb, opts);
  }
  return m;
}

double single_loop_inductance(double loop_radius, double wire_radius) {
  if (!(loop_radius > wire_radius) || !(wire_radius > 0.0)) {
    throw ValidationError("single loop needs loop radius > wire radius > 0");
  }
  return kMu0 * loop_radius * (std::log(8.0 * loop_radius / wire_radius) - 2.0);
}

double coil_self_inductance(const SpiralCoil& coil, const QuadratureOptions& opts) {
  const auto loops = decompose_to_filaments(coil);
  double l = 0.0;
  for (const auto& loop : loops) l += single_loop_inductance(loop.radius, coil.wire_radius());
  for (std::size_t i = 0; i < loops.size(); ++i) {
    for (std::size_t j = i + 1; j < loops.size(); ++j) {
      l += 2.0 * filament_mutual(loops[i], loops[j], opts);
    }
  }
  return l;
}

double coupling_coefficient(const SpiralCoil& a, const SpiralCoil& b, const QuadratureOptions& opts) {
  const double m = coil_mutual(a, b, opts);
  return m / std::sqrt(coil_self_inductance(a, opts) * coil_self_inductance(b, opts));
}

UncouplingResult find_uncoupling_distance(const SpiralCoil& coil, double axial_gap,
                                          const QuadratureOptions& opts) {
  coil.validate();
  if (!(axial_gap >= 0.0) || !std::isfinite(axial_gap)) {
    throw ValidationError("axial gap must be non-negative");
  }

  UncouplingResult result;
  const auto mutual_at = [&](double offset) {
    ++result.evaluations;
    const Vec3 c = coil.center + Vec3{offset, 0.0, axial_gap};
    return coil_mutual(coil, coil.moved_to(c), opts);
  };

  double lo = 0.5 * coil.outer_diameter;
  double hi = 1.5 * coil.outer_diameter;
  const double m_lo = mutual_at(lo);
  const double m_hi = mutual_at(hi);
  result.mutual_at_low = m_lo;
  result.mutual_at_high = m_hi;
  if (m_lo == 0.0) {
    result.distance = result.bracket_low = result.bracket_high = lo;
    return result;
  }
  if (m_hi == 0.0) {
    result.distance = result.bracket_low = result.bracket_high = hi;
    return result;
  }
  if ((m_lo > 0.0) == (m_hi > 0.0)) {
    std::ostringstream msg;
    msg << "mutual inductance does not change sign on [" << lo * 1e3 << ", " << hi * 1e3
        << "] mm (M = " << m_lo << " H, " << m_hi << " H)";
    throw NoSignChangeError(msg.str());
  }

  std::uintmax_t max_iter = 200;
  const auto close_enough = [](double a, double b) {
    return std::abs(b - a) <= kUncouplingTolerance;
  };
  const auto [a, b] =
      boost::math::tools::toms748_solve(mutual_at, lo, hi, m_lo, m_hi, close_enough, max_iter);
  if (!close_enough(a, b)) throw NumericalError("uncoupling distance search did not converge");
  result.bracket_low = a;
  result.bracket_high = b;
  result.distance = 0.5 * (a + b);
  return result;
}

}  // namespace wpt
