#pragma once

// Self and mutual inductance of planar spiral coils with z-parallel axes.
//
// A spiral is approximated by concentric circular filaments. Mutual
// inductance between two filaments is the Neumann double integral
//
//   M = mu0 r_a r_b / (4 pi) * Int Int cos(p1 - p2) / D(p1, p2) dp1 dp2
//
// evaluated with a tensor-product trapezoid rule, which converges
// geometrically for this smooth periodic integrand. The rate is set by how
// close the two filaments come to each other, so the order is picked per
// pair (see QuadratureOptions).

#include <vector>

namespace wpt {

inline constexpr double kMu0 = 1.25663706212e-6;  // H/m

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  bool operator==(const Vec3&) const = default;
};

// Circular filament in a plane normal to z.
struct FilamentLoop {
  double radius = 0.0;  // m
  Vec3 center;
};

// Planar spiral: `turns` concentric loops stepping inward by `radial_pitch`
// from outer_diameter / 2. All lengths in metres.
struct SpiralCoil {
  double outer_diameter = 0.0;
  int turns = 1;
  double radial_pitch = 0.0;
  double wire_diameter = 0.0;
  Vec3 center;

  double outer_radius() const { return 0.5 * outer_diameter; }
  double inner_radius() const { return outer_radius() - (turns - 1) * radial_pitch; }
  double wire_radius() const { return 0.5 * wire_diameter; }

  // Throws ValidationError unless all lengths are positive and the innermost
  // loop clears the wire radius.
  void validate() const;

  SpiralCoil moved_to(Vec3 c) const {
    SpiralCoil out = *this;
    out.center = c;
    return out;
  }
  SpiralCoil scaled(double s) const;
};

// Order selection for the Neumann quadrature.
//
// With `adaptive` set, a pair whose closest approach is d_min uses
//   N = next_pow2(ceil(32 / acosh(1 + d_min^2 / (2 r_a r_b))))
// clamped to [base_order, max_order]. The acosh term is the exact width of
// the analyticity strip for coaxial loops, so the trapezoid error is about
// exp(-32) there. Filaments that cross (d_min = 0) run at max_order.
// Coaxial pairs reduce exactly to a 1-D sum, so they are allowed to go up to
// max_coaxial_order. With `adaptive` cleared every pair uses base_order.
struct QuadratureOptions {
  int base_order = 64;
  int max_order = 512;
  int max_coaxial_order = 1 << 16;
  bool adaptive = true;
};

std::vector<FilamentLoop> decompose_to_filaments(const SpiralCoil& coil);

// Quadrature order filament_mutual would use for this pair.
int quadrature_order(const FilamentLoop& a, const FilamentLoop& b,
                     const QuadratureOptions& opts = {});

// Signed mutual inductance (H). Throws SingularConfigurationError for
// coincident loops.
double filament_mutual(const FilamentLoop& a, const FilamentLoop& b,
                       const QuadratureOptions& opts = {});

double coil_mutual(const SpiralCoil& a, const SpiralCoil& b, const QuadratureOptions& opts = {});

// Thin circular loop, L = mu0 r (ln(8 r / r_w) - 2).
double single_loop_inductance(double loop_radius, double wire_radius);

double coil_self_inductance(const SpiralCoil& coil, const QuadratureOptions& opts = {});

double coupling_coefficient(const SpiralCoil& a, const SpiralCoil& b,
                            const QuadratureOptions& opts = {});

struct UncouplingResult {
  double distance = 0.0;  // m, lateral offset where M crosses zero
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  double mutual_at_low = 0.0;
  double mutual_at_high = 0.0;
  int evaluations = 0;
};

inline constexpr double kUncouplingTolerance = 10e-6;  // m

// Lateral offset (along +x) at which two copies of `coil` separated by
// `axial_gap` have zero mutual inductance. Searches
// [0.5, 1.5] * outer_diameter; throws NoSignChangeError if M does not change
// sign there.
UncouplingResult find_uncoupling_distance(const SpiralCoil& coil, double axial_gap,
                                          const QuadratureOptions& opts = {});

}  // namespace wpt
