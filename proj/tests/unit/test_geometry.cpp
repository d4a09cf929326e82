#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace wpt;
using wpt::test::coaxial_mutual_oracle;
using wpt::test::reference_coil;

TEST(Decompose, ReferenceCoilRadii) {
  const auto loops = decompose_to_filaments(reference_coil());
  const double expected[] = {50, 46, 42, 38, 34, 30, 26, 22};
  ASSERT_EQ(loops.size(), 8u);
  for (std::size_t k = 0; k < loops.size(); ++k) {
    EXPECT_NEAR(loops[k].radius, expected[k] * 1e-3, 1e-15);
    EXPECT_EQ(loops[k].center, Vec3{});
  }
}

TEST(Decompose, SingleTurn) {
  const SpiralCoil c{0.08, 1, 0.0, 0.001, {1, 2, 3}};
  const auto loops = decompose_to_filaments(c);
  ASSERT_EQ(loops.size(), 1u);
  EXPECT_DOUBLE_EQ(loops[0].radius, 0.04);
  EXPECT_EQ(loops[0].center, (Vec3{1, 2, 3}));
}

TEST(Decompose, RejectsNonPositiveInnerRadius) {
  // 13 turns still leave a 2 mm innermost loop; 14 turns do not.
  EXPECT_NO_THROW(decompose_to_filaments(SpiralCoil{0.100, 13, 0.004, 0.002, {}}));
  EXPECT_THROW(decompose_to_filaments(SpiralCoil{0.100, 14, 0.004, 0.002, {}}), ValidationError);
  EXPECT_THROW((SpiralCoil{0.1, 8, 0.004, 0.0, {}}.validate()), ValidationError);
  EXPECT_THROW((SpiralCoil{-0.1, 8, 0.004, 0.002, {}}.validate()), ValidationError);
  EXPECT_THROW((SpiralCoil{0.1, 0, 0.004, 0.002, {}}.validate()), ValidationError);
}

TEST(FilamentMutual, CoaxialMatchesEllipticOracle) {
  for (double ra : {0.02, 0.035, 0.05}) {
    for (double rb : {0.02, 0.05}) {
      for (double z : {0.005, 0.01, 0.03, 0.1}) {
        const double m = filament_mutual({ra, {}}, {rb, {0, 0, z}});
        EXPECT_LT(std::abs(m / coaxial_mutual_oracle(ra, rb, z) - 1.0), 1e-6)
            << "ra=" << ra << " rb=" << rb << " z=" << z;
      }
    }
  }
}

TEST(FilamentMutual, CoaxialExampleAt10mm) {
  const double m = filament_mutual({0.05, {}}, {0.05, {0, 0, 0.01}});
  EXPECT_LT(std::abs(m / coaxial_mutual_oracle(0.05, 0.05, 0.01) - 1.0), 1e-6);
}

TEST(FilamentMutual, FarFieldApproachesDipoleLimit) {
  // Coaxial dipole limit M = mu0 pi a^2 b^2 / (2 z^3), about 1.2e-11 H at 1 m.
  const double a = 0.05, z = 1.0;
  const double dipole = kMu0 * std::numbers::pi * a * a * a * a / (2 * z * z * z);
  const double m = filament_mutual({a, {}}, {a, {0.0, 0.0, z}});
  EXPECT_LT(std::abs(m / dipole - 1.0), 0.01);
  EXPECT_LT(std::abs(filament_mutual({a, {}}, {a, {0.02, 0.03, z}})), 2e-11);
  EXPECT_LT(std::abs(filament_mutual({a, {}}, {a, {0.0, 0.0, 10.0}})), 1e-13);
}

TEST(FilamentMutual, ReciprocityIsExact) {
  const FilamentLoop a{0.05, {0.001, -0.02, 0.0}};
  const FilamentLoop b{0.031, {0.03, 0.05, 0.012}};
  EXPECT_EQ(filament_mutual(a, b), filament_mutual(b, a));
  const FilamentLoop c{0.05, {0.0, 0.0575, 0.0}};  // crossing the first loop
  EXPECT_EQ(filament_mutual(a, c), filament_mutual(c, a));
}

TEST(FilamentMutual, CoincidentLoopsThrow) {
  const FilamentLoop a{0.05, {0, 0.01, 0}};
  EXPECT_THROW(filament_mutual(a, a), SingularConfigurationError);
}

TEST(FilamentMutual, OrderDoublingIsStable) {
  // Doubling the order cap changes a non-crossing lateral pair by < 1e-8.
  const FilamentLoop a{0.05, {}};
  const FilamentLoop b{0.042, {0.0, 0.04, 0.01}};
  QuadratureOptions lo, hi;
  hi.base_order = 2 * lo.base_order;
  hi.max_order = 2 * lo.max_order;
  const double m1 = filament_mutual(a, b, lo);
  const double m2 = filament_mutual(a, b, hi);
  EXPECT_LT(std::abs(m1 - m2) / std::abs(m2), 1e-8);
}

TEST(FilamentMutual, OrderSelection) {
  const FilamentLoop a{0.05, {}};
  EXPECT_EQ(quadrature_order(a, {0.05, {0, 0, 0.5}}), 64);
  EXPECT_EQ(quadrature_order(a, {0.05, {0, 0.05, 0}}), 512);  // crossing
  QuadratureOptions fixed;
  fixed.adaptive = false;
  EXPECT_EQ(quadrature_order(a, {0.05, {0, 0.05, 0}}, fixed), 64);
}

TEST(CoilMutual, CoplanarAtDesignSpacingIsSmall) {
  const SpiralCoil c = reference_coil();
  const double aligned_z = coil_mutual(c, c.moved_to({0, 0, 0.01}));
  const double at_d0 = coil_mutual(c, c.moved_to({0, wpt::test::kD0, 0}));
  const double l = coil_self_inductance(c);
  EXPECT_LT(std::abs(at_d0), 0.02 * l);
  EXPECT_GT(aligned_z, 0.0);
}

TEST(CoilMutual, GoldenAxial10mm) {
  const SpiralCoil c = reference_coil();
  EXPECT_NEAR(coil_mutual(c, c.moved_to({0, 0, 0.01})), 3.0809559204257967e-06, 3e-15);
}

TEST(CoilMutual, IdenticalPlacementThrows) {
  const SpiralCoil c = reference_coil();
  EXPECT_THROW(coil_mutual(c, c), SingularConfigurationError);
}

TEST(CoilMutual, DirectionOfOffsetDoesNotMatter) {
  const SpiralCoil c = reference_coil();
  const double mx = coil_mutual(c, c.moved_to({0.03, 0, 0.02}));
  const double my = coil_mutual(c, c.moved_to({0, 0.03, 0.02}));
  const double mneg = coil_mutual(c, c.moved_to({0, -0.03, 0.02}));
  EXPECT_NEAR(mx, my, 1e-12 * std::abs(my));
  EXPECT_EQ(my, mneg);
}

TEST(SelfInductance, ReferenceCoilNearMeasured) {
  const double l = coil_self_inductance(reference_coil());
  EXPECT_GT(l, 0.8 * 4.47e-6);
  EXPECT_LT(l, 1.2 * 4.90e-6);
}

TEST(SelfInductance, SingleTurnEqualsLoopFormula) {
  const SpiralCoil c{0.08, 1, 0.0, 0.001, {}};
  EXPECT_EQ(coil_self_inductance(c), single_loop_inductance(0.04, 0.0005));
  EXPECT_DOUBLE_EQ(single_loop_inductance(0.04, 0.0005),
                   kMu0 * 0.04 * (std::log(8.0 * 0.04 / 0.0005) - 2.0));
}

TEST(SelfInductance, ScalesExactlyWithSize) {
  const SpiralCoil c = reference_coil();
  EXPECT_EQ(coil_self_inductance(c.scaled(2.0)), 2.0 * coil_self_inductance(c));
}

TEST(Coupling, SymmetricAndBounded) {
  const SpiralCoil c = reference_coil();
  const SpiralCoil d = c.moved_to({0, 0.02, 0.015});
  EXPECT_EQ(coupling_coefficient(c, d), coupling_coefficient(d, c));
  EXPECT_LT(std::abs(coupling_coefficient(c, d)), 1.0);
}

TEST(Coupling, DesignSpacingAndFarChannels) {
  const SpiralCoil c = reference_coil();
  EXPECT_LT(std::abs(coupling_coefficient(c, c.moved_to({0, wpt::test::kD0, 0}))), 0.02);
  for (double f : {2.0, 3.0}) {
    const SpiralCoil far = c.moved_to({0, f * wpt::test::kD0, wpt::test::kZTxRp});
    EXPECT_LT(std::abs(coupling_coefficient(c, far)), 0.026) << f << " d0";
  }
}

TEST(Uncoupling, ReferenceCoilCoplanar) {
  const auto r = find_uncoupling_distance(reference_coil(), 0.0);
  EXPECT_NEAR(r.distance, 57.55e-3, 2e-3);
  EXPECT_LE(r.bracket_high - r.bracket_low, 2.0 * kUncouplingTolerance);
  EXPECT_GT(r.mutual_at_low, 0.0);
  EXPECT_LT(r.mutual_at_high, 0.0);
}

TEST(Uncoupling, GoldenAt10mm) {
  const auto r = find_uncoupling_distance(reference_coil(), 0.01);
  EXPECT_NEAR(r.distance, 0.062218650035919879, 1e-9);
}

TEST(Uncoupling, ZeroOfMutual) {
  const SpiralCoil c = reference_coil();
  const auto r = find_uncoupling_distance(c, 0.0);
  const double m_lo = coil_mutual(c, c.moved_to({r.distance - 2 * kUncouplingTolerance, 0, 0}));
  const double m_hi = coil_mutual(c, c.moved_to({r.distance + 2 * kUncouplingTolerance, 0, 0}));
  EXPECT_GT(m_lo, 0.0);
  EXPECT_LT(m_hi, 0.0);
}

TEST(Uncoupling, ScalesWithGeometry) {
  const SpiralCoil c = reference_coil();
  const double d = find_uncoupling_distance(c, 0.0).distance;
  const double d2 = find_uncoupling_distance(c.scaled(2.0), 0.0).distance;
  EXPECT_NEAR(d2, 2.0 * d, 4.0 * kUncouplingTolerance);
}

TEST(Uncoupling, NoSignChangeThrows) {
  // Far apart axially the mutual never turns negative inside the bracket.
  EXPECT_THROW(find_uncoupling_distance(reference_coil(), 1.0), NoSignChangeError);
}
