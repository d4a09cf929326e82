#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace wpt;

namespace {

std::vector<double> around_1mhz(int n) {
  std::vector<double> f;
  for (int i = 0; i < n; ++i) f.push_back(0.95e6 + 0.1e6 * i / (n - 1));
  return f;
}

WptSystem reference_array(double z, double r_load, bool measured_f0 = false) {
  ElectricalParams e = wpt::test::measured_electrical(r_load);
  e.use_measured_f0 = measured_f0;
  const ArraySystemFactory f(wpt::test::reference_layout(z), e);
  return f.at(0.0);
}

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

}  // namespace

TEST(Touchstone, ZeroRow) {
  const auto d = parse_touchstone("# MHz S RI R 50\n1.0 0 0 0 0 0 0 0 0\n");
  ASSERT_EQ(d.records.size(), 1u);
  EXPECT_EQ(d.records[0].frequency, 1e6);
  EXPECT_EQ(max_abs_diff(d.records[0].s, Matrix2{}), 0.0);
  EXPECT_EQ(d.format, TouchstoneFormat::RI);
}

TEST(Touchstone, DefaultsAndComments) {
  const auto d = parse_touchstone(
      "! comment\n#\n1 0.5 0 0.1 90 0.1 90 0.5 180 ! trailing\n\n2 0.5 0 0.1 90 0.1 90 0.5 180\n");
  ASSERT_EQ(d.records.size(), 2u);
  EXPECT_EQ(d.records[0].frequency, 1e9);
  EXPECT_EQ(d.format, TouchstoneFormat::MA);
  EXPECT_NEAR(d.records[0].s[1][0].imag(), 0.1, 1e-15);  // S21, MA 0.1 at 90 deg
  EXPECT_NEAR(d.records[0].s[1][1].real(), -0.5, 1e-15);
}

TEST(Touchstone, ColumnOrderIsS11S21S12S22) {
  const auto d = parse_touchstone("# Hz S RI R 50\n5 1 0 2 0 3 0 4 0\n");
  EXPECT_EQ(d.records[0].s[0][0], Complex(1, 0));
  EXPECT_EQ(d.records[0].s[1][0], Complex(2, 0));
  EXPECT_EQ(d.records[0].s[0][1], Complex(3, 0));
  EXPECT_EQ(d.records[0].s[1][1], Complex(4, 0));
}

TEST(Touchstone, DbFormat) {
  const auto d = parse_touchstone("# kHz S DB R 50\n1000 -20 0 0 0 0 0 -6.0205999 0\n");
  EXPECT_NEAR(std::abs(d.records[0].s[0][0]), 0.1, 1e-12);
  EXPECT_NEAR(std::abs(d.records[0].s[1][1]), 0.5, 1e-8);
  EXPECT_EQ(d.records[0].frequency, 1e6);
}

TEST(Touchstone, NonMonotoneFrequenciesAreSortedWithWarning) {
  const auto d = parse_touchstone("# MHz S RI R 50\n2 0 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0 0\n");
  ASSERT_EQ(d.records.size(), 2u);
  EXPECT_LT(d.records[0].frequency, d.records[1].frequency);
  EXPECT_FALSE(d.warnings.empty());
}

TEST(Touchstone, MalformedInputs) {
  EXPECT_THROW(parse_touchstone(""), ParseError);
  EXPECT_THROW(parse_touchstone("! only a comment\n"), ParseError);
  EXPECT_THROW(parse_touchstone("# MHz Y RI R 50\n1 0 0 0 0 0 0 0 0\n"), ParseError);
  EXPECT_THROW(parse_touchstone("# MHz S XY R 50\n1 0 0 0 0 0 0 0 0\n"), ParseError);
  EXPECT_THROW(parse_touchstone("# MHz S RI R -5\n1 0 0 0 0 0 0 0 0\n"), ParseError);
  EXPECT_THROW(parse_touchstone("# MHz S RI R 50\n1 0 0 0 0 0 0 0\n"), ParseError);
  EXPECT_THROW(parse_touchstone("# MHz S RI R 50\n1 0 0 0 0 0 0 0 x\n"), ParseError);
  EXPECT_THROW(parse_touchstone("# MHz S RI R 50\n-1 0 0 0 0 0 0 0 0\n"), ParseError);
  EXPECT_THROW(parse_touchstone("[Version] 2.0\n# MHz S RI R 50\n1 0 0 0 0 0 0 0 0\n"), ParseError);
}

TEST(Touchstone, RoundTripAllFormats) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  std::vector<TwoPortRecord> recs;
  for (int i = 0; i < 20; ++i) {
    TwoPortRecord r;
    r.frequency = 1e6 + 1e3 * i;
    r.z0 = 50.0;
    for (auto& row : r.s)
      for (auto& v : row) v = {u(rng), u(rng)};
    recs.push_back(r);
  }
  for (auto fmt : {TouchstoneFormat::RI, TouchstoneFormat::MA, TouchstoneFormat::DB}) {
    for (auto unit : {FrequencyUnit::Hz, FrequencyUnit::MHz}) {
      const auto d = parse_touchstone(write_touchstone(recs, fmt, unit, 50.0));
      ASSERT_EQ(d.records.size(), recs.size());
      for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_NEAR(d.records[i].frequency, recs[i].frequency, 1e-12 * recs[i].frequency);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            EXPECT_LT(std::abs(d.records[i].s[a][b] - recs[i].s[a][b]),
                      1e-12 * std::abs(recs[i].s[a][b]) + 1e-15);
      }
    }
  }
}

TEST(Conversion, ZeroReflectionIsReferenceImpedance) {
  TwoPortRecord r;
  r.z0 = 50.0;
  const Matrix2 z = s_to_z(r);
  EXPECT_EQ(z[0][0], Complex(50.0, 0.0));
  EXPECT_EQ(z[1][1], Complex(50.0, 0.0));
  EXPECT_EQ(z[0][1], Complex{});
}

TEST(Conversion, InverseRoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 100; ++i) {
    TwoPortRecord r;
    for (auto& row : r.s)
      for (auto& v : row) v = {u(rng) * 0.5, u(rng) * 0.5};
    const Matrix2 s2 = z_to_s(s_to_z(r), r.z0);
    EXPECT_LT(max_abs_diff(s2, r.s), 1e-12);
  }
}

TEST(Conversion, SingularNetworkThrows) {
  TwoPortRecord r;
  r.s[0][0] = r.s[1][1] = 1.0;  // open circuit on both ports
  EXPECT_THROW(s_to_z(r), DegenerateNetworkError);
}

TEST(Export, SolverFixtureParsesBackToGeneratingMatrix) {
  const WptSystem s = reference_array(0.02, 12.5);
  const auto recs = export_two_port(s, around_1mhz(21), 50.0);
  const auto d = parse_touchstone(write_touchstone(recs, TouchstoneFormat::RI, FrequencyUnit::Hz, 50.0));
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_LT(max_abs_diff(d.records[i].s, recs[i].s), 1e-9);
  }
}

TEST(Export, InputReactanceCrossesZeroAtResonance) {
  WptSystem s;
  const double l = 5e-6, c = tune_capacitance(l, 1e6);
  s.resonators = {{Role::Tx, l, c, 0.05, "Tx", {}}, {Role::Rx, l, c, 0.05, "Rx", {}}};
  s.mutual = RealMatrix(2);
  s.mutual(0, 1) = s.mutual(1, 0) = 1e-8;
  s.load_resistance = 10.0;
  const auto recs = export_two_port(s, {0.99e6, 1.01e6}, 50.0);
  EXPECT_LT(s_to_z(recs[0])[0][0].imag(), 0.0);
  EXPECT_GT(s_to_z(recs[1])[0][0].imag(), 0.0);
}

TEST(LoadedEfficiency, MatchesSolverAcrossFrequency) {
  WptSystem s = reference_array(0.02, 12.5);
  const auto freqs = around_1mhz(41);
  const auto recs = export_two_port(s, freqs, 50.0);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const double direct = solve_currents(s, 2 * std::numbers::pi * freqs[i]).efficiency;
    EXPECT_NEAR(efficiency_from_two_port(recs[i], 12.5).efficiency, direct, 1e-6);
  }
}

TEST(LoadedEfficiency, PassiveNetworksStayBelowOne) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const WptSystem s = wpt::test::random_system(rng, 3 + i % 5);
    const auto e = efficiency_from_two_port(two_port_impedance(s, s.omega()), s.load_resistance);
    EXPECT_LE(e.efficiency, 1.0 + 1e-9);
    EXPECT_FALSE(e.anomaly);
  }
}

TEST(LoadedEfficiency, LosslessLinkIsPerfect) {
  Matrix2 z{};
  z[0][1] = z[1][0] = Complex(0.0, 10.0);
  const auto e = efficiency_from_two_port(z, 5.0);
  EXPECT_NEAR(e.efficiency, 1.0, 1e-12);
  Matrix2 lossy = z;
  lossy[0][0] = 0.1;
  EXPECT_LT(efficiency_from_two_port(lossy, 5.0).efficiency, 1.0);
}

TEST(LoadedEfficiency, MonotoneBelowOptimalLoad) {
  const WptSystem s = reference_array(0.02, 12.5);
  const Matrix2 z = two_port_impedance(s, s.omega());
  const OptimalLoad best = max_efficiency_load(z, 1e-3, 1e4);
  double prev = 0.0;
  for (double f : {0.01, 0.05, 0.2, 0.5, 0.9}) {
    const double e = efficiency_from_two_port(z, f * best.load).efficiency;
    EXPECT_GT(e, prev);
    prev = e;
  }
  EXPECT_GE(best.efficiency, prev);
  EXPECT_GT(best.efficiency, efficiency_from_two_port(z, 3.0 * best.load).efficiency);
}

TEST(LoadedEfficiency, MeasuredStyleFixtureInReportedBand) {
  const WptSystem s = reference_array(0.02, 12.5, true);
  const auto recs = export_two_port(s, around_1mhz(41), 50.0);
  const auto pts = efficiency_sweep(recs, 12.5);
  const EfficiencyPoint p = report_point(pts, 1e6, 0.02);
  EXPECT_GT(p.result.efficiency, 0.90);
  EXPECT_LT(p.result.efficiency, 0.97);
  EXPECT_NEAR(p.frequency, 1e6, 0.02e6);
}

TEST(ReportPoint, EmptyWindowThrows) {
  std::vector<EfficiencyPoint> pts{{2e6, {}}};
  EXPECT_THROW(report_point(pts, 1e6, 0.02), ValidationError);
}
