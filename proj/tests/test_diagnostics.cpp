#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cutcell/diagnostics.hpp"
#include "cutcell/error.hpp"
#include "test_support.hpp"

using namespace cutcell;

namespace {

GeometryReport resolved_report(const LevelSetField& f, Rule r) {
  CutCellMesh m = build_cut_mesh(f);
  resolve(m, f, {r});
  return measure(m);
}

}  // namespace

TEST(Measure, FullySolidCell) {
  const LevelSetField f(HexLattice({1, 1, 1}, Vec3::Zero(), 1.0), std::vector<double>(8, 1.0));
  const GeometryReport r = resolved_report(f, Rule::L1_solid);
  EXPECT_EQ(r.V_solid, 1.0);
  EXPECT_EQ(r.V_void, 0.0);
  EXPECT_EQ(r.interface_area, 0.0);
  EXPECT_EQ(r.solid_components, 1);
  EXPECT_EQ(r.void_components, 0);
  EXPECT_EQ(r.uniform_solid_cells, 1);
  EXPECT_TRUE(r.watertight);
}

TEST(Measure, PlanarHalfCut) {
  const LevelSetField f(HexLattice({1, 1, 1}, Vec3::Zero(), 1.0), {1, -1, 1, -1, 1, -1, 1, -1});
  const GeometryReport r = resolved_report(f, Rule::G1_void);
  EXPECT_NEAR(r.V_solid, 0.5, 1e-15);
  EXPECT_NEAR(r.V_void, 0.5, 1e-15);
  EXPECT_NEAR(r.interface_area, 1.0, 1e-12);
  EXPECT_EQ(r.V_AT, 0.0);
  EXPECT_EQ(r.n_IAT + r.n_BAT, 0);
}

TEST(Measure, ScaledLatticeVolumes) {
  const LevelSetField f(HexLattice({1, 1, 1}, Vec3(5, 5, 5), 0.5), {1, -1, 1, -1, 1, -1, 1, -1});
  const GeometryReport r = resolved_report(f, Rule::G1_void);
  EXPECT_NEAR(r.V_solid, 0.0625, 1e-15);
  EXPECT_NEAR(r.interface_area, 0.25, 1e-13);
}

TEST(Measure, VolumePartitionForEveryRule) {
  const LevelSetField f = testkit::random_field(6, 77, 0.3);
  for (Rule rule : kAllRules) {
    const GeometryReport r = resolved_report(f, rule);
    EXPECT_NEAR(r.V_solid + r.V_void, f.lattice().total_volume(), 1e-9 * f.lattice().total_volume());
    EXPECT_TRUE(r.watertight) << to_string(rule);
    EXPECT_LE(r.V_AT_solid, r.V_AT);
  }
}

TEST(Measure, G1IdentityAndRuleIndependentRatio) {
  const LevelSetField f = testkit::random_field(6, 78);
  const GeometryReport s = resolved_report(f, Rule::G1_solid);
  const GeometryReport v = resolved_report(f, Rule::G1_void);
  EXPECT_GT(s.V_AT, 0.0);
  EXPECT_EQ(s.V_AT, v.V_AT);
  EXPECT_NEAR(s.V_solid - v.V_solid, s.V_AT, 1e-12 * s.total_volume);
  EXPECT_EQ(v.V_AT_solid, 0.0);
  EXPECT_EQ(s.V_AT_solid, s.V_AT);
}

TEST(Components, TwoSpheres) {
  const HexLattice l({12, 6, 6}, Vec3::Zero(), 0.5);
  PrimitiveScene scene;
  scene.primitives.push_back({Sphere{Vec3(1.5, 1.5, 1.5), 1.0}, Phase::solid});
  scene.primitives.push_back({Sphere{Vec3(4.5, 1.5, 1.5), 1.0}, Phase::solid});
  const LevelSetField f = sample_scene(scene, l);
  const GeometryReport r = resolved_report(f, Rule::L1_solid);
  EXPECT_EQ(r.solid_components, 2);
  EXPECT_EQ(r.void_components, 1);
}

TEST(Components, UniformDomain) {
  const LevelSetField f(HexLattice({3, 3, 3}, Vec3::Zero(), 1.0), std::vector<double>(64, 2.0));
  CutCellMesh m = build_cut_mesh(f);
  EXPECT_EQ(component_count(m, Phase::solid), 1);
  EXPECT_EQ(component_count(m, Phase::void_phase), 0);
}

TEST(Components, CheckerFieldDiffersBetweenG1Rules) {
  // Alternating signs: every cell is cut and the AT phases decide connectivity.
  const HexLattice l({4, 4, 4}, Vec3::Zero(), 1.0);
  std::vector<double> v(static_cast<std::size_t>(l.node_count()));
  for (Index n = 0; n < l.node_count(); ++n) v[static_cast<std::size_t>(n)] = l.node_coords(n).sum() % 2 ? -1.0 : 1.0;
  const LevelSetField f(l, v);
  const GeometryReport s = resolved_report(f, Rule::G1_solid);
  const GeometryReport d = resolved_report(f, Rule::G1_void);
  EXPECT_EQ(s.solid_components, 1);
  EXPECT_GT(d.solid_components, s.solid_components);
  EXPECT_EQ(d.void_components, 1);
}

TEST(Watertight, UniformFieldVacuous) {
  const LevelSetField f(HexLattice({2, 2, 2}, Vec3::Zero(), 1.0), std::vector<double>(27, -1.0));
  CutCellMesh m = build_cut_mesh(f);
  const auto r = watertight_check(m);
  EXPECT_TRUE(r.watertight);
  EXPECT_TRUE(r.issues.empty());
}

TEST(Watertight, CorruptedBatIsReported) {
  const LevelSetField f = testkit::random_field(5, 31);
  CutCellMesh m = build_cut_mesh(f);
  resolve(m, f, {Rule::L1_solid});
  ASSERT_TRUE(watertight_check(m).watertight);
  Index bat = -1;
  for (Index t = 0; t < m.tet_count() && bat < 0; ++t)
    if (m.ambiguity(t) == Ambiguity::bat) bat = t;
  ASSERT_GE(bat, 0);
  m.set_phase(bat, *m.phase(bat) == Phase::solid ? Phase::void_phase : Phase::solid);
  const auto r = watertight_check(m);
  EXPECT_FALSE(r.watertight);
  bool named = false;
  // The report names the flipped tet or another tet on the same lattice face.
  for (const auto& issue : r.issues)
    named |= issue.tet >= 0 && m.bat_lattice_face(issue.tet) == m.bat_lattice_face(bat);
  EXPECT_TRUE(named);
}

TEST(Watertight, InterfaceOfPlanarCutIsClosedAgainstBoundary) {
  const HexLattice l({3, 3, 3}, Vec3::Zero(), 1.0);
  std::vector<double> v(static_cast<std::size_t>(l.node_count()));
  for (Index n = 0; n < l.node_count(); ++n) v[static_cast<std::size_t>(n)] = 1.3 - l.node_position(n).dot(Vec3(0.6, 0.3, 0.2));
  const LevelSetField f(l, v);
  CutCellMesh m = build_cut_mesh(f);
  resolve(m, f, {Rule::G2_max});
  EXPECT_TRUE(watertight_check(m).watertight);
}

TEST(ShellStudy, ThickVersusThinUnderG1Void) {
  const auto rows = shell_study(kDefaultShellInner, kDefaultShellOuters, kDefaultShellPreset, {Rule::G1_void});
  ASSERT_EQ(rows.size(), kDefaultShellOuters.size());
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].report.ratio_AT, rows[i - 1].report.ratio_AT);
  EXPECT_LT(rows.back().report.ratio_AT, 0.01);
  EXPECT_GT(rows.front().report.ratio_AT, 10 * rows.back().report.ratio_AT);
  EXPECT_THROW(shell_study(0.6, {2.0}, ShellPreset::octant, {Rule::G1_void}), ValidationError);
}

TEST(ShellStudy, CsvHeaderIsStable) {
  EXPECT_EQ(shell_csv_header(),
            "inner_radius,outer_radius,thickness,thickness_over_h,rule,V_solid,V_void,V_AT,V_AT_solid,ratio_AT,"
            "ratio_AT_solid,interface_area,solid_components,void_components,watertight,n_IAT,n_BAT");
  for (ShellPreset p : {ShellPreset::full, ShellPreset::octant}) EXPECT_EQ(shell_preset_from_string(to_string(p)), p);
}

TEST(Atlas, SingleCornerClassHasNoAts) {
  for (SymmetryGroup g : kAllSymmetryGroups) {
    const auto rows = npac_atlas(g);
    EXPECT_EQ(static_cast<int>(rows.size()), NpacTable(g).class_count());
    int total = 0;
    for (const auto& row : rows) {
      total += row.orbit_size;
      EXPECT_EQ(row.iats + row.bats <= row.tets, true);
      const int solid = __builtin_popcount(row.representative);
      if (solid == 1 || solid == 7) EXPECT_EQ(row.iats + row.bats, 0);
      if (row.crossings < 4) EXPECT_EQ(row.iats + row.bats, 0);
    }
    EXPECT_EQ(total, 254);
  }
}

TEST(CompareRules, AtFreeFieldGivesIdenticalReports) {
  const HexLattice l({3, 3, 3}, Vec3::Zero(), 1.0);
  std::vector<double> v(static_cast<std::size_t>(l.node_count()));
  for (Index n = 0; n < l.node_count(); ++n) v[static_cast<std::size_t>(n)] = 1.6 - l.node_position(n).x();
  const LevelSetField f(l, v);
  const auto cmp = compare_rules(f, {kAllRules.begin(), kAllRules.end()}, DeciderVariant::classical_saddle);
  for (const auto& r : cmp.reports) {
    EXPECT_EQ(r.V_solid, cmp.reports.front().V_solid);
    EXPECT_EQ(r.solid_components, cmp.reports.front().solid_components);
  }
}
