#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>

#include "cutcell/error.hpp"
#include "cutcell/npac.hpp"

using namespace cutcell;

namespace {

// Oracle: the 48 signed permutation matrices act on corner coordinates in {0,1}^3.
struct Oracle {
  std::vector<std::array<int, 8>> maps;
  std::vector<int> det;

  Oracle() {
    std::array<int, 3> perm{0, 1, 2};
    do {
      for (int flips = 0; flips < 8; ++flips) {
        std::array<int, 8> m{};
        for (int c = 0; c < 8; ++c) {
          const int x[3] = {c & 1, (c >> 1) & 1, (c >> 2) & 1};
          int out = 0;
          for (int a = 0; a < 3; ++a) {
            int v = x[perm[static_cast<std::size_t>(a)]];
            if ((flips >> a) & 1) v = 1 - v;
            out |= v << a;
          }
          m[static_cast<std::size_t>(c)] = out;
        }
        maps.push_back(m);
        // Sign of the permutation times the sign of the flips.
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
        det.push_back(((inversions + __builtin_popcount(static_cast<unsigned>(flips))) % 2) ? -1 : 1);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  static int apply(const std::array<int, 8>& m, int code) {
    int out = 0;
    for (int c = 0; c < 8; ++c)
      if ((code >> c) & 1) out |= 1 << m[static_cast<std::size_t>(c)];
    return out;
  }

  int count_classes(bool reflections, bool complement) const {
    std::set<int> seen;
    int classes = 0;
    for (int code = 1; code < 255; ++code) {
      if (seen.contains(code)) continue;
      ++classes;
      for (std::size_t s = 0; s < maps.size(); ++s) {
        if (!reflections && det[s] < 0) continue;
        const int img = apply(maps[s], code);
        seen.insert(img);
        if (complement) seen.insert(255 - img);
      }
    }
    return classes;
  }
};

}  // namespace

TEST(CubeSymmetries, FortyEightDistinctWithRotationsFirst) {
  const auto& syms = cube_symmetries();
  ASSERT_EQ(syms.size(), 48u);
  std::set<std::array<int, 8>> distinct;
  for (const auto& s : syms) distinct.insert(s.corner_map);
  EXPECT_EQ(distinct.size(), 48u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(syms[0].corner_map[i], static_cast<int>(i));
  for (std::size_t i = 0; i < 48; ++i) EXPECT_EQ(syms[i].proper, i < 24);
}

TEST(CubeSymmetries, MatchOracleSet) {
  const Oracle oracle;
  std::set<std::pair<std::array<int, 8>, bool>> ours, theirs;
  for (const auto& s : cube_symmetries()) ours.insert({s.corner_map, s.proper});
  for (std::size_t i = 0; i < oracle.maps.size(); ++i) theirs.insert({oracle.maps[i], oracle.det[i] > 0});
  EXPECT_EQ(ours, theirs);
}

TEST(SignPattern, CodeAndCrossings) {
  CornerValues<double> v;
  v << -1, 1, 1, 1, 1, 1, 1, 1;
  const SignPattern p = SignPattern::from_values(v);
  EXPECT_EQ(p.code, 0xFE);
  EXPECT_EQ(p.crossing_count(), 3);
  EXPECT_FALSE(p.is_constant());
  EXPECT_TRUE(SignPattern{0}.is_constant());
  EXPECT_TRUE(SignPattern{255}.is_constant());
  EXPECT_EQ(SignPattern{0b01010101}.crossing_count(), 4);
}

TEST(NpacTable, ClassCountsMatchOracle) {
  const Oracle oracle;
  EXPECT_EQ(NpacTable(SymmetryGroup::rot24).class_count(), oracle.count_classes(false, false));
  EXPECT_EQ(NpacTable(SymmetryGroup::rot_refl48).class_count(), oracle.count_classes(true, false));
  EXPECT_EQ(NpacTable(SymmetryGroup::rot24_complement).class_count(), oracle.count_classes(false, true));
  EXPECT_EQ(NpacTable(SymmetryGroup::rot_refl48_complement).class_count(), oracle.count_classes(true, true));
}

TEST(NpacTable, OrbitsPartitionAllIntersectedPatterns) {
  for (SymmetryGroup g : kAllSymmetryGroups) {
    const NpacTable table(g);
    int total = 0;
    for (int id = 1; id <= table.class_count(); ++id) total += table.orbit_size(id);
    EXPECT_EQ(total, 254) << to_string(g);
    EXPECT_TRUE(std::is_sorted(table.representatives().begin(), table.representatives().end()));
  }
}

TEST(NpacTable, FourteenClassGroupExists) {
  const SymmetryGroup g = group_with_class_count(14);
  EXPECT_EQ(NpacTable(g).class_count(), 14);
  EXPECT_THROW(group_with_class_count(99), ValidationError);
}

TEST(NpacTable, ClassifyIsInvariantAndTransformMapsToRepresentative) {
  for (SymmetryGroup g : kAllSymmetryGroups) {
    const NpacTable table(g);
    const auto elements = group_elements(g);
    for (int code = 1; code < 255; ++code) {
      const NpacClass c = table.classify(SignPattern{static_cast<std::uint8_t>(code)});
      EXPECT_EQ(c.transform.apply(static_cast<std::uint8_t>(code)), c.representative);
      EXPECT_EQ(c.representative, table.representatives()[static_cast<std::size_t>(c.class_id - 1)]);
      for (const auto& e : elements)
        EXPECT_EQ(table.classify(SignPattern{e.apply(static_cast<std::uint8_t>(code))}).class_id, c.class_id);
    }
  }
}

TEST(NpacTable, SingleNegativeCornerPatternsShareAClass) {
  for (SymmetryGroup g : kAllSymmetryGroups) {
    std::set<int> ids;
    for (int c = 0; c < 8; ++c) ids.insert(canonicalize_npac(SignPattern{static_cast<std::uint8_t>(0xFF ^ (1 << c))}, g).class_id);
    EXPECT_EQ(ids.size(), 1u);
  }
}

TEST(NpacTable, ConstantPatternRejected) {
  EXPECT_THROW(canonicalize_npac(SignPattern{0}, SymmetryGroup::rot24), ValidationError);
  EXPECT_THROW(canonicalize_npac(SignPattern{255}, SymmetryGroup::rot24), ValidationError);
}

TEST(NpacTable, GroupNamesRoundTrip) {
  for (SymmetryGroup g : kAllSymmetryGroups) EXPECT_EQ(symmetry_group_from_string(to_string(g)), g);
  EXPECT_THROW(symmetry_group_from_string("nope"), ValidationError);
}
