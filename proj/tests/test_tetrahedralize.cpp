#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "cutcell/cut_mesh.hpp"
#include "cutcell/error.hpp"
#include "test_support.hpp"

using namespace cutcell;

namespace {

Vec3 position(const LevelSetField& f, const VertexRef& v) {
  const HexLattice& l = f.lattice();
  if (!v.is_crossing()) return l.node_position(v.id);
  const auto ends = l.edge_nodes(v.id);
  const double a = f.value(ends[0]), b = f.value(ends[1]);
  const double t = fixed_to_units(quantize_crossing(a / (a - b)));
  return l.node_position(ends[0]) + (l.node_position(ends[1]) - l.node_position(ends[0])) * t;
}

bool triangle_on_one_cell_face(const LevelSetField& f, Index cell, const Triangle& tri) {
  const HexLattice& l = f.lattice();
  const Vec3 lo = l.node_position(l.cell_nodes(cell)[0]);
  for (int a = 0; a < 3; ++a)
    for (double side : {0.0, 1.0}) {
      bool all = true;
      for (const auto& v : tri) all &= std::abs((position(f, v) - lo)[a] / l.spacing() - side) < 1e-7;
      if (all) return true;
    }
  return false;
}

// Independent checks of a decomposition using plain double geometry.
void expect_conforming(const LevelSetField& f, const CellDecomposition& dec) {
  const double h3 = f.lattice().cell_volume();
  double sum = 0.0;
  std::map<Triangle, int> faces;
  for (const Tet& t : dec.tets) {
    const double vol = tet_signed_volume(position(f, t.vertices[0]), position(f, t.vertices[1]),
                                         position(f, t.vertices[2]), position(f, t.vertices[3]));
    EXPECT_GT(vol, 0.0);
    sum += vol;
    int solid = 0, void_ = 0;
    for (const auto& v : t.vertices)
      if (!v.is_crossing()) (f.value(v.id) > 0 ? solid : void_)++;
    EXPECT_FALSE(solid > 0 && void_ > 0) << "mixed-sign tet in pattern " << int(dec.pattern.code);
    for (int k = 0; k < 4; ++k) ++faces[tet_face(t, k)];
  }
  EXPECT_NEAR(sum, h3, 1e-9 * h3);
  for (const auto& [tri, n] : faces) {
    if (n == 1) {
      EXPECT_TRUE(triangle_on_one_cell_face(f, dec.cell, tri)) << "unpaired interior facet";
    } else {
      EXPECT_EQ(n, 2) << "facet shared by " << n << " tets";
    }
  }
}

Ambiguity oracle_tag(const LevelSetField& f, const Tet& t) {
  for (const auto& v : t.vertices)
    if (!v.is_crossing()) return Ambiguity::unambiguous;
  for (int k = 0; k < 4; ++k) {
    Triangle tri{t.vertices[static_cast<std::size_t>((k + 1) % 4)], t.vertices[static_cast<std::size_t>((k + 2) % 4)],
                 t.vertices[static_cast<std::size_t>((k + 3) % 4)]};
    std::sort(tri.begin(), tri.end());
    if (triangle_on_one_cell_face(f, t.owner, tri)) return Ambiguity::bat;
  }
  return Ambiguity::iat;
}

LevelSetField from_corners(std::array<double, 8> v, double h = 1.0) {
  return LevelSetField(HexLattice({1, 1, 1}, Vec3::Zero(), h), std::vector<double>(v.begin(), v.end()));
}

}  // namespace

TEST(ClassifyCell, UniformAndIntersected) {
  const auto solid = classify_cell(from_corners({1, 1, 1, 1, 1, 1, 1, 1}), 0);
  EXPECT_FALSE(solid.intersected);
  EXPECT_EQ(solid.uniform_phase, Phase::solid);
  const auto one = classify_cell(from_corners({-1, 1, 1, 1, 1, 1, 1, 1}), 0);
  EXPECT_TRUE(one.intersected);
  EXPECT_EQ(one.pattern.crossing_count(), 3);
  const auto diag = classify_cell(from_corners({1, -1, -1, 1, 1, 1, 1, 1}), 0);
  EXPECT_TRUE(diag.intersected);
  EXPECT_THROW(tetrahedralize(from_corners({1, 1, 1, 1, 1, 1, 1, 1}), 0), ValidationError);
}

TEST(Tetrahedralize, PlanarCutVolumeFractionAndNoAts) {
  const double t = 0.375;
  // phi = t - x: solid where x < t.
  const LevelSetField f = from_corners({t, t - 1, t, t - 1, t, t - 1, t, t - 1});
  const auto dec = tetrahedralize(f, 0);
  expect_conforming(f, dec);
  double solid = 0.0;
  for (const Tet& tet : dec.tets) {
    bool s = false;
    for (const auto& v : tet.vertices) s |= !v.is_crossing() && f.value(v.id) > 0;
    if (s) solid += tet_signed_volume(position(f, tet.vertices[0]), position(f, tet.vertices[1]),
                                      position(f, tet.vertices[2]), position(f, tet.vertices[3]));
  }
  EXPECT_NEAR(solid, t, 1e-12);
  for (Ambiguity a : tag_ambiguity(dec.tets)) EXPECT_EQ(a, Ambiguity::unambiguous);
}

TEST(Tetrahedralize, SingleCornerHasNoAts) {
  const LevelSetField f = from_corners({-1, 1, 1, 1, 1, 1, 1, 1});
  const auto dec = tetrahedralize(f, 0);
  expect_conforming(f, dec);
  bool void_corner_seen = false;
  for (const Tet& t : dec.tets)
    for (const auto& v : t.vertices) void_corner_seen |= !v.is_crossing() && v.id == 0;
  EXPECT_TRUE(void_corner_seen);
  for (Ambiguity a : tag_ambiguity(dec.tets)) EXPECT_EQ(a, Ambiguity::unambiguous);
}

TEST(Tetrahedralize, DiagonalCornersGiveOnlyIats) {
  const LevelSetField f = from_corners({-1, 1, 1, 1, 1, 1, 1, -1});
  const auto dec = tetrahedralize(f, 0);
  expect_conforming(f, dec);
  const auto tags = tag_ambiguity(dec.tets);
  int ats = 0;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    EXPECT_EQ(tags[i], oracle_tag(f, dec.tets[i]));
    EXPECT_NE(tags[i], Ambiguity::bat);
    ats += tags[i] == Ambiguity::iat;
  }
  EXPECT_GT(ats, 0);
}

TEST(Tetrahedralize, AllPatternsRandomMagnitudes) {
  std::mt19937_64 rng(2024);
  for (int code = 1; code < 255; ++code) {
    for (int draw = 0; draw < 5; ++draw) {
      const LevelSetField f = testkit::pattern_cell(code, rng);
      const auto dec = tetrahedralize(f, 0);
      ASSERT_EQ(dec.pattern.code, code);
      EXPECT_TRUE(check_decomposition(f, dec).empty());
      expect_conforming(f, dec);
      const auto tags = tag_ambiguity(dec.tets);
      for (std::size_t i = 0; i < tags.size(); ++i) {
        EXPECT_EQ(tags[i], oracle_tag(f, dec.tets[i])) << "pattern " << code;
        EXPECT_EQ(tags[i], classify_ambiguity(dec.tets[i]));
      }
    }
  }
}

TEST(Tetrahedralize, CrossCellFacesMatch) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const LevelSetField f = testkit::random_field(4, seed);
    const HexLattice& l = f.lattice();
    std::map<Index, std::map<Index, std::vector<Triangle>>> on_face;  // face -> cell -> triangles
    for (Index c = 0; c < l.cell_count(); ++c) {
      if (!classify_cell(f, c).intersected) continue;
      const auto dec = tetrahedralize(f, c);
      const auto faces = l.cell_faces(c);
      for (const Tet& t : dec.tets)
        for (int k = 0; k < 4; ++k) {
          const int lf = tet_face_on_cell_face(t, k);
          if (lf >= 0) on_face[faces[static_cast<std::size_t>(lf)]][c].push_back(tet_face(t, k));
        }
    }
    for (auto& [face, per_cell] : on_face) {
      const auto expected = triangulate_face(f, face);
      for (auto& [cell, tris] : per_cell) {
        std::sort(tris.begin(), tris.end());
        EXPECT_EQ(tris, expected) << "face " << face << " cell " << cell;
      }
    }
  }
}

TEST(Tetrahedralize, PositiveScalingIsBitIdentical) {
  const LevelSetField f = testkit::random_field(4, 99);
  const LevelSetField g = f.scaled(3.7);
  for (Index c = 0; c < f.lattice().cell_count(); ++c) {
    if (!classify_cell(f, c).intersected) continue;
    const auto a = tetrahedralize(f, c), b = tetrahedralize(g, c);
    ASSERT_EQ(a.tets.size(), b.tets.size());
    for (std::size_t i = 0; i < a.tets.size(); ++i) {
      EXPECT_EQ(a.tets[i].vertices, b.tets[i].vertices);
      EXPECT_EQ(a.tets[i].local, b.tets[i].local);
    }
  }
}

TEST(Tetrahedralize, VerticesStayOnCellEdges) {
  const LevelSetField f = testkit::random_field(3, 5);
  const HexLattice& l = f.lattice();
  for (Index c = 0; c < l.cell_count(); ++c) {
    if (!classify_cell(f, c).intersected) continue;
    const auto nodes = l.cell_nodes(c);
    const auto edges = l.cell_edges(c);
    for (const Tet& t : tetrahedralize(f, c).tets) {
      EXPECT_EQ(t.owner, c);
      for (std::size_t i = 0; i < 4; ++i) {
        const int code = t.local[i];
        const VertexRef v = t.vertices[i];
        if (local_is_crossing(code)) {
          EXPECT_EQ(v, VertexRef::crossing(edges[static_cast<std::size_t>(code - kLocalCrossingBase)]));
          EXPECT_TRUE(edge_crossing(f, v.id).has_value());
        } else {
          EXPECT_EQ(v, VertexRef::corner(nodes[static_cast<std::size_t>(code)]));
        }
      }
    }
  }
}

TEST(TagAmbiguity, BatOnSharedFaceSeenFromBothCells) {
  // Checkerboard signs: the shared face x = 1 carries alternating corners.
  const HexLattice l({2, 1, 1}, Vec3::Zero(), 1.0);
  std::vector<double> v(static_cast<std::size_t>(l.node_count()));
  for (Index n = 0; n < l.node_count(); ++n) {
    const Vec3i ijk = l.node_coords(n);
    v[static_cast<std::size_t>(n)] = (ijk.sum() % 2 == 0 ? 1.0 : -1.0) * (1.0 + 0.1 * static_cast<double>(n));
  }
  const LevelSetField f(l, v);
  const CutCellMesh mesh = build_cut_mesh(f);
  const Index shared = l.face_index(0, 1, 0, 0);
  std::map<Index, std::vector<Triangle>> per_cell;
  for (Index t = 0; t < mesh.tet_count(); ++t) {
    EXPECT_EQ(mesh.ambiguity(t), oracle_tag(f, mesh.tet(t)));
    if (mesh.ambiguity(t) != Ambiguity::bat || mesh.bat_lattice_face(t) != shared) continue;
    per_cell[mesh.tet(t).owner].push_back(tet_face(mesh.tet(t), mesh.bat_local_face(t)));
    const FaceLink& link = mesh.link(t, mesh.bat_local_face(t));
    ASSERT_EQ(link.kind, FaceLink::Kind::tet);
    EXPECT_EQ(mesh.ambiguity(link.id), Ambiguity::bat);
    EXPECT_NE(mesh.tet(link.id).owner, mesh.tet(t).owner);
  }
  ASSERT_EQ(per_cell.size(), 2u);
  for (auto& [cell, tris] : per_cell) std::sort(tris.begin(), tris.end());
  EXPECT_FALSE(per_cell[0].empty());
  EXPECT_EQ(per_cell[0], per_cell[1]);
}

TEST(TagAmbiguity, SingleCornerTetIsUnambiguous) {
  Tet t{{VertexRef::crossing(0), VertexRef::crossing(1), VertexRef::crossing(2), VertexRef::corner(0)},
        {8, 9, 10, 0},
        0};
  EXPECT_EQ(classify_ambiguity(t), Ambiguity::unambiguous);
}
