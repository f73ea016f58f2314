#include "cutcell/tetrahedralize.hpp"

#include <algorithm>
#include <map>
#include <variant>

#include "cutcell/error.hpp"
#include "cutcell/placing.hpp"

namespace cutcell {

namespace {

FixedPoint corner_fixed(int corner) {
  const auto o = hex::corner_offset(corner);
  return FixedPoint(o[0] * kFixedOne, o[1] * kFixedOne, o[2] * kFixedOne);
}

std::int64_t crossing_offset(const LevelSetField& field, Index edge) {
  const auto crossing = edge_crossing(field, edge);
  if (!crossing) throw ValidationError("edge " + std::to_string(edge) + " has no crossing");
  return crossing->fixed_offset;
}

struct LocalPoints {
  std::vector<int> codes;
  std::vector<FixedPoint> points;
};

// Insertion order: crossings by ascending local edge (which matches global edge
// id order), then corners by ascending local index (matching node id order).
LocalPoints cell_points(const LevelSetField& field, Index cell, SignPattern pattern) {
  const auto edges = field.lattice().cell_edges(cell);
  LocalPoints lp;
  for (int e = 0; e < hex::edge_count; ++e) {
    const auto& ec = hex::edge_corners[static_cast<std::size_t>(e)];
    if (pattern.solid(ec[0]) == pattern.solid(ec[1])) continue;
    FixedPoint p = corner_fixed(ec[0]);
    p[hex::edge_axis(e)] += crossing_offset(field, edges[static_cast<std::size_t>(e)]);
    lp.codes.push_back(kLocalCrossingBase + e);
    lp.points.push_back(p);
  }
  for (int c = 0; c < hex::corner_count; ++c) {
    lp.codes.push_back(c);
    lp.points.push_back(corner_fixed(c));
  }
  return lp;
}

VertexRef global_vertex(const HexLattice& lattice, Index cell, int code) {
  if (local_is_crossing(code))
    return VertexRef::crossing(lattice.cell_edges(cell)[static_cast<std::size_t>(code - kLocalCrossingBase)]);
  return VertexRef::corner(lattice.cell_nodes(cell)[static_cast<std::size_t>(code)]);
}

// Local points of one cell indexed by local vertex code.
using CodePoints = std::array<FixedPoint, kLocalCrossingBase + hex::edge_count>;

CodePoints code_points(const LevelSetField& field, Index cell, SignPattern pattern) {
  CodePoints pts;
  pts.fill(FixedPoint::Zero());
  const LocalPoints lp = cell_points(field, cell, pattern);
  for (std::size_t i = 0; i < lp.codes.size(); ++i) pts[static_cast<std::size_t>(lp.codes[i])] = lp.points[i];
  return pts;
}

Int128 tet_orient(const CodePoints& pts, const Tet& t) {
  return orient3d(pts[t.local[0]], pts[t.local[1]], pts[t.local[2]], pts[t.local[3]]);
}

bool corner_solid(SignPattern pattern, int code) { return pattern.solid(code); }

std::string describe(const Triangle& tri) {
  std::string s = "[";
  for (const auto& v : tri) {
    s += (v.is_crossing() ? "x" : "n") + std::to_string(v.id);
    if (&v != &tri.back()) s += ' ';
  }
  return s + "]";
}

}  // namespace

int tet_face_on_cell_face(const Tet& tet, int k) {
  unsigned mask = 0x3F;
  for (int j = 0; j < 4; ++j)
    if (j != k) mask &= local_face_mask(tet.local[static_cast<std::size_t>(j)]);
  if (mask == 0) return -1;
  int f = 0;
  while (!((mask >> f) & 1u)) ++f;
  return f;
}

Triangle tet_face(const Tet& tet, int k) {
  Triangle tri{};
  int n = 0;
  for (int j = 0; j < 4; ++j)
    if (j != k) tri[static_cast<std::size_t>(n++)] = tet.vertices[static_cast<std::size_t>(j)];
  std::sort(tri.begin(), tri.end());
  return tri;
}

CellClassification classify_cell(const LevelSetField& field, Index cell) {
  const SignPattern pattern = SignPattern::from_values(field.cell_values(cell));
  return {!pattern.is_constant(), pattern.code == 0xFF ? Phase::solid : Phase::void_phase, pattern};
}

FixedPoint local_fixed_point(const LevelSetField& field, Index cell, int code) {
  if (!local_is_crossing(code)) return corner_fixed(code);
  const int e = code - kLocalCrossingBase;
  FixedPoint p = corner_fixed(hex::edge_corners[static_cast<std::size_t>(e)][0]);
  p[hex::edge_axis(e)] += crossing_offset(field, field.lattice().cell_edges(cell)[static_cast<std::size_t>(e)]);
  return p;
}

FixedPoint vertex_fixed_point(const LevelSetField& field, const VertexRef& v) {
  const HexLattice& lattice = field.lattice();
  if (!v.is_crossing()) return lattice.node_coords(v.id) * kFixedOne;
  const auto nodes = lattice.edge_nodes(v.id);
  FixedPoint p = lattice.node_coords(nodes[0]) * kFixedOne;
  p[lattice.edge_axis(v.id)] += crossing_offset(field, v.id);
  return p;
}

CellDecomposition tetrahedralize(const LevelSetField& field, Index cell) {
  const HexLattice& lattice = field.lattice();
  const CellClassification cls = classify_cell(field, cell);
  if (!cls.intersected) throw ValidationError("cell " + std::to_string(cell) + " is not intersected");

  const LocalPoints lp = cell_points(field, cell, cls.pattern);
  CodePoints pts;
  for (std::size_t i = 0; i < lp.codes.size(); ++i) pts[static_cast<std::size_t>(lp.codes[i])] = lp.points[i];
  const auto result = placing_triangulation(lp.points);
  if (const auto* failure = std::get_if<PlacingFailure>(&result)) {
    throw DegenerateGeometryError("placing failed at local vertex " +
                                      std::to_string(lp.codes[static_cast<std::size_t>(failure->point)]) + ": " +
                                      failure->reason,
                                  cell, cls.pattern.code);
  }
  const auto& complex = std::get<PlacingComplex>(result);
  if (complex.dimension != 3) throw DegenerateGeometryError("cell points are not full-dimensional", cell, cls.pattern.code);

  CellDecomposition dec{cell, cls.pattern, {}};
  dec.tets.reserve(complex.simplices.size());
  for (const auto& s : complex.simplices) {
    std::array<int, 4> codes{};
    for (int j = 0; j < 4; ++j) codes[static_cast<std::size_t>(j)] = lp.codes[static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
    std::array<std::pair<VertexRef, int>, 4> verts{};
    for (int j = 0; j < 4; ++j) verts[static_cast<std::size_t>(j)] = {global_vertex(lattice, cell, codes[static_cast<std::size_t>(j)]), codes[static_cast<std::size_t>(j)]};
    std::sort(verts.begin(), verts.end());
    Tet t{};
    t.owner = cell;
    for (int j = 0; j < 4; ++j) {
      t.vertices[static_cast<std::size_t>(j)] = verts[static_cast<std::size_t>(j)].first;
      t.local[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(verts[static_cast<std::size_t>(j)].second);
    }
    if (tet_orient(pts, t) < 0) {
      std::swap(t.vertices[2], t.vertices[3]);
      std::swap(t.local[2], t.local[3]);
    }
    dec.tets.push_back(t);
  }
  std::sort(dec.tets.begin(), dec.tets.end(), [](const Tet& a, const Tet& b) {
    auto sorted = [](const Tet& t) {
      auto v = t.vertices;
      std::sort(v.begin(), v.end());
      return v;
    };
    return sorted(a) < sorted(b);
  });

  const auto violations = check_decomposition(field, dec);
  if (!violations.empty()) {
    throw DegenerateGeometryError(std::string("postcondition (") + violations.front().property + ") violated: " +
                                      violations.front().detail,
                                  cell, cls.pattern.code);
  }
  return dec;
}

std::vector<Triangle> triangulate_face(const LevelSetField& field, Index face) {
  const HexLattice& lattice = field.lattice();
  const auto nodes = lattice.face_nodes(face);
  const FixedPoint base = lattice.node_coords(nodes[0]) * kFixedOne;

  std::array<Index, 4> edges{};
  for (int n = 0; n < 4; ++n) edges[static_cast<std::size_t>(n)] = lattice.edge_between(nodes[static_cast<std::size_t>(n)], nodes[static_cast<std::size_t>((n + 1) % 4)]);
  std::sort(edges.begin(), edges.end());
  std::array<Index, 4> sorted_nodes = nodes;
  std::sort(sorted_nodes.begin(), sorted_nodes.end());

  std::vector<VertexRef> refs;
  std::vector<FixedPoint> points;
  for (Index e : edges) {
    const auto ends = lattice.edge_nodes(e);
    if (field.node_phase(ends[0]) == field.node_phase(ends[1])) continue;
    refs.push_back(VertexRef::crossing(e));
    points.push_back(vertex_fixed_point(field, refs.back()) - base);
  }
  for (Index n : sorted_nodes) {
    refs.push_back(VertexRef::corner(n));
    points.push_back(vertex_fixed_point(field, refs.back()) - base);
  }

  const auto result = placing_triangulation(points);
  if (std::holds_alternative<PlacingFailure>(result) || std::get<PlacingComplex>(result).dimension != 2) {
    throw DegenerateGeometryError("face " + std::to_string(face) + " could not be triangulated",
                                  lattice.face_neighbors(face).front(), -1);
  }
  std::vector<Triangle> tris;
  for (const auto& s : std::get<PlacingComplex>(result).simplices) {
    Triangle tri{refs[static_cast<std::size_t>(s[0])], refs[static_cast<std::size_t>(s[1])], refs[static_cast<std::size_t>(s[2])]};
    std::sort(tri.begin(), tri.end());
    tris.push_back(tri);
  }
  std::sort(tris.begin(), tris.end());
  return tris;
}

std::vector<ConformityViolation> check_decomposition(const LevelSetField& field, const CellDecomposition& dec) {
  std::vector<ConformityViolation> out;
  const HexLattice& lattice = field.lattice();
  const SignPattern pattern = dec.pattern;
  const CodePoints pts = code_points(field, dec.cell, pattern);

  // (a) exact volume partition
  Int128 total = 0;
  for (const auto& t : dec.tets) {
    const Int128 v = tet_orient(pts, t);
    if (v <= 0) out.push_back({'a', "non-positive tetrahedron volume"});
    total += v;
  }
  const Int128 cube = Int128(6) * kFixedOne * kFixedOne * kFixedOne;
  if (total != cube) out.push_back({'a', "tetrahedron volumes do not sum to the cell volume"});

  // (c) no mixed-sign tets
  for (const auto& t : dec.tets) {
    int solid = 0, corners = 0;
    for (auto code : t.local) {
      if (local_is_crossing(code)) continue;
      ++corners;
      solid += corner_solid(pattern, code);
    }
    if (solid != 0 && solid != corners) out.push_back({'c', "tetrahedron mixes solid and void corners"});
  }

  // (b) facet incidence: interior facets shared by two tets on opposite sides,
  // boundary facets on the cell boundary
  struct Side {
    std::size_t tet;
    int k;
  };
  std::map<Triangle, std::vector<Side>> facets;
  for (std::size_t i = 0; i < dec.tets.size(); ++i)
    for (int k = 0; k < 4; ++k) facets[tet_face(dec.tets[i], k)].push_back({i, k});

  std::array<std::vector<Triangle>, 6> on_face;
  for (const auto& [tri, sides] : facets) {
    if (sides.size() == 1) {
      const int f = tet_face_on_cell_face(dec.tets[sides[0].tet], sides[0].k);
      if (f < 0) out.push_back({'b', "unmatched interior facet " + describe(tri)});
      else on_face[static_cast<std::size_t>(f)].push_back(tri);
      continue;
    }
    if (sides.size() != 2) {
      out.push_back({'b', "facet " + describe(tri) + " shared by " + std::to_string(sides.size()) + " tetrahedra"});
      continue;
    }
    const Tet& t0 = dec.tets[sides[0].tet];
    const Tet& t1 = dec.tets[sides[1].tet];
    std::array<FixedPoint, 3> fp{};
    int n = 0;
    for (int j = 0; j < 4; ++j)
      if (j != sides[0].k) fp[static_cast<std::size_t>(n++)] = pts[t0.local[static_cast<std::size_t>(j)]];
    const FixedPoint& a0 = pts[t0.local[static_cast<std::size_t>(sides[0].k)]];
    const FixedPoint& a1 = pts[t1.local[static_cast<std::size_t>(sides[1].k)]];
    if (sign_of(orient3d(fp[0], fp[1], fp[2], a0)) * sign_of(orient3d(fp[0], fp[1], fp[2], a1)) >= 0)
      out.push_back({'b', "tetrahedra overlap across facet " + describe(tri)});

    // (e) an all-crossing facet between two unambiguous tets separates phases
    const bool interface_facet = std::all_of(tri.begin(), tri.end(), [](const VertexRef& v) { return v.is_crossing(); });
    const int c0 = t0.local[static_cast<std::size_t>(sides[0].k)];
    const int c1 = t1.local[static_cast<std::size_t>(sides[1].k)];
    if (interface_facet && !local_is_crossing(c0) && !local_is_crossing(c1) &&
        corner_solid(pattern, c0) == corner_solid(pattern, c1))
      out.push_back({'e', "interface facet " + describe(tri) + " has the same phase on both sides"});
  }

  // (d) face triangulations are the face-local ones
  const auto faces = lattice.cell_faces(dec.cell);
  for (int f = 0; f < hex::face_count; ++f) {
    auto& tris = on_face[static_cast<std::size_t>(f)];
    std::sort(tris.begin(), tris.end());
    if (tris != triangulate_face(field, faces[static_cast<std::size_t>(f)]))
      out.push_back({'d', "triangulation of local face " + std::to_string(f) + " differs from the face-local one"});
  }
  return out;
}

}  // namespace cutcell
