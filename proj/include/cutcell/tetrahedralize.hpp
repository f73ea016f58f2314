#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "cutcell/field.hpp"
#include "cutcell/npac.hpp"

namespace cutcell {

/// A decomposition vertex: a lattice node or the crossing on a lattice edge.
/// Ordering puts every crossing before every corner, then ascending id; this
/// is the insertion order of the tetrahedralizer.
struct VertexRef {
  enum class Kind : std::uint8_t { crossing = 0, corner = 1 };
  Kind kind;
  Index id;  // edge id for crossings, node id for corners

  static VertexRef corner(Index node) { return {Kind::corner, node}; }
  static VertexRef crossing(Index edge) { return {Kind::crossing, edge}; }
  bool is_crossing() const { return kind == Kind::crossing; }

  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Cell-local vertex codes: 0..7 are corners, 8 + e is the crossing on local edge e.
inline constexpr int kLocalCrossingBase = 8;
inline constexpr bool local_is_crossing(int code) { return code >= kLocalCrossingBase; }
/// Local cell faces containing a local vertex, as a bitmask.
inline constexpr unsigned local_face_mask(int code) {
  return local_is_crossing(code) ? hex::edge_face_mask(code - kLocalCrossingBase) : hex::corner_face_mask(code);
}

/// Tetrahedron of a cell decomposition, positively oriented. Face k is the
/// triangle opposite vertex k.
struct Tet {
  std::array<VertexRef, 4> vertices;
  std::array<std::uint8_t, 4> local;
  Index owner;
};

/// Local cell face (0..5) that face k of the tet lies on, or -1.
int tet_face_on_cell_face(const Tet& tet, int k);

using Triangle = std::array<VertexRef, 3>;  // sorted ascending

Triangle tet_face(const Tet& tet, int k);

struct CellClassification {
  bool intersected;
  Phase uniform_phase;  // meaningful only when !intersected
  SignPattern pattern;
};

CellClassification classify_cell(const LevelSetField& field, Index cell);

struct CellDecomposition {
  Index cell;
  SignPattern pattern;
  std::vector<Tet> tets;
};

/// Splits an intersected cell into tetrahedra whose vertices are the cell's
/// corners and the crossings on its edges.
///
/// Construction: placing triangulation with all crossings inserted before all
/// corners, each group in ascending global id. The crossings' hull is filled
/// first using crossings only, and every segment joining corners of opposite
/// sign passes through that hull, so no tetrahedron mixes solid and void
/// corners. The result restricted to a lattice face depends only on that face's
/// global ids, so neighbouring cells agree on shared faces.
///
/// Postconditions are verified before returning; a violation throws
/// DegenerateGeometryError carrying the cell id and pattern code.
CellDecomposition tetrahedralize(const LevelSetField& field, Index cell);

/// Triangulation of one lattice face computed from the face's own nodes and
/// crossings (sorted triangles, sorted list).
std::vector<Triangle> triangulate_face(const LevelSetField& field, Index face);

struct ConformityViolation {
  char property;  // 'a' volume, 'b' disjointness, 'c' mixed sign, 'd' face match, 'e' interface facet
  std::string detail;
};

/// Checks the decomposition postconditions without throwing.
std::vector<ConformityViolation> check_decomposition(const LevelSetField& field, const CellDecomposition& dec);

/// Cell-local fixed-point coordinates of a local vertex code.
FixedPoint local_fixed_point(const LevelSetField& field, Index cell, int code);

/// Global fixed-point coordinates of a vertex (lattice index * 2^kFixedBits).
FixedPoint vertex_fixed_point(const LevelSetField& field, const VertexRef& v);

}  // namespace cutcell
