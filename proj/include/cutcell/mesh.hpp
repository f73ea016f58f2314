#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace cutcell {

using Index = std::int64_t;
using Vec3 = Eigen::Vector3d;
using Vec3i = Eigen::Matrix<Index, 3, 1>;

enum class IdKind : std::uint8_t { node, edge, face, cell };

struct GlobalId {
  IdKind kind;
  Index index;
  friend bool operator==(const GlobalId&, const GlobalId&) = default;
};

/// Local corner convention of a hexahedral cell.
///
/// Corner `c` (0..7) sits at offset (c & 1, (c >> 1) & 1, (c >> 2) & 1) from the
/// cell's minimum node, so bit 0 walks +x, bit 1 walks +y and bit 2 walks +z.
/// Every other table (edges, faces, sign-pattern bits) is derived from this.
namespace hex {

inline constexpr int corner_count = 8;
inline constexpr int edge_count = 12;
inline constexpr int face_count = 6;

inline constexpr std::array<int, 3> corner_offset(int corner) {
  return {corner & 1, (corner >> 1) & 1, (corner >> 2) & 1};
}

/// Local edges as (lower corner, upper corner); the first corner always has the
/// lower global node id. Ordered x-edges, then y-edges, then z-edges.
inline constexpr std::array<std::array<int, 2>, 12> edge_corners{{
    {0, 1}, {2, 3}, {4, 5}, {6, 7},  // x
    {0, 2}, {1, 3}, {4, 6}, {5, 7},  // y
    {0, 4}, {1, 5}, {2, 6}, {3, 7},  // z
}};

inline constexpr int edge_axis(int edge) { return edge / 4; }

/// Local faces ordered x-, x+, y-, y+, z-, z+. Corners are listed in cyclic
/// order around the face starting from the lowest corner, so entries 0 and 2
/// (and 1 and 3) are diagonal pairs.
inline constexpr std::array<std::array<int, 4>, 6> face_corners{{
    {0, 2, 6, 4},
    {1, 3, 7, 5},
    {0, 1, 5, 4},
    {2, 3, 7, 6},
    {0, 1, 3, 2},
    {4, 5, 7, 6},
}};

/// Four local edges bounding each face, in the same order as `face_corners`
/// walks them.
inline constexpr std::array<std::array<int, 4>, 6> face_edges{{
    {4, 10, 6, 8},
    {5, 11, 7, 9},
    {0, 9, 2, 8},
    {1, 11, 3, 10},
    {0, 5, 1, 4},
    {2, 7, 3, 6},
}};

inline constexpr int face_axis(int face) { return face / 2; }
inline constexpr int face_side(int face) { return face % 2; }

/// Bitmask of local faces containing a corner.
inline constexpr unsigned corner_face_mask(int corner) {
  const auto o = corner_offset(corner);
  return (1u << (0 + o[0])) | (1u << (2 + o[1])) | (1u << (4 + o[2]));
}

/// Bitmask of local faces containing an edge.
inline constexpr unsigned edge_face_mask(int edge) {
  const auto& e = edge_corners[edge];
  return corner_face_mask(e[0]) & corner_face_mask(e[1]);
}

}  // namespace hex

/// Structured lattice of uniform cubic cells.
///
/// Global numbering (all dense, lexicographic with z slowest and x fastest):
///   node (i,j,k)           i + (nx+1) * (j + (ny+1) * k)
///   cell (i,j,k)           i + nx * (j + ny * k)
///   edges                  x-edges, then y-edges, then z-edges; within a family
///                          the edge is indexed by its lower node's (i,j,k) over
///                          that family's index box
///   faces                  x-normal, then y-normal, then z-normal faces, indexed
///                          the same way by their lowest node
class HexLattice {
 public:
  HexLattice(std::array<Index, 3> dims, Vec3 origin, double spacing);

  const std::array<Index, 3>& dims() const { return dims_; }
  const Vec3& origin() const { return origin_; }
  double spacing() const { return spacing_; }

  Index node_count() const;
  Index cell_count() const;
  Index edge_count() const;
  Index face_count() const;
  double cell_volume() const { return spacing_ * spacing_ * spacing_; }
  double total_volume() const { return cell_volume() * static_cast<double>(cell_count()); }

  Index node_index(Index i, Index j, Index k) const;
  Index cell_index(Index i, Index j, Index k) const;
  Vec3i node_coords(Index node) const;
  Vec3i cell_coords(Index cell) const;

  /// Global id of the edge leaving node (i,j,k) along `axis`.
  Index edge_index(int axis, Index i, Index j, Index k) const;
  /// Global id of the face with normal `axis` whose lowest node is (i,j,k).
  Index face_index(int axis, Index i, Index j, Index k) const;

  std::array<Index, 8> cell_nodes(Index cell) const;
  std::array<Index, 12> cell_edges(Index cell) const;
  std::array<Index, 6> cell_faces(Index cell) const;

  /// Endpoints of an edge, lower node id first.
  std::array<Index, 2> edge_nodes(Index edge) const;
  /// Edge joining two lattice-adjacent nodes (either order).
  Index edge_between(Index a, Index b) const;
  int edge_axis(Index edge) const;
  /// The four nodes of a face in cyclic order, starting at the lowest id.
  std::array<Index, 4> face_nodes(Index face) const;
  int face_axis(Index face) const;
  /// One or two incident cells, ascending.
  std::vector<Index> face_neighbors(Index face) const;
  bool is_boundary_face(Index face) const { return face_neighbors(face).size() == 1; }

  Vec3 node_position(Index node) const;

  friend bool operator==(const HexLattice&, const HexLattice&) = default;

 private:
  void check_node(Index node) const;
  void check_cell(Index cell) const;
  void check_edge(Index edge) const;
  void check_face(Index face) const;
  std::array<Index, 3> edge_box(int axis) const;
  std::array<Index, 3> face_box(int axis) const;
  Index edge_family_offset(int axis) const;
  Index face_family_offset(int axis) const;

  std::array<Index, 3> dims_;
  Vec3 origin_;
  double spacing_;
};

}  // namespace cutcell
