#include "cutcell/mesh.hpp"

#include <string>
#include <utility>

#include "cutcell/error.hpp"

namespace cutcell {

namespace {
Vec3i unflatten(Index local, const std::array<Index, 3>& box) {
  return Vec3i(local % box[0], (local / box[0]) % box[1], local / (box[0] * box[1]));
}
}  // namespace

HexLattice::HexLattice(std::array<Index, 3> dims, Vec3 origin, double spacing)
    : dims_(dims), origin_(std::move(origin)), spacing_(spacing) {
  for (Index d : dims_) {
    if (d < 1) throw ValidationError("lattice dimensions must be >= 1");
  }
  if (!(spacing_ > 0.0)) throw ValidationError("lattice spacing must be positive");
  if (!origin_.allFinite()) throw ValidationError("lattice origin must be finite");
}

Index HexLattice::node_count() const { return (dims_[0] + 1) * (dims_[1] + 1) * (dims_[2] + 1); }
Index HexLattice::cell_count() const { return dims_[0] * dims_[1] * dims_[2]; }

std::array<Index, 3> HexLattice::edge_box(int axis) const {
  std::array<Index, 3> box{dims_[0] + 1, dims_[1] + 1, dims_[2] + 1};
  box[axis] -= 1;
  return box;
}

std::array<Index, 3> HexLattice::face_box(int axis) const {
  std::array<Index, 3> box = dims_;
  box[axis] += 1;
  return box;
}

Index HexLattice::edge_family_offset(int axis) const {
  Index offset = 0;
  for (int a = 0; a < axis; ++a) {
    const auto b = edge_box(a);
    offset += b[0] * b[1] * b[2];
  }
  return offset;
}

Index HexLattice::face_family_offset(int axis) const {
  Index offset = 0;
  for (int a = 0; a < axis; ++a) {
    const auto b = face_box(a);
    offset += b[0] * b[1] * b[2];
  }
  return offset;
}

Index HexLattice::edge_count() const { return edge_family_offset(3); }
Index HexLattice::face_count() const { return face_family_offset(3); }

void HexLattice::check_node(Index node) const {
  if (node < 0 || node >= node_count()) throw ValidationError("node id out of range: " + std::to_string(node));
}
void HexLattice::check_cell(Index cell) const {
  if (cell < 0 || cell >= cell_count()) throw ValidationError("cell id out of range: " + std::to_string(cell));
}
void HexLattice::check_edge(Index edge) const {
  if (edge < 0 || edge >= edge_count()) throw ValidationError("edge id out of range: " + std::to_string(edge));
}
void HexLattice::check_face(Index face) const {
  if (face < 0 || face >= face_count()) throw ValidationError("face id out of range: " + std::to_string(face));
}

Index HexLattice::node_index(Index i, Index j, Index k) const {
  return i + (dims_[0] + 1) * (j + (dims_[1] + 1) * k);
}

Index HexLattice::cell_index(Index i, Index j, Index k) const { return i + dims_[0] * (j + dims_[1] * k); }

Vec3i HexLattice::node_coords(Index node) const {
  check_node(node);
  const Index sx = dims_[0] + 1;
  const Index sy = dims_[1] + 1;
  return Vec3i(node % sx, (node / sx) % sy, node / (sx * sy));
}

Vec3i HexLattice::cell_coords(Index cell) const {
  check_cell(cell);
  return Vec3i(cell % dims_[0], (cell / dims_[0]) % dims_[1], cell / (dims_[0] * dims_[1]));
}

Index HexLattice::edge_index(int axis, Index i, Index j, Index k) const {
  const auto b = edge_box(axis);
  return edge_family_offset(axis) + i + b[0] * (j + b[1] * k);
}

Index HexLattice::face_index(int axis, Index i, Index j, Index k) const {
  const auto b = face_box(axis);
  return face_family_offset(axis) + i + b[0] * (j + b[1] * k);
}

std::array<Index, 8> HexLattice::cell_nodes(Index cell) const {
  const Vec3i c = cell_coords(cell);
  std::array<Index, 8> nodes{};
  for (int corner = 0; corner < hex::corner_count; ++corner) {
    const auto o = hex::corner_offset(corner);
    nodes[corner] = node_index(c[0] + o[0], c[1] + o[1], c[2] + o[2]);
  }
  return nodes;
}

std::array<Index, 12> HexLattice::cell_edges(Index cell) const {
  const Vec3i c = cell_coords(cell);
  std::array<Index, 12> edges{};
  for (int e = 0; e < hex::edge_count; ++e) {
    const auto o = hex::corner_offset(hex::edge_corners[e][0]);
    edges[e] = edge_index(hex::edge_axis(e), c[0] + o[0], c[1] + o[1], c[2] + o[2]);
  }
  return edges;
}

std::array<Index, 6> HexLattice::cell_faces(Index cell) const {
  const Vec3i c = cell_coords(cell);
  std::array<Index, 6> faces{};
  for (int f = 0; f < hex::face_count; ++f) {
    Vec3i lo = c;
    lo[hex::face_axis(f)] += hex::face_side(f);
    faces[f] = face_index(hex::face_axis(f), lo[0], lo[1], lo[2]);
  }
  return faces;
}

int HexLattice::edge_axis(Index edge) const {
  check_edge(edge);
  int axis = 0;
  while (axis < 2 && edge >= edge_family_offset(axis + 1)) ++axis;
  return axis;
}

std::array<Index, 2> HexLattice::edge_nodes(Index edge) const {
  const int axis = edge_axis(edge);
  const auto b = edge_box(axis);
  const Vec3i lo = unflatten(edge - edge_family_offset(axis), b);
  Vec3i hi = lo;
  hi[axis] += 1;
  return {node_index(lo[0], lo[1], lo[2]), node_index(hi[0], hi[1], hi[2])};
}

Index HexLattice::edge_between(Index a, Index b) const {
  if (b < a) std::swap(a, b);
  const Vec3i lo = node_coords(a);
  const Vec3i d = node_coords(b) - lo;
  for (int axis = 0; axis < 3; ++axis) {
    if (d == Vec3i::Unit(axis)) return edge_index(axis, lo[0], lo[1], lo[2]);
  }
  throw ValidationError("nodes " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
}

int HexLattice::face_axis(Index face) const {
  check_face(face);
  int axis = 0;
  while (axis < 2 && face >= face_family_offset(axis + 1)) ++axis;
  return axis;
}

std::array<Index, 4> HexLattice::face_nodes(Index face) const {
  const int axis = face_axis(face);
  const Vec3i lo = unflatten(face - face_family_offset(axis), face_box(axis));
  const int b = axis == 0 ? 1 : 0;
  const int c = axis == 2 ? 1 : 2;
  std::array<Index, 4> nodes{};
  constexpr std::array<std::array<int, 2>, 4> walk{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  for (int n = 0; n < 4; ++n) {
    Vec3i p = lo;
    p[b] += walk[n][0];
    p[c] += walk[n][1];
    nodes[n] = node_index(p[0], p[1], p[2]);
  }
  return nodes;
}

std::vector<Index> HexLattice::face_neighbors(Index face) const {
  const int axis = face_axis(face);
  const Vec3i lo = unflatten(face - face_family_offset(axis), face_box(axis));
  std::vector<Index> cells;
  if (lo[axis] > 0) {
    Vec3i c = lo;
    c[axis] -= 1;
    cells.push_back(cell_index(c[0], c[1], c[2]));
  }
  if (lo[axis] < dims_[axis]) cells.push_back(cell_index(lo[0], lo[1], lo[2]));
  return cells;
}

Vec3 HexLattice::node_position(Index node) const {
  const Vec3i c = node_coords(node);
  return origin_ + spacing_ * c.cast<double>();
}

}  // namespace cutcell
