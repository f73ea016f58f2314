#include "cutcell/cut_mesh.hpp"

#include <algorithm>
#include <cmath>

#include "cutcell/error.hpp"
#include "cutcell/parallel.hpp"

namespace cutcell {

const char* to_string(Ambiguity a) {
  switch (a) {
    case Ambiguity::iat:
      return "IAT";
    case Ambiguity::bat:
      return "BAT";
    default:
      return "unambiguous";
  }
}

Ambiguity classify_ambiguity(const Tet& tet) {
  for (const auto& v : tet.vertices)
    if (!v.is_crossing()) return Ambiguity::unambiguous;
  for (int k = 0; k < 4; ++k)
    if (tet_face_on_cell_face(tet, k) >= 0) return Ambiguity::bat;
  return Ambiguity::iat;
}

std::vector<Ambiguity> tag_ambiguity(const std::vector<Tet>& tets) {
  std::vector<Ambiguity> tags;
  tags.reserve(tets.size());
  for (const auto& t : tets) tags.push_back(classify_ambiguity(t));
  return tags;
}

std::optional<Phase> CutCellMesh::phase(Index t) const {
  const auto p = phases_[static_cast<std::size_t>(t)];
  if (p < 0) return std::nullopt;
  return static_cast<Phase>(p);
}

void CutCellMesh::set_phase(Index t, Phase p) { phases_[static_cast<std::size_t>(t)] = static_cast<std::int8_t>(p); }
void CutCellMesh::clear_phase(Index t) { phases_[static_cast<std::size_t>(t)] = -1; }

FixedPoint CutCellMesh::vertex_fixed(const VertexRef& v) const {
  if (!v.is_crossing()) return lattice_.node_coords(v.id) * kFixedOne;
  FixedPoint p = lattice_.node_coords(lattice_.edge_nodes(v.id)[0]) * kFixedOne;
  p[lattice_.edge_axis(v.id)] += crossing_offset(v.id);
  return p;
}

Vec3 CutCellMesh::vertex_position(const VertexRef& v) const {
  const FixedPoint p = vertex_fixed(v);
  Vec3 x;
  for (int a = 0; a < 3; ++a) x[a] = lattice_.origin()[a] + lattice_.spacing() * fixed_to_units(p[a]);
  return x;
}

Int128 CutCellMesh::tet_volume6(Index t) const {
  const auto& v = tet(t).vertices;
  return orient3d(vertex_fixed(v[0]), vertex_fixed(v[1]), vertex_fixed(v[2]), vertex_fixed(v[3]));
}

double CutCellMesh::tet_volume(Index t) const {
  const double unit = std::ldexp(lattice_.spacing(), -kFixedBits);
  return static_cast<double>(tet_volume6(t)) / 6.0 * unit * unit * unit;
}

double CutCellMesh::face_area(Index t, int k) const {
  const Triangle tri = tet_face(tet(t), k);
  const Cross128 c = cross_exact(vertex_fixed(tri[0]), vertex_fixed(tri[1]), vertex_fixed(tri[2]));
  const Int128 n2 = c.x * c.x + c.y * c.y + c.z * c.z;
  const double unit = std::ldexp(lattice_.spacing(), -kFixedBits);
  return 0.5 * std::sqrt(static_cast<double>(n2)) * unit * unit;
}

Vec3 CutCellMesh::tet_centroid(Index t) const {
  const auto& v = tet(t).vertices;
  return centroid(vertex_position(v[0]), vertex_position(v[1]), vertex_position(v[2]), vertex_position(v[3]));
}

Index CutCellMesh::count(Ambiguity a) const {
  return static_cast<Index>(std::count(tags_.begin(), tags_.end(), a));
}

namespace {

struct FaceEntry {
  Triangle tri;
  Index tet;
  int k;
};

}  // namespace

CutCellMesh build_cut_mesh(const LevelSetField& field, int workers) {
  const HexLattice& lattice = field.lattice();
  CutCellMesh mesh(lattice);
  const Index ncell = lattice.cell_count();

  mesh.cell_kind_.resize(static_cast<std::size_t>(ncell));
  mesh.patterns_.resize(static_cast<std::size_t>(ncell));
  std::vector<std::vector<Tet>> per_cell(static_cast<std::size_t>(ncell));
  parallel_for(ncell, workers, [&](Index c) {
    const auto cls = classify_cell(field, c);
    const auto i = static_cast<std::size_t>(c);
    mesh.patterns_[i] = cls.pattern;
    if (!cls.intersected) {
      mesh.cell_kind_[i] = cls.uniform_phase == Phase::solid ? CellKind::uniform_solid : CellKind::uniform_void;
      return;
    }
    mesh.cell_kind_[i] = CellKind::intersected;
    per_cell[i] = tetrahedralize(field, c).tets;
  });

  mesh.crossing_.assign(static_cast<std::size_t>(lattice.edge_count()), 0);
  parallel_for(lattice.edge_count(), workers, [&](Index e) {
    if (const auto x = edge_crossing(field, e)) mesh.crossing_[static_cast<std::size_t>(e)] = x->fixed_offset;
  });

  mesh.cell_begin_.assign(static_cast<std::size_t>(ncell) + 1, 0);
  for (Index c = 0; c < ncell; ++c) {
    const auto i = static_cast<std::size_t>(c);
    mesh.cell_begin_[i + 1] = mesh.cell_begin_[i] + static_cast<Index>(per_cell[i].size());
  }
  mesh.tets_.reserve(static_cast<std::size_t>(mesh.cell_begin_.back()));
  for (auto& v : per_cell) {
    mesh.tets_.insert(mesh.tets_.end(), v.begin(), v.end());
    std::vector<Tet>().swap(v);
  }

  const Index ntet = mesh.tet_count();
  const auto n = static_cast<std::size_t>(ntet);
  mesh.tags_ = tag_ambiguity(mesh.tets_);
  mesh.bat_face_.assign(n, -1);
  mesh.bat_k_.assign(n, -1);
  mesh.phases_.assign(n, -1);
  for (Index t = 0; t < ntet; ++t) {
    const auto i = static_cast<std::size_t>(t);
    const Tet& tet = mesh.tets_[i];
    if (mesh.tags_[i] == Ambiguity::bat) {
      for (int k = 0; k < 4; ++k) {
        const int f = tet_face_on_cell_face(tet, k);
        if (f < 0) continue;
        mesh.bat_face_[i] = lattice.cell_faces(tet.owner)[static_cast<std::size_t>(f)];
        mesh.bat_k_[i] = static_cast<std::int8_t>(k);
      }
    }
    if (mesh.tags_[i] == Ambiguity::unambiguous) {
      for (const auto& v : tet.vertices)
        if (!v.is_crossing()) {
          mesh.phases_[i] = static_cast<std::int8_t>(field.node_phase(v.id));
          break;
        }
    }
  }

  std::vector<FaceEntry> entries;
  entries.reserve(n * 4);
  for (Index t = 0; t < ntet; ++t)
    for (int k = 0; k < 4; ++k) entries.push_back({tet_face(mesh.tets_[static_cast<std::size_t>(t)], k), t, k});
  std::sort(entries.begin(), entries.end(), [](const FaceEntry& a, const FaceEntry& b) {
    return a.tri != b.tri ? a.tri < b.tri : a.tet < b.tet;
  });

  mesh.links_.assign(n, {});
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].tri == entries[i].tri) ++j;
    const FaceEntry& a = entries[i];
    const Tet& ta = mesh.tets_[static_cast<std::size_t>(a.tet)];
    const int code = mesh.patterns_[static_cast<std::size_t>(ta.owner)].code;
    if (j - i > 2) throw DegenerateGeometryError("triangle shared by more than two tetrahedra", ta.owner, code);
    if (j - i == 2) {
      const FaceEntry& b = entries[i + 1];
      mesh.links_[static_cast<std::size_t>(a.tet)][static_cast<std::size_t>(a.k)] = {FaceLink::Kind::tet, b.tet, static_cast<std::int8_t>(b.k)};
      mesh.links_[static_cast<std::size_t>(b.tet)][static_cast<std::size_t>(b.k)] = {FaceLink::Kind::tet, a.tet, static_cast<std::int8_t>(a.k)};
    } else {
      const int f = tet_face_on_cell_face(ta, a.k);
      if (f < 0) throw DegenerateGeometryError("unmatched interior triangle", ta.owner, code);
      const Index g = lattice.cell_faces(ta.owner)[static_cast<std::size_t>(f)];
      const auto nb = lattice.face_neighbors(g);
      FaceLink link;
      if (nb.size() == 2) {
        const Index other = nb[0] == ta.owner ? nb[1] : nb[0];
        if (mesh.cell_kind_[static_cast<std::size_t>(other)] == CellKind::intersected)
          throw DegenerateGeometryError("triangle on lattice face " + std::to_string(g) + " has no partner in cell " +
                                            std::to_string(other),
                                        ta.owner, code);
        link = {FaceLink::Kind::uniform_cell, other, -1};
      }
      mesh.links_[static_cast<std::size_t>(a.tet)][static_cast<std::size_t>(a.k)] = link;
    }
    i = j;
  }
  return mesh;
}

}  // namespace cutcell
