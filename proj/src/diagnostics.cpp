#include "cutcell/diagnostics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "cutcell/error.hpp"

namespace cutcell {

namespace {

class UnionFind {
 public:
  explicit UnionFind(Index n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), Index{0}); }
  Index find(Index x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

Phase tet_phase(const CutCellMesh& mesh, Index t) {
  const auto p = mesh.phase(t);
  if (!p) throw ValidationError("tetrahedron " + std::to_string(t) + " has no phase");
  return *p;
}

Phase uniform_phase(const CutCellMesh& mesh, Index cell) {
  return mesh.cell_kind(cell) == CellKind::uniform_solid ? Phase::solid : Phase::void_phase;
}

bool is_uniform(const CutCellMesh& mesh, Index cell) { return mesh.cell_kind(cell) != CellKind::intersected; }

double fixed_volume(Int128 volume6, double spacing) {
  const double unit = std::ldexp(spacing, -kFixedBits);
  return static_cast<double>(volume6) / 6.0 * unit * unit * unit;
}

}  // namespace

GeometryReport measure(const CutCellMesh& mesh) {
  const HexLattice& lattice = mesh.lattice();
  const Int128 cell6 = Int128(6) * kFixedOne * kFixedOne * kFixedOne;
  Int128 solid6 = 0, void6 = 0, at6 = 0, at_solid6 = 0;
  GeometryReport r;
  for (Index c = 0; c < lattice.cell_count(); ++c) {
    if (mesh.cell_kind(c) == CellKind::uniform_solid) {
      solid6 += cell6;
      ++r.uniform_solid_cells;
    } else if (mesh.cell_kind(c) == CellKind::uniform_void) {
      void6 += cell6;
      ++r.uniform_void_cells;
    }
  }
  long double area = 0.0L;
  for (Index t = 0; t < mesh.tet_count(); ++t) {
    const Phase p = tet_phase(mesh, t);
    const Int128 v = mesh.tet_volume6(t);
    (p == Phase::solid ? solid6 : void6) += v;
    if (mesh.is_ambiguous(t)) {
      at6 += v;
      if (p == Phase::solid) at_solid6 += v;
    }
    for (int k = 0; k < 4; ++k) {
      const FaceLink& l = mesh.link(t, k);
      if (l.kind == FaceLink::Kind::tet && l.id > t && tet_phase(mesh, l.id) != p) area += mesh.face_area(t, k);
      if (l.kind == FaceLink::Kind::uniform_cell && uniform_phase(mesh, l.id) != p) area += mesh.face_area(t, k);
    }
  }
  const double h = lattice.spacing();
  r.total_volume = fixed_volume(solid6 + void6, h);
  r.V_solid = fixed_volume(solid6, h);
  r.V_void = fixed_volume(void6, h);
  r.V_AT = fixed_volume(at6, h);
  r.V_AT_solid = fixed_volume(at_solid6, h);
  r.ratio_AT = r.V_solid > 0 ? r.V_AT / r.V_solid : 0.0;
  r.ratio_AT_solid = r.V_solid > 0 ? r.V_AT_solid / r.V_solid : 0.0;
  r.interface_area = static_cast<double>(area);
  r.solid_components = component_count(mesh, Phase::solid);
  r.void_components = component_count(mesh, Phase::void_phase);
  r.watertight = watertight_check(mesh).watertight;
  r.tet_count = mesh.tet_count();
  r.n_IAT = mesh.count(Ambiguity::iat);
  r.n_BAT = mesh.count(Ambiguity::bat);
  return r;
}

Index component_count(const CutCellMesh& mesh, Phase phase) {
  const HexLattice& lattice = mesh.lattice();
  const Index ntet = mesh.tet_count();
  const Index cell_base = ntet;
  UnionFind uf(ntet + lattice.cell_count());
  std::vector<bool> member(static_cast<std::size_t>(ntet + lattice.cell_count()), false);

  for (Index t = 0; t < ntet; ++t) {
    if (tet_phase(mesh, t) != phase) continue;
    member[static_cast<std::size_t>(t)] = true;
    for (int k = 0; k < 4; ++k) {
      const FaceLink& l = mesh.link(t, k);
      if (l.kind == FaceLink::Kind::tet && tet_phase(mesh, l.id) == phase) uf.unite(t, l.id);
      if (l.kind == FaceLink::Kind::uniform_cell && uniform_phase(mesh, l.id) == phase) uf.unite(t, cell_base + l.id);
    }
  }
  const auto& d = lattice.dims();
  for (Index c = 0; c < lattice.cell_count(); ++c) {
    if (!is_uniform(mesh, c) || uniform_phase(mesh, c) != phase) continue;
    member[static_cast<std::size_t>(cell_base + c)] = true;
    const Vec3i ijk = lattice.cell_coords(c);
    for (int a = 0; a < 3; ++a) {
      if (ijk[a] + 1 >= d[static_cast<std::size_t>(a)]) continue;
      Vec3i n = ijk;
      n[a] += 1;
      const Index nc = lattice.cell_index(n[0], n[1], n[2]);
      if (is_uniform(mesh, nc) && uniform_phase(mesh, nc) == phase) uf.unite(cell_base + c, cell_base + nc);
    }
  }
  Index count = 0;
  for (Index i = 0; i < ntet + lattice.cell_count(); ++i)
    if (member[static_cast<std::size_t>(i)] && uf.find(i) == i) ++count;
  return count;
}

WatertightResult watertight_check(const CutCellMesh& mesh) {
  const HexLattice& lattice = mesh.lattice();
  WatertightResult out;
  auto report = [&](Index t, int k, std::string reason) {
    out.watertight = false;
    constexpr std::size_t kMaxIssues = 1000;
    if (out.issues.size() < kMaxIssues) out.issues.push_back({t, k, std::move(reason)});
  };

  std::vector<std::array<VertexRef, 2>> surface_edges;
  for (Index t = 0; t < mesh.tet_count(); ++t) {
    const auto p = mesh.phase(t);
    if (!p) {
      report(t, -1, "tetrahedron has no phase");
      continue;
    }
    const Tet& tet = mesh.tet(t);
    for (int k = 0; k < 4; ++k) {
      const FaceLink& l = mesh.link(t, k);
      const int f = tet_face_on_cell_face(tet, k);
      const Index g = f >= 0 ? lattice.cell_faces(tet.owner)[static_cast<std::size_t>(f)] : -1;
      std::optional<Phase> other;
      switch (l.kind) {
        case FaceLink::Kind::tet: {
          const FaceLink& back = mesh.link(l.id, l.k);
          if (back.kind != FaceLink::Kind::tet || back.id != t || back.k != k ||
              tet_face(mesh.tet(l.id), l.k) != tet_face(tet, k)) {
            report(t, k, "face link is not reciprocal");
            continue;
          }
          other = mesh.phase(l.id);
          if (!other) continue;  // reported on its own tet
          break;
        }
        case FaceLink::Kind::uniform_cell: {
          const auto nb = g >= 0 ? lattice.face_neighbors(g) : std::vector<Index>{};
          if (!is_uniform(mesh, l.id) || std::find(nb.begin(), nb.end(), l.id) == nb.end()) {
            report(t, k, "face linked to a cell that does not share it");
            continue;
          }
          other = uniform_phase(mesh, l.id);
          break;
        }
        case FaceLink::Kind::boundary:
          if (g < 0 || !lattice.is_boundary_face(g)) report(t, k, "open face inside the lattice");
          continue;
      }
      if (*other == *p) continue;
      // Phase-boundary triangle: one solid side, one void side by construction
      // of the link. Record its edges once: from the solid tet, or from the tet
      // when the other side is a uniform cell.
      if (*p != Phase::solid && l.kind == FaceLink::Kind::tet) continue;
      const Triangle tri = tet_face(tet, k);
      surface_edges.push_back({tri[0], tri[1]});
      surface_edges.push_back({tri[0], tri[2]});
      surface_edges.push_back({tri[1], tri[2]});
    }
  }

  std::sort(surface_edges.begin(), surface_edges.end());
  const auto& d = lattice.dims();
  for (std::size_t i = 0; i < surface_edges.size();) {
    std::size_t j = i;
    while (j < surface_edges.size() && surface_edges[j] == surface_edges[i]) ++j;
    if ((j - i) % 2 == 1) {
      const FixedPoint a = mesh.vertex_fixed(surface_edges[i][0]);
      const FixedPoint b = mesh.vertex_fixed(surface_edges[i][1]);
      bool on_boundary = false;
      for (int ax = 0; ax < 3; ++ax)
        on_boundary |= a[ax] == b[ax] && (a[ax] == 0 || a[ax] == d[static_cast<std::size_t>(ax)] * kFixedOne);
      if (!on_boundary) report(-1, -1, "interface surface is open along an edge");
    }
    i = j;
  }

  std::unordered_map<Index, std::pair<Index, Phase>> bat_phase;  // lattice face -> (first BAT, phase)
  for (Index t = 0; t < mesh.tet_count(); ++t) {
    if (mesh.ambiguity(t) != Ambiguity::bat || !mesh.phase(t)) continue;
    const Index face = mesh.bat_lattice_face(t);
    const auto [it, inserted] = bat_phase.try_emplace(face, t, *mesh.phase(t));
    if (!inserted && it->second.second != *mesh.phase(t))
      report(t, mesh.bat_local_face(t),
             "BAT phase differs from BAT " + std::to_string(it->second.first) + " on lattice face " + std::to_string(face));
  }
  return out;
}

std::string_view to_string(ShellPreset p) { return p == ShellPreset::full ? "full" : "octant"; }

ShellPreset shell_preset_from_string(std::string_view name) {
  if (name == "full") return ShellPreset::full;
  if (name == "octant") return ShellPreset::octant;
  throw ValidationError("unknown shell preset '" + std::string(name) + "'");
}

ShellLayout shell_layout(ShellPreset preset) {
  if (preset == ShellPreset::full) return {HexLattice({10, 10, 10}, Vec3::Zero(), 0.3), Vec3(1.5, 1.5, 1.5)};
  return {HexLattice({10, 10, 10}, Vec3::Zero(), 0.15), Vec3::Zero()};
}

PrimitiveScene shell_scene(const Vec3& center, double inner, double outer) {
  PrimitiveScene scene;
  scene.background = Phase::void_phase;
  scene.primitives.push_back({Sphere{center, outer}, Phase::solid});
  scene.primitives.push_back({Sphere{center, inner}, Phase::void_phase});
  return scene;
}

std::vector<ShellRow> shell_study(double inner, const std::vector<double>& outers, ShellPreset preset,
                                  const RuleConfig& config, int workers) {
  if (!(inner > 0)) throw ValidationError("inner radius must be positive");
  if (outers.empty()) throw ValidationError("no outer radii given");
  const ShellLayout layout = shell_layout(preset);
  const double reach = 1.5;  // distance from the centre to the nearest domain wall
  std::vector<ShellRow> rows;
  for (double outer : outers) {
    if (!(outer > inner)) throw ValidationError("outer radius must exceed the inner radius");
    if (outer > reach) throw ValidationError("shell outside domain: outer radius exceeds 1.5");
    const LevelSetField field = sample_scene(shell_scene(layout.center, inner, outer), layout.lattice);
    CutCellMesh mesh = build_cut_mesh(field, workers);
    IterationState state;
    resolve(mesh, field, config, &state);
    const double h = layout.lattice.spacing();
    rows.push_back({inner, outer, outer - inner, (outer - inner) / h, config.rule, measure(mesh)});
  }
  return rows;
}

std::string shell_csv_header() {
  return "inner_radius,outer_radius,thickness,thickness_over_h,rule,V_solid,V_void,V_AT,V_AT_solid,ratio_AT,"
         "ratio_AT_solid,interface_area,solid_components,void_components,watertight,n_IAT,n_BAT";
}

std::string shell_csv_row(const ShellRow& row) {
  const GeometryReport& r = row.report;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%lld,%lld,%d,%lld,%lld",
                row.inner_radius, row.outer_radius, row.thickness, row.thickness_over_h,
                std::string(to_string(row.rule)).c_str(), r.V_solid, r.V_void, r.V_AT, r.V_AT_solid, r.ratio_AT,
                r.ratio_AT_solid, r.interface_area, static_cast<long long>(r.solid_components),
                static_cast<long long>(r.void_components), r.watertight ? 1 : 0, static_cast<long long>(r.n_IAT),
                static_cast<long long>(r.n_BAT));
  return buf;
}

std::vector<AtlasRow> npac_atlas(SymmetryGroup group) {
  const NpacTable table(group);
  const HexLattice unit({1, 1, 1}, Vec3::Zero(), 1.0);
  std::vector<AtlasRow> rows;
  for (int id = 1; id <= table.class_count(); ++id) {
    const std::uint8_t code = table.representatives()[static_cast<std::size_t>(id - 1)];
    std::vector<double> values(8);
    for (int c = 0; c < hex::corner_count; ++c) values[static_cast<std::size_t>(c)] = (code >> c) & 1 ? 1.0 : -1.0;
    const CutCellMesh mesh = build_cut_mesh(LevelSetField(unit, values));
    rows.push_back({id, code, table.orbit_size(id), SignPattern{code}.crossing_count(), mesh.tet_count(),
                    mesh.count(Ambiguity::iat), mesh.count(Ambiguity::bat)});
  }
  return rows;
}

RuleComparison compare_rules(const LevelSetField& field, const std::vector<Rule>& rules, DeciderVariant decider,
                             int workers) {
  RuleComparison cmp;
  CutCellMesh mesh = build_cut_mesh(field, workers);
  for (Rule rule : rules) {
    IterationState state;
    cmp.resolutions.push_back(resolve(mesh, field, {rule, decider}, &state));
    cmp.rules.push_back(rule);
    cmp.reports.push_back(measure(mesh));
  }
  return cmp;
}

}  // namespace cutcell
