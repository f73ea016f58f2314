#include "cutcell/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cutcell/error.hpp"

namespace cutcell {

namespace {

constexpr int kVtkTetra = 10;
constexpr int kVtkHexahedron = 12;
// VTK hexahedron corner order expressed in local corner indices.
constexpr std::array<int, 8> kVtkHexOrder{0, 1, 3, 2, 4, 5, 7, 6};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int phase_code(const CutCellMesh& mesh, Index t) {
  const auto p = mesh.phase(t);
  if (!p) throw ValidationError("cannot export: tetrahedron " + std::to_string(t) + " has no phase");
  return static_cast<int>(*p);
}

template <typename T>
void write_scalars(std::ostream& out, const char* name, const std::vector<T>& values) {
  out << "SCALARS " << name << " int 1\nLOOKUP_TABLE default\n";
  for (const auto& v : values) out << v << '\n';
}

}  // namespace

void write_vtk(const CutCellMesh& mesh, std::ostream& out) {
  const HexLattice& lattice = mesh.lattice();
  const Index nnode = lattice.node_count();
  std::vector<Index> crossing_point(static_cast<std::size_t>(lattice.edge_count()), -1);
  Index npoint = nnode;
  for (Index e = 0; e < lattice.edge_count(); ++e)
    if (mesh.crossing_offset(e) != 0) crossing_point[static_cast<std::size_t>(e)] = npoint++;

  out << "# vtk DataFile Version 3.0\ncutcell mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << npoint << " double\n";
  for (Index n = 0; n < nnode; ++n) {
    const Vec3 x = mesh.vertex_position(VertexRef::corner(n));
    out << fmt17(x[0]) << ' ' << fmt17(x[1]) << ' ' << fmt17(x[2]) << '\n';
  }
  for (Index e = 0; e < lattice.edge_count(); ++e) {
    if (crossing_point[static_cast<std::size_t>(e)] < 0) continue;
    const Vec3 x = mesh.vertex_position(VertexRef::crossing(e));
    out << fmt17(x[0]) << ' ' << fmt17(x[1]) << ' ' << fmt17(x[2]) << '\n';
  }

  std::vector<Index> uniform;
  for (Index c = 0; c < lattice.cell_count(); ++c)
    if (mesh.cell_kind(c) != CellKind::intersected) uniform.push_back(c);
  const Index ncell = mesh.tet_count() + static_cast<Index>(uniform.size());
  out << "CELLS " << ncell << ' ' << mesh.tet_count() * 5 + static_cast<Index>(uniform.size()) * 9 << '\n';
  auto point_of = [&](const VertexRef& v) {
    return v.is_crossing() ? crossing_point[static_cast<std::size_t>(v.id)] : v.id;
  };
  for (const auto& t : mesh.tets()) {
    out << 4;
    for (const auto& v : t.vertices) out << ' ' << point_of(v);
    out << '\n';
  }
  for (Index c : uniform) {
    const auto nodes = lattice.cell_nodes(c);
    out << 8;
    for (int k : kVtkHexOrder) out << ' ' << nodes[static_cast<std::size_t>(k)];
    out << '\n';
  }
  out << "CELL_TYPES " << ncell << '\n';
  for (Index t = 0; t < mesh.tet_count(); ++t) out << kVtkTetra << '\n';
  for (std::size_t i = 0; i < uniform.size(); ++i) out << kVtkHexahedron << '\n';

  std::vector<int> phase, ambiguity;
  std::vector<Index> owner;
  phase.reserve(static_cast<std::size_t>(ncell));
  for (Index t = 0; t < mesh.tet_count(); ++t) {
    phase.push_back(phase_code(mesh, t));
    ambiguity.push_back(static_cast<int>(mesh.ambiguity(t)));
    owner.push_back(mesh.tet(t).owner);
  }
  for (Index c : uniform) {
    phase.push_back(mesh.cell_kind(c) == CellKind::uniform_solid ? 1 : 0);
    ambiguity.push_back(0);
    owner.push_back(c);
  }
  out << "CELL_DATA " << ncell << '\n';
  write_scalars(out, "phase", phase);
  write_scalars(out, "ambiguity", ambiguity);
  write_scalars(out, "owner_cell", owner);
}

std::string vtk_string(const CutCellMesh& mesh) {
  std::ostringstream os;
  write_vtk(mesh, os);
  return os.str();
}

void write_vtk_file(const CutCellMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_vtk(mesh, out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

VtkMesh read_vtk(std::istream& in) {
  VtkMesh m;
  std::string word;
  auto expect_count = [&](const char* what) {
    Index n = -1;
    if (!(in >> n) || n < 0) throw IoError(std::string("malformed ") + what + " section");
    return n;
  };
  std::string line;
  for (int i = 0; i < 4 && std::getline(in, line); ++i) {
    if (i == 0 && line.rfind("# vtk DataFile", 0) != 0) throw IoError("not a legacy VTK file");
    if (i == 2 && line != "ASCII") throw IoError("only ASCII VTK files are supported");
    if (i == 3 && line != "DATASET UNSTRUCTURED_GRID") throw IoError("only unstructured grids are supported");
  }
  Index ncell = 0;
  std::vector<int>* target = nullptr;
  while (in >> word) {
    if (word == "POINTS") {
      const Index n = expect_count("POINTS");
      in >> word;
      m.points.resize(static_cast<std::size_t>(n));
      for (auto& p : m.points)
        if (!(in >> p[0] >> p[1] >> p[2])) throw IoError("truncated POINTS section");
    } else if (word == "CELLS") {
      ncell = expect_count("CELLS");
      expect_count("CELLS");
      m.cells.resize(static_cast<std::size_t>(ncell));
      for (auto& c : m.cells) {
        const Index k = expect_count("CELLS");
        c.resize(static_cast<std::size_t>(k));
        for (auto& v : c)
          if (!(in >> v) || v < 0 || v >= static_cast<Index>(m.points.size())) throw IoError("bad point index in CELLS");
      }
    } else if (word == "CELL_TYPES") {
      if (expect_count("CELL_TYPES") != ncell) throw IoError("CELL_TYPES count mismatch");
      m.cell_types.resize(static_cast<std::size_t>(ncell));
      for (auto& t : m.cell_types)
        if (!(in >> t)) throw IoError("truncated CELL_TYPES section");
    } else if (word == "CELL_DATA") {
      if (expect_count("CELL_DATA") != ncell) throw IoError("CELL_DATA count mismatch");
    } else if (word == "SCALARS") {
      std::string name, type;
      int comps = 0;
      in >> name >> type >> comps;
      std::string lt, table;
      in >> lt >> table;
      if (lt != "LOOKUP_TABLE") throw IoError("missing LOOKUP_TABLE after SCALARS " + name);
      std::vector<long long> values(static_cast<std::size_t>(ncell));
      for (auto& v : values)
        if (!(in >> v)) throw IoError("truncated SCALARS " + name);
      if (name == "phase") target = &m.phase;
      else if (name == "ambiguity") target = &m.ambiguity;
      else target = nullptr;
      if (target) target->assign(values.begin(), values.end());
      if (name == "owner_cell") m.owner_cell.assign(values.begin(), values.end());
    } else {
      throw IoError("unexpected token '" + word + "' in VTK file");
    }
  }
  if (m.cell_types.size() != m.cells.size()) throw IoError("missing CELL_TYPES section");
  if (m.phase.size() != m.cells.size()) throw IoError("missing phase cell data");
  if (m.ambiguity.empty()) m.ambiguity.assign(m.cells.size(), 0);
  return m;
}

VtkMesh read_vtk_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_vtk(in);
}

FileVolumes measure_vtk(const VtkMesh& m) {
  FileVolumes v;
  for (std::size_t i = 0; i < m.cells.size(); ++i) {
    const auto& c = m.cells[i];
    const auto& p = m.points;
    double vol = 0.0;
    if (m.cell_types[i] == kVtkTetra && c.size() == 4) {
      vol = std::abs(tet_signed_volume(p[static_cast<std::size_t>(c[0])], p[static_cast<std::size_t>(c[1])],
                                       p[static_cast<std::size_t>(c[2])], p[static_cast<std::size_t>(c[3])]));
      ++v.tet_count;
    } else if (m.cell_types[i] == kVtkHexahedron && c.size() == 8) {
      const Vec3& a = p[static_cast<std::size_t>(c[0])];
      vol = std::abs((p[static_cast<std::size_t>(c[1])] - a)
                         .dot((p[static_cast<std::size_t>(c[3])] - a).cross(p[static_cast<std::size_t>(c[4])] - a)));
      ++v.hex_count;
    } else {
      throw IoError("unsupported cell type " + std::to_string(m.cell_types[i]));
    }
    const bool solid = m.phase[i] == 1;
    (solid ? v.V_solid : v.V_void) += vol;
    if (m.ambiguity[i] != 0) {
      v.V_AT += vol;
      if (solid) v.V_AT_solid += vol;
      (m.ambiguity[i] == 1 ? v.n_IAT : v.n_BAT) += 1;
    }
  }
  return v;
}

nlohmann::json to_json(const GeometryReport& r) {
  return {{"total_volume", r.total_volume},
          {"V_solid", r.V_solid},
          {"V_void", r.V_void},
          {"V_AT", r.V_AT},
          {"V_AT_solid", r.V_AT_solid},
          {"ratio_AT", r.ratio_AT},
          {"ratio_AT_solid", r.ratio_AT_solid},
          {"interface_area", r.interface_area},
          {"solid_components", r.solid_components},
          {"void_components", r.void_components},
          {"watertight", r.watertight},
          {"tet_count", r.tet_count},
          {"uniform_solid_cells", r.uniform_solid_cells},
          {"uniform_void_cells", r.uniform_void_cells},
          {"n_IAT", r.n_IAT},
          {"n_BAT", r.n_BAT}};
}

nlohmann::json to_json(const ResolutionReport& r) {
  return {{"rule", std::string(to_string(r.rule))},
          {"decider", std::string(to_string(r.decider))},
          {"at_counts", {{"IAT", r.iat_count}, {"BAT", r.bat_count}}},
          {"decider_faces", r.decider_faces},
          {"ties",
           {{"decider", r.decider_ties}, {"area", r.area_ties}, {"L3", r.l3_ties}}},
          {"defaults",
           {{"decider_zero_denominator", r.decider_zero_denominator},
            {"zero_area", r.zero_area_defaults},
            {"L2_missing_state", r.l2_missing_state}}},
          {"decider_divergence", r.decider_divergence},
          {"cluster_count", r.cluster_count},
          {"flags", r.flags}};
}

nlohmann::json to_json(const FileVolumes& v) {
  return {{"V_solid", v.V_solid}, {"V_void", v.V_void},     {"V_AT", v.V_AT},   {"V_AT_solid", v.V_AT_solid},
          {"tet_count", v.tet_count}, {"hex_count", v.hex_count}, {"n_IAT", v.n_IAT}, {"n_BAT", v.n_BAT}};
}

std::string geometry_csv_header() {
  return "V_solid,V_void,V_AT,V_AT_solid,ratio_AT,ratio_AT_solid,interface_area,solid_components,void_components,"
         "watertight,n_IAT,n_BAT";
}

std::string geometry_csv_row(const GeometryReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%lld,%lld,%d,%lld,%lld", r.V_solid,
                r.V_void, r.V_AT, r.V_AT_solid, r.ratio_AT, r.ratio_AT_solid, r.interface_area,
                static_cast<long long>(r.solid_components), static_cast<long long>(r.void_components),
                r.watertight ? 1 : 0, static_cast<long long>(r.n_IAT), static_cast<long long>(r.n_BAT));
  return buf;
}

}  // namespace cutcell
