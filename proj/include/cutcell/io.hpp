#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "cutcell/diagnostics.hpp"

namespace cutcell {

/// Legacy ASCII unstructured grid. Points are all lattice nodes followed by
/// every edge crossing in edge id order. Cells are the tets in id order (VTK
/// type 10) followed by the uniform cells in cell id order (VTK type 12).
/// Cell data: `phase` (0 void, 1 solid), `ambiguity` (0 none, 1 IAT, 2 BAT),
/// `owner_cell`. Coordinates are written with 17 significant digits.
void write_vtk(const CutCellMesh& mesh, std::ostream& out);
std::string vtk_string(const CutCellMesh& mesh);
void write_vtk_file(const CutCellMesh& mesh, const std::string& path);

struct VtkMesh {
  std::vector<Vec3> points;
  std::vector<int> cell_types;
  std::vector<std::vector<Index>> cells;
  std::vector<int> phase;
  std::vector<int> ambiguity;
  std::vector<Index> owner_cell;
};

VtkMesh read_vtk(std::istream& in);
VtkMesh read_vtk_file(const std::string& path);

/// Volumes recomputed from an exported mesh.
struct FileVolumes {
  double V_solid = 0.0;
  double V_void = 0.0;
  double V_AT = 0.0;
  double V_AT_solid = 0.0;
  Index tet_count = 0;
  Index hex_count = 0;
  Index n_IAT = 0;
  Index n_BAT = 0;
};

FileVolumes measure_vtk(const VtkMesh& mesh);

nlohmann::json to_json(const GeometryReport& r);
nlohmann::json to_json(const ResolutionReport& r);
nlohmann::json to_json(const FileVolumes& v);

std::string geometry_csv_header();
std::string geometry_csv_row(const GeometryReport& r);

}  // namespace cutcell
