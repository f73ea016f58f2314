#pragma once

#include <string>
#include <vector>

#include "cutcell/rules.hpp"

namespace cutcell {

struct GeometryReport {
  double total_volume = 0.0;
  double V_solid = 0.0;
  double V_void = 0.0;
  double V_AT = 0.0;
  double V_AT_solid = 0.0;
  double ratio_AT = 0.0;        // V_AT / V_solid, 0 when V_solid is 0
  double ratio_AT_solid = 0.0;  // V_AT_solid / V_solid
  double interface_area = 0.0;
  Index solid_components = 0;
  Index void_components = 0;
  bool watertight = true;
  Index tet_count = 0;
  Index uniform_solid_cells = 0;
  Index uniform_void_cells = 0;
  Index n_IAT = 0;
  Index n_BAT = 0;
};

/// Volumes are exact integer sums converted once, so they do not depend on
/// summation order; areas are summed in tet id order.
GeometryReport measure(const CutCellMesh& mesh);

/// Face-connected components of one phase over tets and uniform cells.
Index component_count(const CutCellMesh& mesh, Phase phase);

struct WatertightIssue {
  Index tet;   // -1 for issues not tied to one tet
  int face;    // tet face index, -1 if not applicable
  std::string reason;
};

struct WatertightResult {
  bool watertight = true;
  std::vector<WatertightIssue> issues;
};

/// Checks that the phased mesh bounds a consistent solid region:
///  - every tet face is matched by a tet, a uniform cell or the lattice boundary;
///  - every phase-boundary triangle has one solid and one void side;
///  - the phase-boundary surface is closed (each edge off the lattice boundary
///    is used an even number of times);
///  - all BATs on one lattice face carry the same phase.
WatertightResult watertight_check(const CutCellMesh& mesh);

enum class ShellPreset : std::uint8_t { full, octant };

std::string_view to_string(ShellPreset p);
ShellPreset shell_preset_from_string(std::string_view name);

struct ShellLayout {
  HexLattice lattice;
  Vec3 center;
};

/// full: 10^3 cells on [0,3]^3, shell centred in the box.
/// octant: 10^3 cells on [0,1.5]^3, shell centred at the origin corner (one
/// eighth of the 3x3x3 box).
ShellLayout shell_layout(ShellPreset preset);

inline constexpr ShellPreset kDefaultShellPreset = ShellPreset::octant;
inline constexpr double kDefaultShellInner = 0.6;
inline const std::vector<double> kDefaultShellOuters{0.7, 0.75, 0.8, 0.9, 1.0, 1.2, 1.4};

struct ShellRow {
  double inner_radius;
  double outer_radius;
  double thickness;
  double thickness_over_h;
  Rule rule;
  GeometryReport report;
};

/// Solid ball of the outer radius with a void ball of the inner radius removed.
PrimitiveScene shell_scene(const Vec3& center, double inner, double outer);

std::vector<ShellRow> shell_study(double inner, const std::vector<double>& outers, ShellPreset preset,
                                  const RuleConfig& config, int workers = 1);

std::string shell_csv_header();
std::string shell_csv_row(const ShellRow& row);

struct AtlasRow {
  int class_id;
  std::uint8_t representative;
  int orbit_size;
  int crossings;
  Index tets;
  Index iats;
  Index bats;
};

/// One row per class of `group`, decomposing the representative on a single
/// unit cell with nodal values +1 / -1.
std::vector<AtlasRow> npac_atlas(SymmetryGroup group);

struct RuleComparison {
  std::vector<Rule> rules;
  std::vector<GeometryReport> reports;
  std::vector<ResolutionReport> resolutions;
};

/// Resolves one field under each rule (L2 from a cold start).
RuleComparison compare_rules(const LevelSetField& field, const std::vector<Rule>& rules, DeciderVariant decider,
                             int workers = 1);

}  // namespace cutcell
