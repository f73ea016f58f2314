#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cutcell/cut_mesh.hpp"

namespace cutcell {

enum class Rule : std::uint8_t { L1_solid, L1_void, L2, L3, L4_max, L4_min, G1_solid, G1_void, G2_max, G2_min };

inline constexpr std::array<Rule, 10> kAllRules{Rule::L1_solid, Rule::L1_void, Rule::L2,       Rule::L3,
                                                Rule::L4_max,   Rule::L4_min,  Rule::G1_solid, Rule::G1_void,
                                                Rule::G2_max,   Rule::G2_min};

std::string_view to_string(Rule r);
Rule rule_from_string(std::string_view name);
inline bool is_local(Rule r) { return r <= Rule::L4_min; }

enum class DeciderVariant : std::uint8_t { classical_saddle, paper_sum };

std::string_view to_string(DeciderVariant v);
/// Accepts "classical" / "classical_saddle" and "paper" / "paper_sum".
DeciderVariant decider_from_string(std::string_view name);

struct RuleConfig {
  Rule rule = Rule::L1_solid;
  DeciderVariant decider = DeciderVariant::classical_saddle;
};

/// Per-cell elemental phase carried between design iterations for L2.
struct IterationState {
  std::map<Index, Phase> cell_phase;
  int iteration = 1;  // D_it, starts at 1
};

struct DeciderResult {
  Phase phase;
  double saddle_value;
  bool tie;         // saddle value exactly zero
  bool degenerate;  // zero denominator
};

/// Face values in cyclic order (a and c diagonal). Saddle value >= 0 is solid.
DeciderResult asymptotic_decider(double a, double b, double c, double d, DeciderVariant variant);

/// Area comparison shared by L4 and G2. The test is strict, so equal areas
/// take the else branch (void for max, solid for min).
Phase area_decision(double area_solid, double area_void, bool max_variant);

/// Tallies of ties and defaulted decisions made during one resolution.
struct ResolutionReport {
  Rule rule = Rule::L1_solid;
  DeciderVariant decider = DeciderVariant::classical_saddle;
  Index iat_count = 0;
  Index bat_count = 0;
  Index decider_faces = 0;
  Index decider_ties = 0;
  Index decider_zero_denominator = 0;
  /// BAT faces where the classical and printed-denominator variants disagree.
  Index decider_divergence = 0;
  Index area_ties = 0;         // L4 / G2 equal non-zero areas
  Index zero_area_defaults = 0;  // L4 / G2 with no unambiguous neighbour area
  Index l2_missing_state = 0;
  Index l3_ties = 0;
  Index cluster_count = 0;
  std::vector<std::string> flags;
};

struct AtCluster {
  std::vector<Index> tets;  // ascending
  double area_solid = 0.0;
  double area_void = 0.0;
};

// Individual passes. Each only writes the phases it is responsible for.
void resolve_bats_by_decider(CutCellMesh& mesh, const LevelSetField& field, DeciderVariant variant,
                             ResolutionReport& report);
void resolve_L1(CutCellMesh& mesh, Phase p);
void resolve_L2(CutCellMesh& mesh, IterationState& state, ResolutionReport& report);
void resolve_L3(CutCellMesh& mesh, const LevelSetField& field, ResolutionReport& report);
void resolve_L4(CutCellMesh& mesh, bool max_variant, ResolutionReport& report);
void resolve_G1(CutCellMesh& mesh, Phase p);
/// Connected components of ATs under full shared-face adjacency, ordered by
/// smallest tet id, with the shared AT / unambiguous area of each.
std::vector<AtCluster> build_clusters(const CutCellMesh& mesh);
void resolve_G2(CutCellMesh& mesh, const std::vector<AtCluster>& clusters, bool max_variant, ResolutionReport& report);

/// Clears every AT phase and runs the configured rule. L2 needs `state` (a
/// fresh cold-start state is used when null) and advances it by one iteration.
ResolutionReport resolve(CutCellMesh& mesh, const LevelSetField& field, const RuleConfig& config,
                         IterationState* state = nullptr);

}  // namespace cutcell
