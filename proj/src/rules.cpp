#include "cutcell/rules.hpp"

#include <algorithm>
#include <unordered_map>

#include "cutcell/error.hpp"

namespace cutcell {

namespace {

constexpr std::array<std::string_view, 10> kRuleNames{"L1_solid", "L1_void",  "L2",       "L3",     "L4_max",
                                                      "L4_min",   "G1_solid", "G1_void", "G2_max", "G2_min"};

void add_flag(ResolutionReport& report, std::string flag) {
  constexpr std::size_t kMaxFlags = 100;
  if (report.flags.size() < kMaxFlags) report.flags.push_back(std::move(flag));
}

}  // namespace

Phase area_decision(double solid, double void_area, bool max_variant) {
  const bool solid_larger = solid > void_area;
  return solid_larger == max_variant ? Phase::solid : Phase::void_phase;
}

std::string_view to_string(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

Rule rule_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  throw ValidationError("unknown rule '" + std::string(name) + "'");
}

std::string_view to_string(DeciderVariant v) {
  return v == DeciderVariant::classical_saddle ? "classical" : "paper";
}

DeciderVariant decider_from_string(std::string_view name) {
  if (name == "classical" || name == "classical_saddle") return DeciderVariant::classical_saddle;
  if (name == "paper" || name == "paper_sum") return DeciderVariant::paper_sum;
  throw ValidationError("unknown decider variant '" + std::string(name) + "'");
}

DeciderResult asymptotic_decider(double a, double b, double c, double d, DeciderVariant variant) {
  const double num = a * c - b * d;
  const double den = variant == DeciderVariant::classical_saddle ? a + c - b - d : a + b + c + d;
  if (den == 0.0) return {Phase::solid, 0.0, false, true};
  const double sp = num / den;
  return {sp >= 0.0 ? Phase::solid : Phase::void_phase, sp, sp == 0.0, false};
}

void resolve_bats_by_decider(CutCellMesh& mesh, const LevelSetField& field, DeciderVariant variant,
                             ResolutionReport& report) {
  const HexLattice& lattice = mesh.lattice();
  std::unordered_map<Index, Phase> decided;
  for (Index t = 0; t < mesh.tet_count(); ++t) {
    if (mesh.ambiguity(t) != Ambiguity::bat) continue;
    const Index face = mesh.bat_lattice_face(t);
    auto it = decided.find(face);
    if (it == decided.end()) {
      const auto n = lattice.face_nodes(face);
      const double a = field.value(n[0]), b = field.value(n[1]), c = field.value(n[2]), d = field.value(n[3]);
      const DeciderResult r = asymptotic_decider(a, b, c, d, variant);
      const DeciderVariant other =
          variant == DeciderVariant::classical_saddle ? DeciderVariant::paper_sum : DeciderVariant::classical_saddle;
      ++report.decider_faces;
      if (r.tie) ++report.decider_ties;
      if (r.degenerate) {
        ++report.decider_zero_denominator;
        add_flag(report, "decider zero denominator on face " + std::to_string(face) + ", resolved solid");
      }
      if (asymptotic_decider(a, b, c, d, other).phase != r.phase) ++report.decider_divergence;
      it = decided.emplace(face, r.phase).first;
    }
    mesh.set_phase(t, it->second);
  }
}

void resolve_L1(CutCellMesh& mesh, Phase p) {
  for (Index t = 0; t < mesh.tet_count(); ++t)
    if (mesh.ambiguity(t) == Ambiguity::iat) mesh.set_phase(t, p);
}

void resolve_L2(CutCellMesh& mesh, IterationState& state, ResolutionReport& report) {
  const HexLattice& lattice = mesh.lattice();
  for (Index cell = 0; cell < lattice.cell_count(); ++cell) {
    const CellKind kind = mesh.cell_kind(cell);
    if (kind != CellKind::intersected) {
      state.cell_phase[cell] = kind == CellKind::uniform_solid ? Phase::solid : Phase::void_phase;
      continue;
    }
    if (state.iteration == 1) {
      state.cell_phase[cell] = Phase::solid;
    } else if (!state.cell_phase.contains(cell)) {
      state.cell_phase[cell] = Phase::solid;
      ++report.l2_missing_state;
      add_flag(report, "L2 state missing for cell " + std::to_string(cell) + ", resolved solid");
    }
    const Phase p = state.cell_phase.at(cell);
    const auto [first, last] = mesh.cell_tets(cell);
    for (Index t = first; t < last; ++t)
      if (mesh.ambiguity(t) == Ambiguity::iat) mesh.set_phase(t, p);
  }
  ++state.iteration;
}

void resolve_L3(CutCellMesh& mesh, const LevelSetField& field, ResolutionReport& report) {
  const HexLattice& lattice = mesh.lattice();
  for (Index cell = 0; cell < lattice.cell_count(); ++cell) {
    const auto [first, last] = mesh.cell_tets(cell);
    // Centroid average in cell-local fixed-point units: exact integer sum.
    const FixedPoint base = lattice.node_coords(lattice.cell_nodes(cell)[0]) * kFixedOne;
    FixedPoint sum = FixedPoint::Zero();
    std::int64_t n = 0;
    for (Index t = first; t < last; ++t) {
      if (mesh.ambiguity(t) != Ambiguity::iat) continue;
      for (const auto& v : mesh.tet(t).vertices) sum += mesh.vertex_fixed(v) - base;
      n += 4;
    }
    if (n == 0) continue;
    Vec3 local;
    for (int a = 0; a < 3; ++a)
      local[a] = std::clamp(static_cast<double>(sum[a]) / static_cast<double>(n) / static_cast<double>(kFixedOne), 0.0, 1.0);
    const double phi = interpolate_trilinear(field, cell, local);
    if (phi == 0.0) ++report.l3_ties;
    const Phase p = phi >= 0.0 ? Phase::solid : Phase::void_phase;
    for (Index t = first; t < last; ++t)
      if (mesh.ambiguity(t) == Ambiguity::iat) mesh.set_phase(t, p);
  }
}

void resolve_L4(CutCellMesh& mesh, bool max_variant, ResolutionReport& report) {
  const HexLattice& lattice = mesh.lattice();
  for (Index cell = 0; cell < lattice.cell_count(); ++cell) {
    const auto [first, last] = mesh.cell_tets(cell);
    bool any = false;
    double solid = 0.0, void_area = 0.0;
    for (Index t = first; t < last; ++t) {
      if (mesh.ambiguity(t) != Ambiguity::iat) continue;
      any = true;
      for (int k = 0; k < 4; ++k) {
        const FaceLink& l = mesh.link(t, k);
        if (l.kind != FaceLink::Kind::tet || mesh.is_ambiguous(l.id)) continue;
        (mesh.phase(l.id) == Phase::solid ? solid : void_area) += mesh.face_area(t, k);
      }
    }
    if (!any) continue;
    Phase p;
    if (solid == 0.0 && void_area == 0.0) {
      p = Phase::solid;
      ++report.zero_area_defaults;
      add_flag(report, "L4 cell " + std::to_string(cell) + " has no unambiguous neighbour area, resolved solid");
    } else {
      if (solid == void_area) ++report.area_ties;
      p = area_decision(solid, void_area, max_variant);
    }
    for (Index t = first; t < last; ++t)
      if (mesh.ambiguity(t) == Ambiguity::iat) mesh.set_phase(t, p);
  }
}

void resolve_G1(CutCellMesh& mesh, Phase p) {
  for (Index t = 0; t < mesh.tet_count(); ++t)
    if (mesh.is_ambiguous(t)) mesh.set_phase(t, p);
}

std::vector<AtCluster> build_clusters(const CutCellMesh& mesh) {
  std::vector<AtCluster> clusters;
  std::vector<bool> seen(static_cast<std::size_t>(mesh.tet_count()), false);
  std::vector<Index> stack;
  for (Index seed = 0; seed < mesh.tet_count(); ++seed) {
    if (!mesh.is_ambiguous(seed) || seen[static_cast<std::size_t>(seed)]) continue;
    AtCluster cluster;
    seen[static_cast<std::size_t>(seed)] = true;
    stack.assign(1, seed);
    while (!stack.empty()) {
      const Index t = stack.back();
      stack.pop_back();
      cluster.tets.push_back(t);
      for (int k = 0; k < 4; ++k) {
        const FaceLink& l = mesh.link(t, k);
        if (l.kind != FaceLink::Kind::tet) continue;
        if (mesh.is_ambiguous(l.id)) {
          if (!seen[static_cast<std::size_t>(l.id)]) {
            seen[static_cast<std::size_t>(l.id)] = true;
            stack.push_back(l.id);
          }
        } else {
          (mesh.phase(l.id) == Phase::solid ? cluster.area_solid : cluster.area_void) += mesh.face_area(t, k);
        }
      }
    }
    std::sort(cluster.tets.begin(), cluster.tets.end());
    clusters.push_back(std::move(cluster));
  }
  return clusters;
}

void resolve_G2(CutCellMesh& mesh, const std::vector<AtCluster>& clusters, bool max_variant,
                ResolutionReport& report) {
  report.cluster_count = static_cast<Index>(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const AtCluster& cl = clusters[c];
    Phase p;
    if (cl.area_solid == 0.0 && cl.area_void == 0.0) {
      p = Phase::solid;
      ++report.zero_area_defaults;
      add_flag(report, "G2 cluster " + std::to_string(c) + " has no unambiguous neighbour area, resolved solid");
    } else {
      if (cl.area_solid == cl.area_void) ++report.area_ties;
      p = area_decision(cl.area_solid, cl.area_void, max_variant);
    }
    for (Index t : cl.tets) mesh.set_phase(t, p);
  }
}

ResolutionReport resolve(CutCellMesh& mesh, const LevelSetField& field, const RuleConfig& config,
                         IterationState* state) {
  if (!(field.lattice() == mesh.lattice())) throw ValidationError("field and mesh lattices differ");
  ResolutionReport report;
  report.rule = config.rule;
  report.decider = config.decider;
  for (Index t = 0; t < mesh.tet_count(); ++t)
    if (mesh.is_ambiguous(t)) mesh.clear_phase(t);
  report.iat_count = mesh.count(Ambiguity::iat);
  report.bat_count = mesh.count(Ambiguity::bat);

  if (is_local(config.rule)) resolve_bats_by_decider(mesh, field, config.decider, report);
  switch (config.rule) {
    case Rule::L1_solid:
      resolve_L1(mesh, Phase::solid);
      break;
    case Rule::L1_void:
      resolve_L1(mesh, Phase::void_phase);
      break;
    case Rule::L2: {
      IterationState cold;
      resolve_L2(mesh, state ? *state : cold, report);
      break;
    }
    case Rule::L3:
      resolve_L3(mesh, field, report);
      break;
    case Rule::L4_max:
    case Rule::L4_min:
      resolve_L4(mesh, config.rule == Rule::L4_max, report);
      break;
    case Rule::G1_solid:
      resolve_G1(mesh, Phase::solid);
      break;
    case Rule::G1_void:
      resolve_G1(mesh, Phase::void_phase);
      break;
    case Rule::G2_max:
    case Rule::G2_min:
      resolve_G2(mesh, build_clusters(mesh), config.rule == Rule::G2_max, report);
      break;
  }
  for (Index t = 0; t < mesh.tet_count(); ++t)
    if (!mesh.phase(t)) throw DegenerateGeometryError("tetrahedron left without a phase", mesh.tet(t).owner, mesh.cell_pattern(mesh.tet(t).owner).code);
  return report;
}

}  // namespace cutcell
