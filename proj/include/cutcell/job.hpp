#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cutcell/rules.hpp"

namespace cutcell {

inline constexpr int kJobSchemaVersion = 1;

struct NodalSource {
  std::vector<double> values;
};

/// Named analytic fields sampled at the nodes.
///   random   uniform in [-1, 1] from `seed`
///   checker  (-1)^(i+j+k) scaled by `amplitude`
///   gyroid   sin x cos y + sin y cos z + sin z cos x - `offset`, period `period`
///   plane    normal . (x - point)
struct PresetSource {
  std::string name;
  std::uint64_t seed = 0;
  double amplitude = 1.0;
  double period = 1.0;
  double offset = 0.0;
  Vec3 normal = Vec3::UnitX();
  Vec3 point = Vec3::Zero();
};

using FieldSource = std::variant<NodalSource, PrimitiveScene, PresetSource>;

/// Parsed job description. Exactly one of `field` / `iterations` is given in
/// the document; both end up as the `fields` list (one entry for `field`).
struct JobSpec {
  HexLattice lattice;
  std::vector<FieldSource> fields;
  std::optional<FilterSpec> filter;
  std::optional<Rule> rule;
  std::optional<DeciderVariant> decider;
};

JobSpec parse_job(const nlohmann::json& doc);
JobSpec load_job(const std::string& path);

PrimitiveScene parse_scene(const nlohmann::json& doc);
HexLattice parse_lattice(const nlohmann::json& doc);

std::vector<double> sample_source(const FieldSource& source, const HexLattice& lattice);
LevelSetField make_field(const FieldSource& source, const HexLattice& lattice,
                         const std::optional<FilterSpec>& filter = std::nullopt);
std::vector<LevelSetField> make_fields(const JobSpec& job);

/// Nodal values uniform in [-1, 1], reproducible from `seed`.
std::vector<double> random_values(const HexLattice& lattice, std::uint64_t seed);

}  // namespace cutcell
