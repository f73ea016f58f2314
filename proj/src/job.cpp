#include "cutcell/job.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "cutcell/error.hpp"

namespace cutcell {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key)) throw ValidationError("unknown key '" + key + "' in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

Vec3 vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ValidationError(what + " must be an array of 3 numbers");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Phase phase_name(const json& j, const std::string& what) {
  const auto s = j.get<std::string>();
  if (s == "solid") return Phase::solid;
  if (s == "void") return Phase::void_phase;
  throw ValidationError(what + " must be \"solid\" or \"void\"");
}

PresetSource parse_preset(const json& j) {
  check_keys(j, {"name", "seed", "amplitude", "period", "offset", "normal", "point"}, "preset");
  PresetSource p;
  p.name = require(j, "name", "preset").get<std::string>();
  if (p.name != "random" && p.name != "checker" && p.name != "gyroid" && p.name != "plane")
    throw ValidationError("unknown preset '" + p.name + "'");
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("amplitude")) p.amplitude = j.at("amplitude").get<double>();
  if (j.contains("period")) p.period = j.at("period").get<double>();
  if (j.contains("offset")) p.offset = j.at("offset").get<double>();
  if (j.contains("normal")) p.normal = vec3(j.at("normal"), "preset normal");
  if (j.contains("point")) p.point = vec3(j.at("point"), "preset point");
  if (!(p.amplitude > 0) || !(p.period > 0)) throw ValidationError("preset amplitude and period must be positive");
  return p;
}

FieldSource parse_source(const json& j) {
  check_keys(j, {"nodal", "scene", "preset"}, "field");
  if (j.size() != 1) throw ValidationError("field must have exactly one of nodal, scene, preset");
  if (j.contains("nodal")) return NodalSource{j.at("nodal").get<std::vector<double>>()};
  if (j.contains("scene")) return parse_scene(j.at("scene"));
  return parse_preset(j.at("preset"));
}

FilterSpec parse_filter(const json& j) {
  check_keys(j, {"radius", "lower", "upper"}, "filter");
  FilterSpec f{require(j, "radius", "filter").get<double>(), std::nullopt, std::nullopt};
  if (j.contains("lower")) f.lower = j.at("lower").get<double>();
  if (j.contains("upper")) f.upper = j.at("upper").get<double>();
  return f;
}

JobSpec parse_job_impl(const json& doc) {
  check_keys(doc, {"schema_version", "lattice", "field", "iterations", "filter", "rule", "decider"}, "job");
  const int version = require(doc, "schema_version", "job").get<int>();
  if (version != kJobSchemaVersion)
    throw ValidationError("unsupported schema_version " + std::to_string(version));
  JobSpec job{parse_lattice(require(doc, "lattice", "job")), {}, std::nullopt, std::nullopt, std::nullopt};
  if (doc.contains("field") == doc.contains("iterations"))
    throw ValidationError("job needs exactly one of 'field' or 'iterations'");
  if (doc.contains("field")) {
    job.fields.push_back(parse_source(doc.at("field")));
  } else {
    const json& it = doc.at("iterations");
    if (!it.is_array() || it.empty()) throw ValidationError("'iterations' must be a non-empty array");
    for (const auto& f : it) job.fields.push_back(parse_source(f));
  }
  if (doc.contains("filter")) job.filter = parse_filter(doc.at("filter"));
  if (doc.contains("rule")) job.rule = rule_from_string(doc.at("rule").get<std::string>());
  if (doc.contains("decider")) job.decider = decider_from_string(doc.at("decider").get<std::string>());
  for (const auto& f : job.fields) {
    if (const auto* n = std::get_if<NodalSource>(&f); n && static_cast<Index>(n->values.size()) != job.lattice.node_count())
      throw ValidationError("nodal array has " + std::to_string(n->values.size()) + " values, lattice has " +
                            std::to_string(job.lattice.node_count()) + " nodes");
    if (const auto* s = std::get_if<PrimitiveScene>(&f)) validate(*s);
  }
  return job;
}

}  // namespace

HexLattice parse_lattice(const json& j) {
  check_keys(j, {"dims", "origin", "spacing"}, "lattice");
  const auto dims = require(j, "dims", "lattice").get<std::vector<Index>>();
  if (dims.size() != 3) throw ValidationError("lattice dims must have 3 entries");
  const Vec3 origin = j.contains("origin") ? vec3(j.at("origin"), "lattice origin") : Vec3::Zero();
  return HexLattice({dims[0], dims[1], dims[2]}, origin, require(j, "spacing", "lattice").get<double>());
}

PrimitiveScene parse_scene(const json& j) {
  check_keys(j, {"background", "primitives"}, "scene");
  PrimitiveScene scene;
  if (j.contains("background")) scene.background = phase_name(j.at("background"), "scene background");
  const json& prims = require(j, "primitives", "scene");
  if (!prims.is_array()) throw ValidationError("scene primitives must be an array");
  for (const auto& p : prims) {
    const auto shape = require(p, "shape", "primitive").get<std::string>();
    Primitive prim;
    if (shape == "sphere") {
      check_keys(p, {"shape", "center", "radius", "sense"}, "sphere");
      prim.shape = Sphere{vec3(require(p, "center", "sphere"), "sphere center"), require(p, "radius", "sphere").get<double>()};
    } else if (shape == "cuboid") {
      check_keys(p, {"shape", "min", "max", "sense"}, "cuboid");
      prim.shape = Cuboid{vec3(require(p, "min", "cuboid"), "cuboid min"), vec3(require(p, "max", "cuboid"), "cuboid max")};
    } else {
      throw ValidationError("unknown primitive shape '" + shape + "'");
    }
    if (p.contains("sense")) prim.sense = phase_name(p.at("sense"), "primitive sense");
    scene.primitives.push_back(prim);
  }
  validate(scene);
  return scene;
}

JobSpec parse_job(const json& doc) {
  try {
    return parse_job_impl(doc);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed job: ") + e.what());
  }
}

JobSpec load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open job file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("job file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_job(doc);
}

std::vector<double> random_values(const HexLattice& lattice, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(static_cast<std::size_t>(lattice.node_count()));
  // Explicit mapping from raw bits keeps the values identical across standard libraries.
  for (auto& x : v) x = std::ldexp(static_cast<double>(rng() >> 11), -53) * 2.0 - 1.0;
  return v;
}

std::vector<double> sample_source(const FieldSource& source, const HexLattice& lattice) {
  if (const auto* n = std::get_if<NodalSource>(&source)) {
    if (static_cast<Index>(n->values.size()) != lattice.node_count()) throw ValidationError("nodal array size mismatch");
    return n->values;
  }
  if (const auto* s = std::get_if<PrimitiveScene>(&source)) {
    const LevelSetField f = sample_scene(*s, lattice);
    return {f.values().begin(), f.values().end()};
  }
  const auto& p = std::get<PresetSource>(source);
  if (p.name == "random") return random_values(lattice, p.seed);
  std::vector<double> v(static_cast<std::size_t>(lattice.node_count()));
  for (Index n = 0; n < lattice.node_count(); ++n) {
    const Vec3i ijk = lattice.node_coords(n);
    const Vec3 x = lattice.node_position(n);
    double phi = 0.0;
    if (p.name == "checker") {
      phi = ((ijk[0] + ijk[1] + ijk[2]) % 2 == 0 ? 1.0 : -1.0) * p.amplitude;
    } else if (p.name == "gyroid") {
      const Vec3 q = x * (2.0 * M_PI / p.period);
      phi = std::sin(q[0]) * std::cos(q[1]) + std::sin(q[1]) * std::cos(q[2]) + std::sin(q[2]) * std::cos(q[0]) - p.offset;
    } else {
      phi = p.normal.dot(x - p.point);
    }
    v[static_cast<std::size_t>(n)] = phi;
  }
  return v;
}

LevelSetField make_field(const FieldSource& source, const HexLattice& lattice, const std::optional<FilterSpec>& filter) {
  const std::vector<double> raw = sample_source(source, lattice);
  if (filter) return apply_filter(raw, lattice, *filter);
  return LevelSetField(lattice, raw);
}

std::vector<LevelSetField> make_fields(const JobSpec& job) {
  std::vector<LevelSetField> fields;
  for (const auto& s : job.fields) fields.push_back(make_field(s, job.lattice, job.filter));
  return fields;
}

}  // namespace cutcell
