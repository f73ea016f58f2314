// cutcell: level-set cut-cell tetrahedralization with ambiguity resolution.
//
// Exit codes: 0 success, 2 invalid input, 3 numeric or degenerate geometry,
// 4 I/O failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cutcell/diagnostics.hpp"
#include "cutcell/error.hpp"
#include "cutcell/io.hpp"
#include "cutcell/job.hpp"

using namespace cutcell;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int default_workers() {
  if (const char* env = std::getenv("CUTCELL_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string join_lines(const std::string& header, const std::vector<std::string>& rows) {
  std::string s = header + "\n";
  for (const auto& r : rows) s += r + "\n";
  return s;
}

struct CommonOptions {
  std::string rule;
  std::string decider = "classical";
  int workers = default_workers();
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_rule, const std::string& default_format,
                const std::vector<std::string>& formats) {
  if (with_rule) cmd->add_option("--rule", o.rule, "Ambiguity rule: L1_solid L1_void L2 L3 L4_max L4_min G1_solid G1_void G2_max G2_min");
  cmd->add_option("--decider", o.decider, "Asymptotic decider variant")->check(CLI::IsMember({"classical", "paper"}));
  cmd->add_option("--workers", o.workers, "Worker threads (default $CUTCELL_WORKERS or 1)")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output path ('-' for stdout)");
  o.format = default_format;
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
}

RuleConfig rule_config(const CommonOptions& o, const std::optional<Rule>& job_rule,
                       const std::optional<DeciderVariant>& job_decider, bool decider_given) {
  RuleConfig cfg;
  cfg.rule = !o.rule.empty() ? rule_from_string(o.rule) : job_rule.value_or(Rule::L1_solid);
  cfg.decider = decider_given ? decider_from_string(o.decider)
                              : job_decider.value_or(decider_from_string(o.decider));
  return cfg;
}

int run_cut(const std::string& job_path, const CommonOptions& o, const std::string& report_path, bool decider_given) {
  const JobSpec job = load_job(job_path);
  const RuleConfig cfg = rule_config(o, job.rule, job.decider, decider_given);
  const auto fields = make_fields(job);

  IterationState state;
  json iterations = json::array();
  std::optional<CutCellMesh> mesh;
  GeometryReport geometry;
  for (const auto& field : fields) {
    mesh.emplace(build_cut_mesh(field, o.workers));
    const ResolutionReport res = resolve(*mesh, field, cfg, &state);
    geometry = measure(*mesh);
    iterations.push_back({{"resolution", to_json(res)}, {"geometry", to_json(geometry)}});
  }
  json report = {{"rule", std::string(to_string(cfg.rule))},
                 {"decider", std::string(to_string(cfg.decider))},
                 {"iterations", iterations}};

  if (o.format == "mesh") {
    emit(vtk_string(*mesh), o.out);
    std::string rp = report_path;
    if (rp.empty() && !o.out.empty() && o.out != "-") rp = o.out + ".report.json";
    if (!rp.empty()) emit(report.dump(2) + "\n", rp);
  } else if (o.format == "json") {
    emit(report.dump(2) + "\n", o.out);
  } else {
    emit(join_lines(geometry_csv_header(), {geometry_csv_row(geometry)}), o.out);
  }
  return 0;
}

int run_npac(const std::vector<std::string>& groups, const std::string& atlas_group, const CommonOptions& o) {
  std::vector<SymmetryGroup> gs;
  if (groups.empty()) gs.assign(kAllSymmetryGroups.begin(), kAllSymmetryGroups.end());
  for (const auto& g : groups) gs.push_back(symmetry_group_from_string(g));
  const SymmetryGroup atlas =
      atlas_group.empty() ? group_with_class_count(14) : symmetry_group_from_string(atlas_group);
  const auto rows = npac_atlas(atlas);

  if (o.format == "json") {
    json counts = json::object();
    for (auto g : gs) counts[std::string(to_string(g))] = NpacTable(g).class_count();
    json classes = json::array();
    for (const auto& r : rows)
      classes.push_back({{"class_id", r.class_id},
                         {"representative", r.representative},
                         {"orbit_size", r.orbit_size},
                         {"crossings", r.crossings},
                         {"tets", r.tets},
                         {"AT", r.iats + r.bats},
                         {"IAT", r.iats},
                         {"BAT", r.bats}});
    json doc = {{"intersected_patterns", 254},
                {"class_counts", counts},
                {"atlas_group", std::string(to_string(atlas))},
                {"classes", classes}};
    emit(doc.dump(2) + "\n", o.out);
    return 0;
  }
  std::ostringstream os;
  os << "# intersected patterns: 254\n";
  for (auto g : gs) os << "# group " << to_string(g) << ": " << NpacTable(g).class_count() << " classes\n";
  os << "# atlas group: " << to_string(atlas) << "\n";
  os << "class_id,representative,orbit_size,crossings,tets,AT,IAT,BAT\n";
  for (const auto& r : rows)
    os << r.class_id << ',' << int(r.representative) << ',' << r.orbit_size << ',' << r.crossings << ',' << r.tets
       << ',' << r.iats + r.bats << ',' << r.iats << ',' << r.bats << '\n';
  emit(os.str(), o.out);
  return 0;
}

int run_shell(double inner, const std::vector<double>& outers, const std::string& preset, const CommonOptions& o) {
  const RuleConfig cfg{o.rule.empty() ? Rule::G1_void : rule_from_string(o.rule), decider_from_string(o.decider)};
  const auto rows = shell_study(inner, outers, shell_preset_from_string(preset), cfg, o.workers);
  if (o.format == "json") {
    json doc = json::array();
    for (const auto& r : rows) {
      json row = to_json(r.report);
      row["inner_radius"] = r.inner_radius;
      row["outer_radius"] = r.outer_radius;
      row["thickness"] = r.thickness;
      row["thickness_over_h"] = r.thickness_over_h;
      row["rule"] = std::string(to_string(r.rule));
      doc.push_back(row);
    }
    emit(doc.dump(2) + "\n", o.out);
    return 0;
  }
  std::vector<std::string> lines;
  for (const auto& r : rows) lines.push_back(shell_csv_row(r));
  emit(join_lines(shell_csv_header(), lines), o.out);
  return 0;
}

int run_compare(const std::string& job_path, const std::vector<std::string>& rule_names, const CommonOptions& o,
                bool decider_given) {
  const JobSpec job = load_job(job_path);
  if (job.fields.size() != 1) throw ValidationError("compare needs a job with a single field");
  std::vector<Rule> rules;
  if (rule_names.empty()) rules.assign(kAllRules.begin(), kAllRules.end());
  for (const auto& n : rule_names) rules.push_back(rule_from_string(n));
  if (rules.size() < 2) throw ValidationError("compare needs at least two rules");
  const DeciderVariant decider =
      decider_given ? decider_from_string(o.decider) : job.decider.value_or(DeciderVariant::classical_saddle);
  const LevelSetField field = make_field(job.fields.front(), job.lattice, job.filter);
  const RuleComparison cmp = compare_rules(field, rules, decider, o.workers);

  json per_rule = json::object();
  for (std::size_t i = 0; i < rules.size(); ++i)
    per_rule[std::string(to_string(rules[i]))] = {{"geometry", to_json(cmp.reports[i])},
                                                  {"resolution", to_json(cmp.resolutions[i])}};
  json diffs = json::array();
  for (std::size_t i = 0; i < rules.size(); ++i)
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      const auto& a = cmp.reports[i];
      const auto& b = cmp.reports[j];
      diffs.push_back({{"a", std::string(to_string(rules[i]))},
                       {"b", std::string(to_string(rules[j]))},
                       {"d_V_solid", a.V_solid - b.V_solid},
                       {"d_interface_area", a.interface_area - b.interface_area},
                       {"d_solid_components", a.solid_components - b.solid_components},
                       {"d_void_components", a.void_components - b.void_components}});
    }
  json doc = {{"decider", std::string(to_string(decider))}, {"rules", per_rule}, {"diffs", diffs}};
  emit(doc.dump(2) + "\n", o.out);
  return 0;
}

int run_measure(const std::string& path, const CommonOptions& o) {
  const FileVolumes v = measure_vtk(read_vtk_file(path));
  emit(to_json(v).dump(2) + "\n", o.out);
  return 0;
}

// Randomized self-validation: every rule on random fields must give a
// watertight mesh whose volumes partition the lattice.
int run_selfcheck(std::uint64_t seed, int count, int n, const CommonOptions& o) {
  const HexLattice lattice({n, n, n}, Vec3::Zero(), 1.0 / n);
  Index failures = 0;
  json cases = json::array();
  for (int i = 0; i < count; ++i) {
    const LevelSetField field(lattice, random_values(lattice, seed + static_cast<std::uint64_t>(i)));
    CutCellMesh mesh = build_cut_mesh(field, o.workers);
    for (Rule rule : kAllRules) {
      IterationState state;
      resolve(mesh, field, {rule, decider_from_string(o.decider)}, &state);
      const GeometryReport r = measure(mesh);
      const bool ok = r.watertight && std::abs(r.V_solid + r.V_void - lattice.total_volume()) <= 1e-9 * lattice.total_volume() &&
                      r.V_AT_solid <= r.V_AT;
      if (!ok) {
        ++failures;
        cases.push_back({{"seed", seed + static_cast<std::uint64_t>(i)}, {"rule", std::string(to_string(rule))}});
      }
    }
  }
  json doc = {{"fields", count}, {"rules", kAllRules.size()}, {"failures", failures}, {"failed_cases", cases}};
  emit(doc.dump(2) + "\n", o.out);
  return failures == 0 ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-set cut-cell tetrahedralization with ambiguous-tetrahedron resolution"};
  app.require_subcommand(1);

  CommonOptions cut_o, npac_o, shell_o, cmp_o, meas_o, self_o;
  std::string job_path, report_path, atlas_group, preset = std::string(to_string(kDefaultShellPreset));
  std::vector<std::string> groups, rules;
  double inner = kDefaultShellInner;
  std::vector<double> outers = kDefaultShellOuters;
  std::string mesh_path;
  std::uint64_t seed = 1;
  int count = 10, dims = 8;

  auto* cut = app.add_subcommand("cut", "Decompose, resolve and export one job");
  cut->add_option("job", job_path, "Job JSON file")->required();
  add_common(cut, cut_o, true, "mesh", {"mesh", "json", "csv"});
  cut->add_option("--report", report_path, "Where to write the JSON report (default <out>.report.json)");

  auto* npac = app.add_subcommand("npac", "Sign-pattern class counts and atlas");
  npac->add_option("--group", groups, "Symmetry groups to count (default: all four)");
  npac->add_option("--atlas-group", atlas_group, "Group for the class atlas (default: the 14-class group)");
  add_common(npac, npac_o, false, "csv", {"csv", "json"});

  auto* shell = app.add_subcommand("shell", "Spherical shell thickness sweep");
  shell->add_option("--inner", inner, "Inner radius");
  shell->add_option("--outer", outers, "Outer radii");
  shell->add_option("--preset", preset, "Lattice preset")->check(CLI::IsMember({"full", "octant"}));
  add_common(shell, shell_o, true, "csv", {"csv", "json"});

  auto* compare = app.add_subcommand("compare", "Resolve one field under several rules and diff the reports");
  compare->add_option("job", job_path, "Job JSON file")->required();
  compare->add_option("--rules", rules, "Rules to compare (default: all ten)");
  add_common(compare, cmp_o, false, "json", {"json"});

  auto* meas = app.add_subcommand("measure", "Recompute volumes from an exported mesh");
  meas->add_option("mesh", mesh_path, "Mesh file")->required();
  add_common(meas, meas_o, false, "json", {"json"});

  auto* self = app.add_subcommand("selfcheck", "Randomized watertightness and volume checks over all rules");
  self->add_option("--seed", seed, "First random seed");
  self->add_option("--count", count, "Number of random fields")->check(CLI::PositiveNumber);
  self->add_option("--dims", dims, "Cells per axis")->check(CLI::PositiveNumber);
  add_common(self, self_o, false, "json", {"json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*cut) return run_cut(job_path, cut_o, report_path, cut->count("--decider") > 0);
    if (*npac) return run_npac(groups, atlas_group, npac_o);
    if (*shell) return run_shell(inner, outers, preset, shell_o);
    if (*compare) return run_compare(job_path, rules, cmp_o, compare->count("--decider") > 0);
    if (*meas) return run_measure(mesh_path, meas_o);
    if (*self) return run_selfcheck(seed, count, dims, self_o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DegenerateGeometryError& e) {
    std::cerr << "degenerate geometry: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
