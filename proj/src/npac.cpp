#include "cutcell/npac.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cutcell/error.hpp"

namespace cutcell {

SignPattern SignPattern::from_values(const CornerValues<double>& values) {
  SignPattern p;
  for (int c = 0; c < hex::corner_count; ++c) {
    if (values[c] > 0.0) p.code = static_cast<std::uint8_t>(p.code | (1u << c));
  }
  return p;
}

int SignPattern::crossing_count() const {
  int n = 0;
  for (const auto& e : hex::edge_corners) n += solid(e[0]) != solid(e[1]);
  return n;
}

namespace {

std::vector<CubeSymmetry> build_symmetries() {
  std::vector<CubeSymmetry> proper;
  std::vector<CubeSymmetry> improper;
  std::array<int, 3> perm{0, 1, 2};
  do {
    // parity of the axis permutation
    int inversions = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) inversions += perm[a] > perm[b];
    for (int flips = 0; flips < 8; ++flips) {
      CubeSymmetry s{};
      for (int c = 0; c < hex::corner_count; ++c) {
        const auto o = hex::corner_offset(c);
        int image = 0;
        for (int a = 0; a < 3; ++a) {
          const int bit = o[perm[a]] ^ ((flips >> a) & 1);
          image |= bit << a;
        }
        s.corner_map[c] = image;
      }
      const int parity = (inversions + __builtin_popcount(static_cast<unsigned>(flips))) % 2;
      s.proper = parity == 0;
      (s.proper ? proper : improper).push_back(s);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  proper.insert(proper.end(), improper.begin(), improper.end());
  return proper;
}

}  // namespace

const std::vector<CubeSymmetry>& cube_symmetries() {
  static const std::vector<CubeSymmetry> table = build_symmetries();
  return table;
}

std::uint8_t apply_symmetry(const CubeSymmetry& s, std::uint8_t code) {
  unsigned out = 0;
  for (int c = 0; c < hex::corner_count; ++c) {
    if ((code >> c) & 1u) out |= 1u << s.corner_map[c];
  }
  return static_cast<std::uint8_t>(out);
}

std::string_view to_string(SymmetryGroup g) {
  switch (g) {
    case SymmetryGroup::rot24: return "rot24";
    case SymmetryGroup::rot_refl48: return "rot_refl48";
    case SymmetryGroup::rot24_complement: return "rot24xcomplement";
    case SymmetryGroup::rot_refl48_complement: return "rot_refl48xcomplement";
  }
  return "?";
}

SymmetryGroup symmetry_group_from_string(std::string_view name) {
  for (auto g : kAllSymmetryGroups) {
    if (to_string(g) == name) return g;
  }
  throw ValidationError("unknown symmetry group: " + std::string(name));
}

std::uint8_t PatternTransform::apply(std::uint8_t code) const {
  const std::uint8_t moved = apply_symmetry(cube_symmetries()[static_cast<std::size_t>(symmetry)], code);
  return complement ? static_cast<std::uint8_t>(~moved) : moved;
}

std::vector<PatternTransform> group_elements(SymmetryGroup g) {
  const bool reflections = g == SymmetryGroup::rot_refl48 || g == SymmetryGroup::rot_refl48_complement;
  const bool complement = g == SymmetryGroup::rot24_complement || g == SymmetryGroup::rot_refl48_complement;
  const int count = reflections ? 48 : 24;
  std::vector<PatternTransform> out;
  for (int s = 0; s < count; ++s) {
    out.push_back({s, false});
    if (complement) out.push_back({s, true});
  }
  return out;
}

NpacTable::NpacTable(SymmetryGroup group) : group_(group), elements_(group_elements(group)) {
  std::map<std::uint8_t, int> orbit_size_by_rep;
  std::array<std::uint8_t, 256> rep_of{};
  for (int code = 1; code < 255; ++code) {
    std::uint8_t rep = static_cast<std::uint8_t>(code);
    for (const auto& e : elements_) rep = std::min(rep, e.apply(static_cast<std::uint8_t>(code)));
    rep_of[static_cast<std::size_t>(code)] = rep;
    ++orbit_size_by_rep[rep];
  }
  for (const auto& [rep, size] : orbit_size_by_rep) {
    representatives_.push_back(rep);
    orbit_sizes_.push_back(size);
  }
  for (int code = 1; code < 255; ++code) {
    const auto it = std::lower_bound(representatives_.begin(), representatives_.end(),
                                     rep_of[static_cast<std::size_t>(code)]);
    class_of_[static_cast<std::size_t>(code)] = static_cast<int>(it - representatives_.begin()) + 1;
  }
}

NpacClass NpacTable::classify(SignPattern pattern) const {
  if (pattern.is_constant()) throw ValidationError("constant sign pattern has no NPAC class");
  const int id = class_of_[pattern.code];
  const std::uint8_t rep = representatives_[static_cast<std::size_t>(id - 1)];
  for (const auto& e : elements_) {
    if (e.apply(pattern.code) == rep) return {id, rep, e};
  }
  throw std::logic_error("orbit representative unreachable");
}

NpacClass canonicalize_npac(SignPattern pattern, SymmetryGroup group) {
  static const std::array<NpacTable, 4> tables{NpacTable(kAllSymmetryGroups[0]), NpacTable(kAllSymmetryGroups[1]),
                                               NpacTable(kAllSymmetryGroups[2]), NpacTable(kAllSymmetryGroups[3])};
  return tables[static_cast<std::size_t>(group)].classify(pattern);
}

SymmetryGroup group_with_class_count(int target) {
  for (auto g : kAllSymmetryGroups) {
    if (NpacTable(g).class_count() == target) return g;
  }
  throw ValidationError("no symmetry group yields " + std::to_string(target) + " classes");
}

}  // namespace cutcell
