#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cutcell/geometry.hpp"

namespace cutcell {

/// Eight corner phases of a cell; bit c of `code` is set when corner c is solid.
struct SignPattern {
  std::uint8_t code = 0;

  static SignPattern from_values(const CornerValues<double>& values);

  bool solid(int corner) const { return (code >> corner) & 1u; }
  bool is_constant() const { return code == 0 || code == 0xFF; }
  /// Number of cell edges whose endpoints differ in sign.
  int crossing_count() const;

  friend bool operator==(SignPattern, SignPattern) = default;
};

/// A corner permutation induced by one of the 48 symmetries of the cube.
struct CubeSymmetry {
  std::array<int, 8> corner_map;  // corner c moves to corner_map[c]
  bool proper;                    // rotation (det +1) vs. improper
};

/// All 48 symmetries; the identity is element 0 and the 24 rotations come first.
const std::vector<CubeSymmetry>& cube_symmetries();

std::uint8_t apply_symmetry(const CubeSymmetry& s, std::uint8_t code);

enum class SymmetryGroup : std::uint8_t { rot24, rot_refl48, rot24_complement, rot_refl48_complement };

inline constexpr std::array<SymmetryGroup, 4> kAllSymmetryGroups{
    SymmetryGroup::rot24, SymmetryGroup::rot_refl48, SymmetryGroup::rot24_complement,
    SymmetryGroup::rot_refl48_complement};

std::string_view to_string(SymmetryGroup g);
SymmetryGroup symmetry_group_from_string(std::string_view name);

/// One element of a symmetry group acting on sign patterns.
struct PatternTransform {
  int symmetry = 0;  // index into cube_symmetries()
  bool complement = false;

  std::uint8_t apply(std::uint8_t code) const;
};

std::vector<PatternTransform> group_elements(SymmetryGroup g);

struct NpacClass {
  int class_id = 0;  // 1-based, ordered by representative code
  std::uint8_t representative = 0;  // smallest code in the orbit
  PatternTransform transform;       // maps the input pattern onto the representative
};

/// Exhaustive orbit partition of the 254 intersected patterns under one group.
class NpacTable {
 public:
  explicit NpacTable(SymmetryGroup group);

  SymmetryGroup group() const { return group_; }
  int class_count() const { return static_cast<int>(representatives_.size()); }
  const std::vector<std::uint8_t>& representatives() const { return representatives_; }
  /// Orbit size of class `class_id` (1-based).
  int orbit_size(int class_id) const { return orbit_sizes_.at(static_cast<std::size_t>(class_id - 1)); }

  NpacClass classify(SignPattern pattern) const;

 private:
  SymmetryGroup group_;
  std::vector<PatternTransform> elements_;
  std::vector<std::uint8_t> representatives_;
  std::vector<int> orbit_sizes_;
  std::array<int, 256> class_of_{};  // 0 for constant patterns
};

NpacClass canonicalize_npac(SignPattern pattern, SymmetryGroup group);

/// The smallest group whose orbit count equals `target` (14 for the usual
/// table of intersected configurations); throws if none does.
SymmetryGroup group_with_class_count(int target);

}  // namespace cutcell
