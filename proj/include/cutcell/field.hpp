#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cutcell/geometry.hpp"
#include "cutcell/mesh.hpp"

namespace cutcell {

enum class Phase : std::uint8_t { void_phase = 0, solid = 1 };

inline Phase phase_of(double phi) { return phi > 0.0 ? Phase::solid : Phase::void_phase; }
inline const char* to_string(Phase p) { return p == Phase::solid ? "solid" : "void"; }

/// Relative threshold below which nodal values are snapped to +snap (ties go
/// to solid). Scaled by the lattice spacing.
inline constexpr double kDefaultSnapFactor = 1e-12;

/// Nodal level set values on a lattice. Sign carries phase: positive is solid,
/// negative is void. Values are finite and never exactly zero.
class LevelSetField {
 public:
  LevelSetField(HexLattice lattice, std::vector<double> values, double snap_factor = kDefaultSnapFactor);

  const HexLattice& lattice() const { return lattice_; }
  std::span<const double> values() const { return values_; }
  double value(Index node) const { return values_.at(static_cast<std::size_t>(node)); }
  Phase node_phase(Index node) const { return phase_of(value(node)); }
  double snap_epsilon() const { return snap_epsilon_; }
  /// Number of values that were moved by zero-snap during construction.
  Index snapped_count() const { return snapped_; }

  CornerValues<double> cell_values(Index cell) const;

  /// Same lattice, every value multiplied by `factor` (> 0).
  LevelSetField scaled(double factor) const;

 private:
  HexLattice lattice_;
  std::vector<double> values_;
  double snap_epsilon_;
  Index snapped_ = 0;
};

// --- analytic primitives ----------------------------------------------------

struct Sphere {
  Vec3 center;
  double radius;
};

struct Cuboid {
  Vec3 min_corner;
  Vec3 max_corner;
};

struct Primitive {
  std::variant<Sphere, Cuboid> shape;
  Phase sense = Phase::solid;
};

/// Ordered list of primitives composed left to right over a background phase.
/// A solid primitive merges with max(phi, local), a void primitive with
/// min(phi, -local), where `local` is positive inside the primitive.
struct PrimitiveScene {
  Phase background = Phase::void_phase;
  std::vector<Primitive> primitives;
};

void validate(const PrimitiveScene& scene);

/// Signed inside-distance of one primitive (positive inside).
double local_field(const Primitive& primitive, const Vec3& x);

/// Composed scene value at `x`. `background_magnitude` is the finite value the
/// background contributes before any primitive is applied.
double evaluate_scene(const PrimitiveScene& scene, const Vec3& x, double background_magnitude);

LevelSetField sample_scene(const PrimitiveScene& scene, const HexLattice& lattice);

/// Tri-linear interpolation inside a cell; `local` must lie in [0,1]^3.
double interpolate_trilinear(const LevelSetField& field, Index cell, const Vec3& local);

// --- linear distance filter -------------------------------------------------

struct FilterSpec {
  double radius;
  std::optional<double> lower;
  std::optional<double> upper;
};

/// phi_i = sum_j w_ij s_j / sum_j w_ij with w_ij = max(0, r - |X_i - X_j|),
/// then optional clamping, then zero-snap.
LevelSetField apply_filter(std::span<const double> raw, const HexLattice& lattice, const FilterSpec& spec);

/// Filter without clamping or snapping; exposed for tests.
std::vector<double> filter_values(std::span<const double> raw, const HexLattice& lattice, double radius);

// --- edge crossings ---------------------------------------------------------

struct EdgeCrossing {
  /// Crossing parameter measured from the lower-id endpoint, snapped to the
  /// fixed-point grid and kept strictly inside (0, 1).
  double t;
  /// Same parameter in fixed-point units (1 .. kFixedOne - 1).
  std::int64_t fixed_offset;
  Vec3 position;
};

/// Unsnapped root of the linear interpolant along the edge, phi0 / (phi0 - phi1).
double crossing_parameter(double phi0, double phi1);
std::int64_t quantize_crossing(double t);

std::optional<EdgeCrossing> edge_crossing(const LevelSetField& field, Index edge);

}  // namespace cutcell
