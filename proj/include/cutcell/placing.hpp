#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cutcell/geometry.hpp"

namespace cutcell {

/// Simplicial complex produced by inserting points one at a time; each new
/// point is coned to the boundary facets of the current hull it strictly sees,
/// or to the whole complex when it leaves the current affine hull.
///
/// The result is the regular triangulation for heights growing without bound
/// in insertion order, so its restriction to any face of the hull is the same
/// construction applied to the points on that face in the induced order.
struct PlacingComplex {
  int dimension = -1;
  /// Point indices of each maximal simplex; entries past `dimension` are -1.
  std::vector<std::array<int, 4>> simplices;
};

struct PlacingFailure {
  int point;  // index of the point that could not be placed
  std::string reason;
};

/// Points must be inserted in the given order; every point has to lie outside
/// the convex hull of the ones before it. Exact while coordinate differences stay below 2^30.
std::variant<PlacingComplex, PlacingFailure> placing_triangulation(std::span<const FixedPoint> points);

}  // namespace cutcell
