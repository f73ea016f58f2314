#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cutcell/cut_mesh.hpp"
#include "cutcell/job.hpp"

namespace cutcell::testkit {

inline LevelSetField random_field(Index n, std::uint64_t seed, double spacing = 1.0) {
  const HexLattice lattice({n, n, n}, Vec3::Zero(), spacing);
  return LevelSetField(lattice, random_values(lattice, seed));
}

/// Single unit cell whose corner signs follow `code` with magnitudes drawn
/// from [lo, hi].
inline LevelSetField pattern_cell(int code, std::mt19937_64& rng, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::vector<double> v(8);
  for (int c = 0; c < 8; ++c) v[static_cast<std::size_t>(c)] = ((code >> c) & 1 ? 1.0 : -1.0) * mag(rng);
  return LevelSetField(HexLattice({1, 1, 1}, Vec3::Zero(), 1.0), v);
}

inline double tet_volume_double(const CutCellMesh& mesh, const Tet& t) {
  return tet_signed_volume(mesh.vertex_position(t.vertices[0]), mesh.vertex_position(t.vertices[1]),
                           mesh.vertex_position(t.vertices[2]), mesh.vertex_position(t.vertices[3]));
}

}  // namespace cutcell::testkit
