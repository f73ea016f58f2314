#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cutcell/tetrahedralize.hpp"

namespace cutcell {

enum class Ambiguity : std::uint8_t { unambiguous = 0, iat = 1, bat = 2 };

const char* to_string(Ambiguity a);

/// Direct re-evaluation of the ambiguity definition for one tet.
Ambiguity classify_ambiguity(const Tet& tet);

/// What lies across one tet face.
struct FaceLink {
  enum class Kind : std::uint8_t { tet, uniform_cell, boundary };
  Kind kind = Kind::boundary;
  Index id = -1;     // tet id or cell id
  std::int8_t k = -1;  // face index on the neighbouring tet
};

enum class CellKind : std::uint8_t { uniform_void = 0, uniform_solid = 1, intersected = 2 };

/// Tets of all intersected cells, with ambiguity tags, face adjacency and the
/// phase of every tet and uniform cell.
///
/// Tets are stored by ascending owner cell and, inside a cell, in the
/// canonical order produced by `tetrahedralize`, so tet ids do not depend on
/// how the mesh was built.
class CutCellMesh {
 public:
  const HexLattice& lattice() const { return lattice_; }

  Index tet_count() const { return static_cast<Index>(tets_.size()); }
  const Tet& tet(Index t) const { return tets_[static_cast<std::size_t>(t)]; }
  const std::vector<Tet>& tets() const { return tets_; }
  Ambiguity ambiguity(Index t) const { return tags_[static_cast<std::size_t>(t)]; }
  bool is_ambiguous(Index t) const { return ambiguity(t) != Ambiguity::unambiguous; }
  const FaceLink& link(Index t, int k) const { return links_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)]; }
  /// Global lattice face carrying face `bat_local_face(t)` of a BAT; -1 otherwise.
  Index bat_lattice_face(Index t) const { return bat_face_[static_cast<std::size_t>(t)]; }
  int bat_local_face(Index t) const { return bat_k_[static_cast<std::size_t>(t)]; }

  std::optional<Phase> phase(Index t) const;
  void set_phase(Index t, Phase p);
  void clear_phase(Index t);

  CellKind cell_kind(Index cell) const { return cell_kind_[static_cast<std::size_t>(cell)]; }
  SignPattern cell_pattern(Index cell) const { return patterns_[static_cast<std::size_t>(cell)]; }
  /// Tet ids [first, last) owned by a cell; empty for uniform cells.
  std::pair<Index, Index> cell_tets(Index cell) const {
    return {cell_begin_[static_cast<std::size_t>(cell)], cell_begin_[static_cast<std::size_t>(cell) + 1]};
  }

  /// Crossing offset along an edge in fixed-point units, 0 when the edge is not cut.
  std::int64_t crossing_offset(Index edge) const { return crossing_[static_cast<std::size_t>(edge)]; }

  /// Global fixed-point coordinates (lattice index scaled by 2^kFixedBits).
  FixedPoint vertex_fixed(const VertexRef& v) const;
  Vec3 vertex_position(const VertexRef& v) const;

  /// Six times the tet volume in fixed-point units, exact.
  Int128 tet_volume6(Index t) const;
  double tet_volume(Index t) const;
  double face_area(Index t, int k) const;
  Vec3 tet_centroid(Index t) const;

  Index count(Ambiguity a) const;

 private:
  friend CutCellMesh build_cut_mesh(const LevelSetField& field, int workers);

  explicit CutCellMesh(HexLattice lattice) : lattice_(std::move(lattice)) {}

  HexLattice lattice_;
  std::vector<Tet> tets_;
  std::vector<Ambiguity> tags_;
  std::vector<std::array<FaceLink, 4>> links_;
  std::vector<Index> bat_face_;
  std::vector<std::int8_t> bat_k_;
  std::vector<std::int8_t> phases_;  // -1 unset, else Phase
  std::vector<CellKind> cell_kind_;
  std::vector<SignPattern> patterns_;
  std::vector<Index> cell_begin_;
  std::vector<std::int64_t> crossing_;
};

/// Decomposes every intersected cell, tags ambiguity and links faces.
/// Unambiguous tets receive the phase of their corners; ATs stay unset.
/// Output is identical for every worker count.
CutCellMesh build_cut_mesh(const LevelSetField& field, int workers = 1);

/// Ambiguity tags for a list of tets (the tag pass on its own).
std::vector<Ambiguity> tag_ambiguity(const std::vector<Tet>& tets);

}  // namespace cutcell
