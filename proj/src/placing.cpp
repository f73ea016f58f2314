#include "cutcell/placing.hpp"

#include <algorithm>
#include <map>
#include <variant>

namespace cutcell {

namespace {

class Placer {
 public:
  explicit Placer(std::span<const FixedPoint> points) : pts_(points) {}

  std::optional<PlacingFailure> insert(int p) {
    switch (complex_.dimension) {
      case -1:
        complex_.dimension = 0;
        complex_.simplices.push_back({p, -1, -1, -1});
        return std::nullopt;
      case 0:
        return insert_into_point(p);
      case 1:
        return insert_into_line(p);
      case 2:
        return insert_into_plane(p);
      default:
        return insert_into_space(p);
    }
  }

  PlacingComplex take() { return std::move(complex_); }

 private:
  const FixedPoint& at(int i) const { return pts_[static_cast<std::size_t>(i)]; }

  void lift_dimension(int p) {
    const int d = ++complex_.dimension;
    for (auto& s : complex_.simplices) s[static_cast<std::size_t>(d)] = p;
  }

  std::optional<PlacingFailure> insert_into_point(int p) {
    if (at(p) == at(complex_.simplices[0][0])) return PlacingFailure{p, "duplicate point"};
    lift_dimension(p);
    return std::nullopt;
  }

  std::optional<PlacingFailure> insert_into_line(int p) {
    const auto& s0 = complex_.simplices[0];
    if (!cross_exact(at(s0[0]), at(s0[1]), at(p)).is_zero()) {
      lift_dimension(p);
      normal_ = cross_exact(at(s0[0]), at(s0[1]), at(p));
      return std::nullopt;
    }
    std::map<int, std::pair<int, int>> incidence;  // vertex -> (count, other end)
    for (const auto& s : complex_.simplices) {
      auto& a = incidence[s[0]];
      ++a.first;
      a.second = s[1];
      auto& b = incidence[s[1]];
      ++b.first;
      b.second = s[0];
    }
    std::vector<std::array<int, 4>> added;
    for (const auto& [v, info] : incidence) {
      if (info.first != 1) continue;
      const FixedPoint out = at(v) - at(info.second);
      const FixedPoint to_p = at(p) - at(v);
      const Int128 dot = Int128(out.x()) * to_p.x() + Int128(out.y()) * to_p.y() + Int128(out.z()) * to_p.z();
      if (dot > 0) added.push_back({v, p, -1, -1});
    }
    return commit(p, added);
  }

  int side_in_plane(int u, int v, int x) const {
    const Cross128 c = cross_exact(at(u), at(v), at(x));
    return sign_of(c.x * normal_.x + c.y * normal_.y + c.z * normal_.z);
  }

  std::optional<PlacingFailure> insert_into_plane(int p) {
    const auto& s0 = complex_.simplices[0];
    if (orient3d(at(s0[0]), at(s0[1]), at(s0[2]), at(p)) != 0) {
      lift_dimension(p);
      return std::nullopt;
    }
    std::map<std::array<int, 2>, std::pair<int, int>> edges;  // edge -> (count, opposite)
    for (const auto& s : complex_.simplices) {
      for (int k = 0; k < 3; ++k) {
        std::array<int, 2> e{s[(k + 1) % 3], s[(k + 2) % 3]};
        std::sort(e.begin(), e.end());
        auto& info = edges[e];
        ++info.first;
        info.second = s[k];
      }
    }
    std::vector<std::array<int, 4>> added;
    for (const auto& [e, info] : edges) {
      if (info.first != 1) continue;
      const int sp = side_in_plane(e[0], e[1], p);
      const int so = side_in_plane(e[0], e[1], info.second);
      if (sp != 0 && sp == -so) added.push_back({e[0], e[1], p, -1});
    }
    return commit(p, added);
  }

  std::optional<PlacingFailure> insert_into_space(int p) {
    std::map<std::array<int, 3>, std::pair<int, int>> faces;
    for (const auto& s : complex_.simplices) {
      for (int k = 0; k < 4; ++k) {
        std::array<int, 3> f{};
        int n = 0;
        for (int j = 0; j < 4; ++j)
          if (j != k) f[static_cast<std::size_t>(n++)] = s[static_cast<std::size_t>(j)];
        std::sort(f.begin(), f.end());
        auto& info = faces[f];
        ++info.first;
        info.second = s[static_cast<std::size_t>(k)];
      }
    }
    std::vector<std::array<int, 4>> added;
    for (const auto& [f, info] : faces) {
      if (info.first != 1) continue;
      const int sp = sign_of(orient3d(at(f[0]), at(f[1]), at(f[2]), at(p)));
      const int so = sign_of(orient3d(at(f[0]), at(f[1]), at(f[2]), at(info.second)));
      if (sp != 0 && sp == -so) added.push_back({f[0], f[1], f[2], p});
    }
    return commit(p, added);
  }

  std::optional<PlacingFailure> commit(int p, const std::vector<std::array<int, 4>>& added) {
    if (added.empty()) return PlacingFailure{p, "point is not outside the current hull"};
    complex_.simplices.insert(complex_.simplices.end(), added.begin(), added.end());
    return std::nullopt;
  }

  std::span<const FixedPoint> pts_;
  PlacingComplex complex_;
  Cross128 normal_{0, 0, 0};
};

}  // namespace

std::variant<PlacingComplex, PlacingFailure> placing_triangulation(std::span<const FixedPoint> points) {
  Placer placer(points);
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (auto failure = placer.insert(i)) return *failure;
  }
  return placer.take();
}

}  // namespace cutcell
