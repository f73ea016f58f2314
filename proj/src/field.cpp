#include "cutcell/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cutcell/error.hpp"

namespace cutcell {

LevelSetField::LevelSetField(HexLattice lattice, std::vector<double> values, double snap_factor)
    : lattice_(std::move(lattice)), values_(std::move(values)), snap_epsilon_(snap_factor * lattice_.spacing()) {
  if (static_cast<Index>(values_.size()) != lattice_.node_count()) {
    throw ValidationError("field has " + std::to_string(values_.size()) + " values, lattice has " +
                          std::to_string(lattice_.node_count()) + " nodes");
  }
  if (!(snap_epsilon_ > 0.0)) throw ValidationError("zero-snap epsilon must be positive");
  for (double& v : values_) {
    if (!std::isfinite(v)) throw ValidationError("field values must be finite");
    if (std::abs(v) < snap_epsilon_) {
      v = snap_epsilon_;
      ++snapped_;
    }
  }
}

CornerValues<double> LevelSetField::cell_values(Index cell) const {
  const auto nodes = lattice_.cell_nodes(cell);
  CornerValues<double> v;
  for (int c = 0; c < hex::corner_count; ++c) v[c] = values_[static_cast<std::size_t>(nodes[c])];
  return v;
}

LevelSetField LevelSetField::scaled(double factor) const {
  if (!(factor > 0.0)) throw ValidationError("scale factor must be positive");
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return LevelSetField(lattice_, std::move(v), snap_epsilon_ / lattice_.spacing());
}

void validate(const PrimitiveScene& scene) {
  if (scene.primitives.empty()) throw ValidationError("primitive scene is empty");
  for (const auto& p : scene.primitives) {
    if (const auto* s = std::get_if<Sphere>(&p.shape)) {
      if (!(s->radius > 0.0) || !s->center.allFinite()) throw ValidationError("sphere needs a finite center and radius > 0");
    } else {
      const auto& c = std::get<Cuboid>(p.shape);
      if (!(c.min_corner.array() < c.max_corner.array()).all()) {
        throw ValidationError("cuboid min corner must be below max corner on every axis");
      }
    }
  }
}

double local_field(const Primitive& primitive, const Vec3& x) {
  if (const auto* s = std::get_if<Sphere>(&primitive.shape)) return s->radius - (x - s->center).norm();
  const auto& c = std::get<Cuboid>(primitive.shape);
  const Vec3 below = c.min_corner - x;
  const Vec3 above = x - c.max_corner;
  const Vec3 outside = below.cwiseMax(above).cwiseMax(0.0);
  if ((outside.array() > 0.0).any()) return -outside.norm();
  return -below.cwiseMax(above).maxCoeff();
}

double evaluate_scene(const PrimitiveScene& scene, const Vec3& x, double background_magnitude) {
  double phi = scene.background == Phase::solid ? background_magnitude : -background_magnitude;
  for (const auto& p : scene.primitives) {
    const double local = local_field(p, x);
    phi = p.sense == Phase::solid ? std::max(phi, local) : std::min(phi, -local);
  }
  return phi;
}

LevelSetField sample_scene(const PrimitiveScene& scene, const HexLattice& lattice) {
  validate(scene);
  const Vec3 extent = lattice.spacing() * Vec3(static_cast<double>(lattice.dims()[0]),
                                               static_cast<double>(lattice.dims()[1]),
                                               static_cast<double>(lattice.dims()[2]));
  const double background = std::max(extent.norm(), lattice.spacing());
  std::vector<double> values(static_cast<std::size_t>(lattice.node_count()));
  for (Index n = 0; n < lattice.node_count(); ++n) {
    values[static_cast<std::size_t>(n)] = evaluate_scene(scene, lattice.node_position(n), background);
  }
  return LevelSetField(lattice, std::move(values));
}

double interpolate_trilinear(const LevelSetField& field, Index cell, const Vec3& local) {
  if (!((local.array() >= 0.0).all() && (local.array() <= 1.0).all())) {
    throw ValidationError("local coordinates must lie in the unit cube");
  }
  return trilinear(field.cell_values(cell), local);
}

std::vector<double> filter_values(std::span<const double> raw, const HexLattice& lattice, double radius) {
  if (!(radius > 0.0)) throw ValidationError("filter radius must be positive");
  if (static_cast<Index>(raw.size()) != lattice.node_count()) {
    throw ValidationError("filter input must hold one value per node");
  }
  const double h = lattice.spacing();
  const Index reach = static_cast<Index>(std::floor(radius / h));
  const auto& d = lattice.dims();

  // Weights depend only on the integer offset.
  struct Offset {
    Index di, dj, dk;
    double w;
  };
  std::vector<Offset> stencil;
  for (Index dk = -reach; dk <= reach; ++dk)
    for (Index dj = -reach; dj <= reach; ++dj)
      for (Index di = -reach; di <= reach; ++di) {
        const double dist = h * std::sqrt(static_cast<double>(di * di + dj * dj + dk * dk));
        const double w = std::max(0.0, radius - dist);
        if (w > 0.0) stencil.push_back({di, dj, dk, w});
      }

  std::vector<double> out(raw.size());
  for (Index k = 0; k <= d[2]; ++k)
    for (Index j = 0; j <= d[1]; ++j)
      for (Index i = 0; i <= d[0]; ++i) {
        double num = 0.0;
        double den = 0.0;
        for (const auto& o : stencil) {
          const Index ii = i + o.di, jj = j + o.dj, kk = k + o.dk;
          if (ii < 0 || jj < 0 || kk < 0 || ii > d[0] || jj > d[1] || kk > d[2]) continue;
          num += o.w * raw[static_cast<std::size_t>(lattice.node_index(ii, jj, kk))];
          den += o.w;
        }
        out[static_cast<std::size_t>(lattice.node_index(i, j, k))] = num / den;
      }
  return out;
}

LevelSetField apply_filter(std::span<const double> raw, const HexLattice& lattice, const FilterSpec& spec) {
  if (spec.lower && spec.upper && !(*spec.lower < *spec.upper)) {
    throw ValidationError("filter bounds need lower < upper");
  }
  std::vector<double> phi = filter_values(raw, lattice, spec.radius);
  for (double& v : phi) {
    if (spec.lower) v = std::max(v, *spec.lower);
    if (spec.upper) v = std::min(v, *spec.upper);
  }
  return LevelSetField(lattice, std::move(phi));
}

double crossing_parameter(double phi0, double phi1) { return phi0 / (phi0 - phi1); }

std::int64_t quantize_crossing(double t) {
  const auto q = static_cast<std::int64_t>(std::llround(std::ldexp(t, kFixedBits)));
  return std::clamp<std::int64_t>(q, 1, kFixedOne - 1);
}

std::optional<EdgeCrossing> edge_crossing(const LevelSetField& field, Index edge) {
  const auto nodes = field.lattice().edge_nodes(edge);
  const double phi0 = field.value(nodes[0]);
  const double phi1 = field.value(nodes[1]);
  if ((phi0 > 0.0) == (phi1 > 0.0)) return std::nullopt;
  const std::int64_t q = quantize_crossing(crossing_parameter(phi0, phi1));
  const double t = fixed_to_units(q);
  Vec3 position = field.lattice().node_position(nodes[0]);
  position[field.lattice().edge_axis(edge)] += field.lattice().spacing() * t;
  return EdgeCrossing{t, q, position};
}

}  // namespace cutcell
