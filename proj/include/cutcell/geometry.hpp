#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "cutcell/mesh.hpp"

namespace cutcell {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using CornerValues = Eigen::Matrix<Scalar, 8, 1>;

/// Tri-linear shape functions of the unit cube, in local corner order.
template <typename Scalar>
CornerValues<Scalar> trilinear_weights(const Vector3<Scalar>& local) {
  CornerValues<Scalar> w;
  for (int c = 0; c < hex::corner_count; ++c) {
    const auto o = hex::corner_offset(c);
    Scalar v(1);
    for (int a = 0; a < 3; ++a) v *= o[a] ? local[a] : Scalar(1) - local[a];
    w[c] = v;
  }
  return w;
}

template <typename Scalar>
Scalar trilinear(const CornerValues<Scalar>& values, const Vector3<Scalar>& local) {
  return trilinear_weights(local).dot(values);
}

template <typename Scalar>
Scalar tet_signed_volume(const Vector3<Scalar>& a, const Vector3<Scalar>& b, const Vector3<Scalar>& c,
                         const Vector3<Scalar>& d) {
  return (b - a).dot((c - a).cross(d - a)) / Scalar(6);
}

template <typename Scalar>
Scalar triangle_area(const Vector3<Scalar>& a, const Vector3<Scalar>& b, const Vector3<Scalar>& c) {
  return (b - a).cross(c - a).norm() / Scalar(2);
}

template <typename Scalar>
Vector3<Scalar> centroid(const Vector3<Scalar>& a, const Vector3<Scalar>& b, const Vector3<Scalar>& c,
                         const Vector3<Scalar>& d) {
  return (a + b + c + d) / Scalar(4);
}

/// Saddle value of the bilinear interpolant on a face with cyclic corner values
/// (a, b, c, d): a and c are diagonal. Callers guarantee the alternating sign
/// pattern, which keeps the denominator away from zero.
template <typename Scalar>
Scalar bilinear_saddle_value(Scalar a, Scalar b, Scalar c, Scalar d) {
  return (a * c - b * d) / (a + c - b - d);
}

// ---------------------------------------------------------------------------
// Fixed-point lattice geometry.
//
// Every decomposition vertex lives on a lattice edge, so its coordinates are
// stored as integers in units of spacing / 2^kFixedBits. Orientation tests on
// these are exact in 128-bit arithmetic, which keeps the tetrahedralization
// free of rounding-dependent branches.

inline constexpr int kFixedBits = 26;
inline constexpr std::int64_t kFixedOne = std::int64_t{1} << kFixedBits;

using Int128 = __int128;
using FixedPoint = Eigen::Matrix<std::int64_t, 3, 1>;

/// Six times the signed volume of (a, b, c, d), exact.
inline Int128 orient3d(const FixedPoint& a, const FixedPoint& b, const FixedPoint& c, const FixedPoint& d) {
  const Int128 bx = b.x() - a.x(), by = b.y() - a.y(), bz = b.z() - a.z();
  const Int128 cx = c.x() - a.x(), cy = c.y() - a.y(), cz = c.z() - a.z();
  const Int128 dx = d.x() - a.x(), dy = d.y() - a.y(), dz = d.z() - a.z();
  return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
}

struct Cross128 {
  Int128 x, y, z;
  bool is_zero() const { return x == 0 && y == 0 && z == 0; }
};

inline Cross128 cross_exact(const FixedPoint& a, const FixedPoint& b, const FixedPoint& c) {
  const Int128 ux = b.x() - a.x(), uy = b.y() - a.y(), uz = b.z() - a.z();
  const Int128 vx = c.x() - a.x(), vy = c.y() - a.y(), vz = c.z() - a.z();
  return {uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx};
}

inline int sign_of(Int128 v) { return (v > 0) - (v < 0); }

/// Fixed-point offset to lattice units (exact).
inline double fixed_to_units(std::int64_t v) { return std::ldexp(static_cast<double>(v), -kFixedBits); }

}  // namespace cutcell
