#pragma once

// Unit quaternions as rotations. Component order is (w, x, y, z) everywhere,
// products follow the Hamilton convention (i*j = k).

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "so3cover/vec4.hpp"

namespace so3cover {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Unit quaternion. Every constructor normalizes, so norm() == 1 within 1e-12.
class Quaternion {
 public:
  constexpr Quaternion() = default;

  /// Normalizes (w, x, y, z). Throws InvalidArgument for a zero or non-finite vector.
  static Quaternion from_components(double w, double x, double y, double z);
  static Quaternion from_vec(const Vec4& v);
  static constexpr Quaternion identity() { return Quaternion(); }

  constexpr double w() const { return q_[0]; }
  constexpr double x() const { return q_[1]; }
  constexpr double y() const { return q_[2]; }
  constexpr double z() const { return q_[3]; }
  constexpr const Vec4& vec() const { return q_; }

  constexpr Quaternion operator-() const { return Quaternion(-q_, Unchecked{}); }
  constexpr Quaternion conjugate() const { return Quaternion(so3cover::conjugate(q_), Unchecked{}); }

  /// Sign representative with w > 0; for w == 0 the first nonzero component is positive.
  Quaternion canonical() const;

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

 private:
  struct Unchecked {};
  constexpr Quaternion(const Vec4& v, Unchecked) : q_(v) {}

  Vec4 q_{1.0, 0.0, 0.0, 0.0};
};

/// Hamilton product p*q, renormalized to unit length.
Quaternion quat_multiply(const Quaternion& p, const Quaternion& q);
inline Quaternion operator*(const Quaternion& p, const Quaternion& q) { return quat_multiply(p, q); }

inline double dot(const Quaternion& p, const Quaternion& q) { return dot(p.vec(), q.vec()); }

/// Rotation angle between two orientations, 2 arccos |<p, q>|, in [0, pi].
double misorientation_angle(const Quaternion& p, const Quaternion& q);

/// Rotation angle of q itself (misorientation to the identity).
double rotation_angle(const Quaternion& q);

Mat3 to_rotation_matrix(const Quaternion& q);

/// Canonical sign representative of a raw unit vector (see Quaternion::canonical).
Vec4 canonical_sign(const Vec4& v);

/// Deterministic 64-bit generator used throughout the library.
using Rng = std::mt19937_64;

/// Generator seeded from (seed, stream) so parallel workers get independent streams.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Uniform double in [0, 1) with 53 random bits; independent of the standard
/// library's distribution implementation.
double uniform01(Rng& rng);

/// One uniformly distributed rotation (Shoemake's subgroup algorithm).
Quaternion random_quaternion(Rng& rng);

/// n uniformly distributed unit quaternions, deterministic for a fixed seed.
std::vector<Quaternion> sample_uniform(std::uint64_t seed, std::size_t n);

/// Rodrigues-Frank vector: rotation axis scaled by tan(angle / 2).
struct RFVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

/// Smallest |w| accepted by to_rf. Rotations closer to 180 degrees have no
/// finite RF representation; rotate the frame first.
inline constexpr double kRfMinW = 1e-7;

RFVector to_rf(const Quaternion& q);
Quaternion from_rf(const RFVector& v);

inline double rf_norm(const RFVector& v) { return std::sqrt(v.r1 * v.r1 + v.r2 * v.r2 + v.r3 * v.r3); }

}  // namespace so3cover
