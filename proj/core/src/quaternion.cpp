#include "so3cover/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "so3cover/error.hpp"

namespace so3cover {

Quaternion Quaternion::from_components(double w, double x, double y, double z) {
  return from_vec(Vec4{w, x, y, z});
}

Quaternion Quaternion::from_vec(const Vec4& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("quaternion must be finite and nonzero");
  }
  return Quaternion((1.0 / n) * v, Unchecked{});
}

Vec4 canonical_sign(const Vec4& v) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (v[i] > 0.0) return v;
    if (v[i] < 0.0) return -v;
  }
  return v;
}

Quaternion Quaternion::canonical() const { return Quaternion(canonical_sign(q_), Unchecked{}); }

Quaternion quat_multiply(const Quaternion& p, const Quaternion& q) {
  return Quaternion::from_vec(hamilton(p.vec(), q.vec()));
}

double misorientation_angle(const Quaternion& p, const Quaternion& q) {
  const double d = std::min(1.0, std::abs(dot(p, q)));
  return 2.0 * std::acos(d);
}

double rotation_angle(const Quaternion& q) { return 2.0 * std::acos(std::min(1.0, std::abs(q.w()))); }

Mat3 to_rotation_matrix(const Quaternion& q) {
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  return Mat3{{{1 - 2 * y * y - 2 * z * z, 2 * x * y - 2 * w * z, 2 * x * z + 2 * w * y},
               {2 * x * y + 2 * w * z, 1 - 2 * x * x - 2 * z * z, 2 * y * z - 2 * w * x},
               {2 * x * z - 2 * w * y, 2 * y * z + 2 * w * x, 1 - 2 * x * x - 2 * y * y}}};
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Quaternion random_quaternion(Rng& rng) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double u3 = uniform01(rng);
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return Quaternion::from_components(a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                                     b * std::sin(two_pi * u3), b * std::cos(two_pi * u3));
}

std::vector<Quaternion> sample_uniform(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw InvalidArgument("sample_uniform: n must be at least 1");
  Rng rng = make_rng(seed);
  std::vector<Quaternion> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_quaternion(rng));
  return out;
}

RFVector to_rf(const Quaternion& q) {
  if (std::abs(q.w()) <= kRfMinW) {
    throw InvalidArgument("to_rf: near-180 degree rotation, rotate frame first");
  }
  const double s = 1.0 / q.w();  // sign convention w > 0 is implied by dividing by w
  return RFVector{q.x() * s, q.y() * s, q.z() * s};
}

Quaternion from_rf(const RFVector& v) { return Quaternion::from_components(1.0, v.r1, v.r2, v.r3); }

}  // namespace so3cover
