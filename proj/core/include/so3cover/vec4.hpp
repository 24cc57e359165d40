#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace so3cover {

/// Plain 4-vector in R^4. Unit-norm points on S^3 and quaternion components
/// (w, x, y, z) share this storage.
struct Vec4 {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  constexpr Vec4() = default;
  constexpr Vec4(double a, double b, double d, double e) : c{a, b, d, e} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  friend constexpr Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  }
  friend constexpr Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
  }
  friend constexpr Vec4 operator-(const Vec4& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
  friend constexpr Vec4 operator*(double s, const Vec4& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
  }
  friend constexpr Vec4 operator*(const Vec4& a, double s) { return s * a; }
  constexpr Vec4& operator+=(const Vec4& b) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += b[i];
    return *this;
  }
  constexpr Vec4& operator-=(const Vec4& b) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= b[i];
    return *this;
  }
  constexpr Vec4& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;
};

constexpr double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

inline Vec4 normalized(const Vec4& a) { return (1.0 / norm(a)) * a; }

/// Hamilton product on raw 4-vectors, no renormalization.
constexpr Vec4 hamilton(const Vec4& p, const Vec4& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

constexpr Vec4 conjugate(const Vec4& q) { return {q[0], -q[1], -q[2], -q[3]}; }

/// Angular distance on S^3 between two unit vectors (clamped arccos).
inline double sphere_angle(const Vec4& a, const Vec4& b) {
  double d = dot(a, b);
  if (d > 1.0) d = 1.0;
  if (d < -1.0) d = -1.0;
  return std::acos(d);
}

}  // namespace so3cover
