#pragma once

// Delaunay triangulation of a point set on S^3. The triangulation is the
// boundary of the 4D convex hull; each hull facet is one spherical simplex
// whose circumscribed cap is empty of points.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "so3cover/hull4d.hpp"
#include "so3cover/symmetry.hpp"

namespace so3cover {

struct SphericalSimplex {
  std::array<std::uint32_t, 4> vertices{};
  std::array<std::uint32_t, 4> neighbors{};  ///< simplex across the face opposite vertices[k]
  Vec4 circumcentre;                         ///< unit 4-vector, outward hull normal
  double circumradius = 0.0;                 ///< radians
};

struct TriangulationS3 {
  std::vector<Vec4> points;
  std::vector<SphericalSimplex> simplices;
  double covering_radius = 0.0;  ///< max circumradius, radians

  /// Simplex indices incident to each point (empty for points that are not hull vertices).
  std::vector<std::vector<std::uint32_t>> vertex_stars() const;
  /// Index of a simplex with the largest circumradius.
  std::size_t worst_simplex() const;
};

/// Circumcentre (outward unit normal of the hull facet through a, b, c, d,
/// given in outward orientation) and angular circumradius.
SphericalSimplex circumscribe(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

/// Triangulates unit points. Points must span R^4.
TriangulationS3 triangulate(std::span<const Vec4> points);

/// Covering radius of an expanded set in radians.
double covering_radius(const OrientationSet& set);

/// Largest misorientation between any rotation and its nearest set member.
inline double max_misorientation(double covering_radius_rad) { return 2.0 * covering_radius_rad; }

/// Volume of the spherical tetrahedron with unit vertices a, b, c, d (all in
/// one open hemisphere), by quadrature in gnomonic coordinates.
double spherical_tetrahedron_volume(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

}  // namespace so3cover
