#pragma once

// Convex hull of a point set in R^4 by randomized incremental insertion.
//
// Orientation tests are filtered: a floating-point evaluation is trusted when
// its magnitude exceeds kOrientEpsilon times a Hadamard bound, otherwise the
// sign is recomputed exactly with GMP integers. A point lying exactly on a
// facet hyperplane counts as visible from it, which is the outcome of pushing
// every later-inserted point infinitesimally outward from an interior point.
// Co-hyperplanar vertex sets therefore come out as several simplicial facets
// sharing one hyperplane, and every facet has strictly positive 3-volume.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "so3cover/vec4.hpp"

namespace so3cover {

/// Relative threshold below which the floating-point orientation is not trusted.
inline constexpr double kOrientEpsilon = 1e-10;

/// Generalized cross product of three vectors in R^4: the unique vector n with
/// det[a; b; c; x] = <n, x> for all x. Orthogonal to a, b and c; its length is
/// the 3-volume of the parallelepiped they span. Zero for dependent inputs.
Vec4 cross_product_4d(const Vec4& a, const Vec4& b, const Vec4& c);

/// cross_product_4d computed in exact arithmetic and rounded once.
Vec4 cross_product_4d_exact(const Vec4& a, const Vec4& b, const Vec4& c);

/// Normalized cross product. Throws DegenerateGeometry when the raw product
/// has norm below 1e-12 relative to |a||b||c|.
Vec4 unit_cross_product_4d(const Vec4& a, const Vec4& b, const Vec4& c);

/// Sign of det[b-a; c-a; d-a; p-a]: +1, 0 or -1, always exact.
int orient4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d, const Vec4& p);

/// Exact sign without the floating-point filter.
int orient4_exact(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d, const Vec4& p);

/// One tetrahedral hull facet. Vertices are ordered so that
/// orient4(v0, v1, v2, v3, x) > 0 for x strictly outside the hull.
/// neighbors[k] is the facet across the ridge opposite vertices[k].
struct HullFacet {
  std::array<std::uint32_t, 4> vertices{};
  std::array<std::uint32_t, 4> neighbors{};
};

struct ConvexHull4 {
  std::vector<HullFacet> facets;
  /// Number of input points that are hull vertices.
  std::size_t vertex_count = 0;
};

/// Convex hull of points. Requires at least 5 points not all in one affine
/// 3-flat; throws InvalidArgument / DegenerateGeometry otherwise. The
/// insertion order is shuffled with seed; the result is deterministic.
ConvexHull4 convex_hull_4d(std::span<const Vec4> points, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

}  // namespace so3cover
