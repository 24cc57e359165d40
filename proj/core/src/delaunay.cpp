#include "so3cover/delaunay.hpp"

#include <algorithm>
#include <cmath>

#include "so3cover/error.hpp"

namespace so3cover {

SphericalSimplex circumscribe(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  const Vec4 e1 = b - a, e2 = c - a, e3 = d - a;
  Vec4 n = cross_product_4d(e1, e2, e3);
  double len = norm(n);
  if (!(len > 1e-8 * norm(e1) * norm(e2) * norm(e3))) {
    n = cross_product_4d_exact(e1, e2, e3);
    len = norm(n);
    if (!(len > 0.0)) throw DegenerateGeometry("circumscribe: vertices lie in a 2-plane");
  }
  SphericalSimplex s;
  s.circumcentre = (1.0 / len) * n;
  // 2 asin(chord / 2) keeps precision for small radii
  const double chord = norm(s.circumcentre - a);
  s.circumradius = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
  return s;
}

TriangulationS3 triangulate(std::span<const Vec4> points) {
  const ConvexHull4 hull = convex_hull_4d(points);
  TriangulationS3 t;
  t.points.assign(points.begin(), points.end());
  t.simplices.reserve(hull.facets.size());
  for (const auto& f : hull.facets) {
    SphericalSimplex s = circumscribe(points[f.vertices[0]], points[f.vertices[1]], points[f.vertices[2]],
                                      points[f.vertices[3]]);
    s.vertices = f.vertices;
    s.neighbors = f.neighbors;
    t.covering_radius = std::max(t.covering_radius, s.circumradius);
    t.simplices.push_back(s);
  }
  return t;
}

std::vector<std::vector<std::uint32_t>> TriangulationS3::vertex_stars() const {
  std::vector<std::vector<std::uint32_t>> stars(points.size());
  for (std::uint32_t i = 0; i < simplices.size(); ++i) {
    for (auto v : simplices[i].vertices) stars[v].push_back(i);
  }
  return stars;
}

std::size_t TriangulationS3::worst_simplex() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < simplices.size(); ++i) {
    if (simplices[i].circumradius > simplices[best].circumradius) best = i;
  }
  return best;
}

double covering_radius(const OrientationSet& set) { return triangulate(set.points).covering_radius; }

}  // namespace so3cover
