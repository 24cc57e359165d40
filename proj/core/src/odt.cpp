#include <algorithm>
#include <cmath>

#include "so3cover/error.hpp"
#include "so3cover/optimize.hpp"

namespace so3cover {

OneRing one_ring(const TriangulationS3& tri, std::uint32_t i) {
  OneRing ring;
  ring.center = i;
  for (std::uint32_t t = 0; t < tri.simplices.size(); ++t) {
    const auto& v = tri.simplices[t].vertices;
    if (std::find(v.begin(), v.end(), i) == v.end()) continue;
    ring.simplices.push_back(t);
    ring.volume += spherical_tetrahedron_volume(tri.points[v[0]], tri.points[v[1]], tri.points[v[2]],
                                                tri.points[v[3]]);
  }
  return ring;
}

SmoothResult odt_smooth(std::span<const Quaternion> basis0, const QuaternionGroup& group, std::size_t iterations) {
  SmoothResult res;
  std::vector<Quaternion> x(basis0.begin(), basis0.end());
  OrientationSet set = expand_orbit(x, group);
  TriangulationS3 tri = triangulate(set.points);
  res.basis = x;
  res.theta = tri.covering_radius;

  std::vector<double> vol;
  std::vector<Vec4> acc;
  std::vector<double> wsum;
  for (std::size_t it = 0; it < iterations; ++it) {
    // representative expanded point of each basis point
    std::vector<std::size_t> rep(x.size(), set.points.size());
    std::vector<std::int8_t> sign(x.size(), 1);
    for (std::size_t i = 0; i < set.points.size(); ++i) {
      const auto& o = set.origins[i];
      if (o.element == 0 && rep[o.basis] == set.points.size()) {
        rep[o.basis] = i;
        sign[o.basis] = o.sign;
      }
    }
    std::vector<std::int32_t> owner(set.points.size(), -1);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (rep[k] < set.points.size()) owner[rep[k]] = static_cast<std::int32_t>(k);
    }
    acc.assign(x.size(), Vec4{});
    wsum.assign(x.size(), 0.0);
    for (const auto& s : tri.simplices) {
      bool touches = false;
      for (auto v : s.vertices) touches = touches || owner[v] >= 0;
      if (!touches) continue;
      const auto& p = tri.points;
      double w = 0.0;
      try {
        w = spherical_tetrahedron_volume(p[s.vertices[0]], p[s.vertices[1]], p[s.vertices[2]], p[s.vertices[3]]);
      } catch (const DegenerateGeometry&) {
        // a hemisphere-sized cell carries no usable weight
      }
      for (auto v : s.vertices) {
        if (owner[v] < 0) continue;
        acc[owner[v]] += w * s.circumcentre;
        wsum[owner[v]] += w;
      }
    }
    double moved = 0.0;
    std::vector<Quaternion> next(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (!(wsum[k] > 0.0)) {
        next[k] = x[k];
        continue;
      }
      const Vec4 target = (static_cast<double>(sign[k]) / wsum[k]) * acc[k];
      next[k] = Quaternion::from_vec(target);
      moved = std::max(moved, norm(next[k].vec() - x[k].vec()));
    }
    x = std::move(next);
    ++res.iterations;
    try {
      set = expand_orbit(x, group);
      tri = triangulate(set.points);
    } catch (const Error& e) {
      res.warnings.push_back(std::string("odt_smooth: stopped after triangulation failure: ") + e.what());
      break;
    }
    if (tri.covering_radius < res.theta) {
      res.theta = tri.covering_radius;
      res.basis = x;
    }
    if (moved < 1e-10) break;
  }
  return res;
}

}  // namespace so3cover
