#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "so3cover/bounds.hpp"
#include "so3cover/delaunay.hpp"
#include "so3cover/error.hpp"

using namespace so3cover;

namespace {

std::vector<Vec4> random_antipodal(std::size_t rotations, std::uint64_t seed) {
  std::vector<Vec4> pts;
  for (const auto& q : sample_uniform(seed, rotations)) {
    pts.push_back(q.vec());
    pts.push_back(-q.vec());
  }
  return pts;
}

}  // namespace

TEST(Delaunay, SixteenCell) {
  const auto t = triangulate(oracle::cell16());
  EXPECT_EQ(t.simplices.size(), 16u);
  EXPECT_NEAR(to_degrees(t.covering_radius), 60.00, 1e-9);
}

TEST(Delaunay, SixHundredCell) {
  const auto t = triangulate(oracle::cell600());
  EXPECT_EQ(t.simplices.size(), 600u);
  EXPECT_NEAR(to_degrees(t.covering_radius), 22.24, 0.005);  // table value, 2 decimals
  for (const auto& s : t.simplices) EXPECT_NEAR(s.circumradius, t.covering_radius, 1e-12);
}

TEST(Delaunay, CoveringRadiusOfOrbit) {
  const auto set = expand_orbit(std::vector<Quaternion>{Quaternion::identity()}, laue_group("2I"));
  const double theta = covering_radius(set);
  EXPECT_NEAR(to_degrees(theta), 22.24, 0.005);
  EXPECT_NEAR(to_degrees(max_misorientation(theta)), 44.48, 0.01);
}

TEST(Delaunay, PerturbedSixHundredCellIsWorse) {
  auto pts = oracle::cell600();
  const double base = triangulate(pts).covering_radius;
  // rotate vertex 17 (and its antipode) by 0.5 degrees towards an arbitrary direction
  const std::size_t i = 17;
  Vec4 dir{0.3, -0.2, 0.9, 0.1};
  dir -= dot(dir, pts[i]) * pts[i];
  dir = normalized(dir);
  const double a = to_radians(0.5);
  const Vec4 moved = std::cos(a) * pts[i] + std::sin(a) * dir;
  const Vec4 anti = -pts[i];
  for (auto& p : pts) {
    if (norm(p - anti) < 1e-12) p = -moved;
  }
  pts[i] = moved;
  EXPECT_GT(triangulate(pts).covering_radius, base + 1e-6);
}

TEST(Delaunay, EmptySphereAndEquidistance) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto pts = random_antipodal(100, seed);
    const auto t = triangulate(pts);
    double theta = 0.0;
    for (const auto& s : t.simplices) {
      double d[4], mean = 0.0;
      for (int k = 0; k < 4; ++k) {
        d[k] = dot(s.circumcentre, pts[s.vertices[k]]);
        EXPECT_GT(d[k], 0.0);
        mean += d[k] / 4;
      }
      double var = 0.0;
      for (double v : d) var += (v - mean) * (v - mean) / 4;
      EXPECT_LT(std::sqrt(var), 1e-10);
      EXPECT_NEAR(std::acos(std::clamp(mean, -1.0, 1.0)), s.circumradius, 1e-7);
      for (const auto& p : pts) {
        const double ang = std::acos(std::clamp(dot(s.circumcentre, p), -1.0, 1.0));
        EXPECT_GE(ang, s.circumradius - 1e-9);
      }
      theta = std::max(theta, s.circumradius);
    }
    EXPECT_EQ(theta, t.covering_radius);
  }
}

TEST(Delaunay, MonteCarloBracket) {
  const auto pts = random_antipodal(100, 77);
  const double theta = triangulate(pts).covering_radius;
  const std::size_t samples = 1000000;
  const double mc = oracle::monte_carlo_covering(pts, samples, 5);
  const double rho = oracle::monte_carlo_resolution(samples);
  EXPECT_LE(mc, theta + 1e-9);
  EXPECT_LE(theta, mc + rho);
}

TEST(Delaunay, SymmetricTriangulationIsInvariant) {
  Rng rng = make_rng(9);
  const QuaternionGroup o = laue_group("O");
  const auto set = expand_orbit(std::vector<Quaternion>{random_quaternion(rng), random_quaternion(rng)}, o);
  const auto t = triangulate(set.points);
  std::set<std::array<std::uint32_t, 4>> simplices;
  for (const auto& s : t.simplices) {
    auto v = s.vertices;
    std::sort(v.begin(), v.end());
    simplices.insert(v);
  }
  auto index_of = [&](const Vec4& p) {
    for (std::uint32_t i = 0; i < set.points.size(); ++i) {
      if (norm(set.points[i] - p) < 1e-9) return i;
    }
    return static_cast<std::uint32_t>(-1);
  };
  for (const auto& g : o.elements()) {
    for (const auto& s : t.simplices) {
      std::array<std::uint32_t, 4> v;
      for (int k = 0; k < 4; ++k) v[k] = index_of(hamilton(set.points[s.vertices[k]], g.vec()));
      std::sort(v.begin(), v.end());
      EXPECT_TRUE(simplices.count(v));
    }
  }
}

TEST(Delaunay, VertexStars) {
  const auto t = triangulate(oracle::cell600());
  const auto stars = t.vertex_stars();
  for (const auto& s : stars) EXPECT_EQ(s.size(), 20u);  // 20 cells meet at a 600-cell vertex
  EXPECT_EQ(t.simplices[t.worst_simplex()].circumradius, t.covering_radius);
}

TEST(SphericalVolume, MatchesRadialQuadratureOracle) {
  Rng rng = make_rng(4);
  for (int t = 0; t < 30; ++t) {
    const Vec4 c = random_quaternion(rng).vec();
    const double r = 0.02 + 0.3 * uniform01(rng);
    std::array<Vec4, 4> v;
    for (auto& x : v) {
      Vec4 d = random_quaternion(rng).vec();
      d -= dot(d, c) * c;
      x = normalized(c + r * normalized(d));
    }
    const double lib = spherical_tetrahedron_volume(v[0], v[1], v[2], v[3]);
    const double ref = static_cast<double>(oracle::spherical_tet_volume(v[0], v[1], v[2], v[3]));
    EXPECT_NEAR(lib, ref, 1e-6 * ref + 1e-14);
  }
}

TEST(SphericalVolume, SixHundredCellCellsFillSphere) {
  const auto pts = oracle::cell600();
  const auto t = triangulate(pts);
  double total = 0.0;
  for (const auto& s : t.simplices) {
    total += spherical_tetrahedron_volume(pts[s.vertices[0]], pts[s.vertices[1]], pts[s.vertices[2]],
                                          pts[s.vertices[3]]);
  }
  EXPECT_NEAR(total, 2.0 * std::numbers::pi * std::numbers::pi, 1e-6);
}
