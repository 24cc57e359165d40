#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "so3cover/bounds.hpp"
#include "so3cover/delaunay.hpp"
#include "so3cover/error.hpp"
#include "so3cover/evaluate.hpp"

using namespace so3cover;

TEST(NearestNeighbor, MatchesLinearScan) {
  const auto set = random_set(4000, 3);
  const NearestNeighborIndex index(set.points);
  EXPECT_EQ(index.size(), set.points.size());
  const auto queries = oracle::gaussian_quaternions(10000, 17);
  for (const auto& q : queries) {
    const auto hit = index.nearest(q);
    const std::size_t ref = oracle::nearest_linear(set.points, q);
    EXPECT_EQ(hit.index, ref);
    EXPECT_NEAR(hit.distance, norm(set.points[ref] - q), 1e-15);
  }
}

TEST(NearestNeighbor, ExactPointsAndTies) {
  std::vector<Vec4> pts{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}};
  const NearestNeighborIndex index(pts);
  EXPECT_EQ(index.nearest({1, 0, 0, 0}).index, 0u);
  EXPECT_EQ(index.nearest({0, 0, 1, 0}).index, 3u);
  EXPECT_EQ(index.nearest({0, 0, 1, 0}).distance, 0.0);
}

TEST(NearestNeighbor, AntipodeGivesSameMisorientation) {
  const auto set = random_set(500, 8);
  const auto index = build_nn_index(set);
  Rng rng = make_rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Quaternion q = random_quaternion(rng);
    EXPECT_NEAR(nearest_misorientation(index, q), nearest_misorientation(index, -q), 1e-12);
    double best = 10.0;
    for (const auto& b : set.basis) best = std::min(best, misorientation_angle(q, b));
    EXPECT_NEAR(nearest_misorientation(index, q), best, 1e-9);
  }
}

TEST(Histogram, SixHundredCell) {
  const auto set = expand_orbit(std::vector<Quaternion>{Quaternion::identity()}, laue_group("2I"));
  const auto h = error_histogram(set, 200000, 50, 5, 2);
  const double theta = covering_radius(set);
  EXPECT_EQ(h.samples, 200000u);
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}), h.samples);
  ASSERT_EQ(h.bin_edges_deg.size(), 51u);
  EXPECT_EQ(h.bin_edges_deg.front(), 0.0);
  EXPECT_NEAR(h.bin_edges_deg.back(), to_degrees(2.0 * theta), 1e-12);
  EXPECT_LE(h.max_deg, to_degrees(2.0 * theta) + 1e-6);
  EXPECT_GT(h.max_deg, 38.0);
  EXPECT_GT(h.mean_deg, 0.0);
  EXPECT_LT(h.mean_deg, h.max_deg);
}

TEST(Histogram, DeterministicAcrossThreads) {
  const auto set = random_set(200, 4);
  const auto a = error_histogram(set, 150000, 20, 9, 1);
  const auto b = error_histogram(set, 150000, 20, 9, 4);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.max_deg, b.max_deg);
  EXPECT_NEAR(a.mean_deg, b.mean_deg, 1e-12);
  EXPECT_THROW(error_histogram(set, 0, 20, 1), InvalidArgument);
  EXPECT_THROW(error_histogram(set, 10, 0, 1), InvalidArgument);
}

TEST(Histogram, MaxMatchesMonteCarloOracle) {
  const auto set = random_set(300, 6);
  const auto h = error_histogram(set, 100000, 10, 1, 1);
  const double mc = oracle::monte_carlo_covering(set.points, 100000, 1);
  // independent samples: both underestimate 2 theta by at most twice the resolution
  const double rho = oracle::monte_carlo_resolution(100000);
  const double two_theta = to_degrees(2.0 * covering_radius(set));
  EXPECT_LE(h.max_deg, two_theta + 1e-6);
  EXPECT_GE(h.max_deg, two_theta - to_degrees(2.0 * rho));
  EXPECT_GE(to_degrees(2.0 * mc), two_theta - to_degrees(2.0 * rho));
}

TEST(RandomBaseline, MeanOfTrials) {
  const double mean = random_baseline(200, 4, 10, 1);
  double ref = 0.0;
  for (std::uint64_t t = 0; t < 4; ++t) ref += covering_radius(random_set(200, 10 + t)) / 4.0;
  EXPECT_DOUBLE_EQ(mean, ref);
  EXPECT_THROW(random_baseline(200, 0, 1), InvalidArgument);
  EXPECT_THROW(random_set(7, 1), InvalidArgument);
  EXPECT_EQ(random_set(10, 1).n_points(), 10u);
}
