#pragma once

// Empirical error analysis: nearest-neighbour misorientation of random
// rotations against an orientation set.

#include <cstdint>
#include <span>
#include <vector>

#include "so3cover/symmetry.hpp"

namespace so3cover {

/// Static 4D kd-tree with exact nearest-neighbour queries (Euclidean distance,
/// which orders unit vectors the same way as the angle).
class NearestNeighborIndex {
 public:
  /// Throws InvalidArgument for an empty point list.
  explicit NearestNeighborIndex(std::span<const Vec4> points);

  struct Hit {
    std::size_t index = 0;
    double distance = 0.0;  ///< Euclidean
  };

  Hit nearest(const Vec4& q) const;
  std::size_t size() const { return points_.size(); }
  const Vec4& point(std::size_t i) const { return points_[i]; }

 private:
  struct Node {
    std::uint32_t begin, end;  // range in order_
    std::int32_t left = -1, right = -1;
    std::uint8_t axis = 0;
    double split = 0.0;
    Vec4 lo, hi;  // bounding box
  };
  std::int32_t build(std::uint32_t begin, std::uint32_t end);
  void search(std::int32_t node, const Vec4& q, Hit& best, double& best_d2) const;

  std::vector<Vec4> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

/// Index over the expanded (antipodally closed) points of set.
NearestNeighborIndex build_nn_index(const OrientationSet& set);

/// Misorientation in radians between q and its nearest set member.
double nearest_misorientation(const NearestNeighborIndex& index, const Quaternion& q);

struct ErrorHistogram {
  std::vector<double> bin_edges_deg;  ///< bins + 1 edges over [0, 2 theta]
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;
  double max_deg = 0.0;
  double mean_deg = 0.0;
};

/// Samples uniform rotations (seeded, partitioned into fixed chunks so the
/// result does not depend on threads) and histograms the nearest-neighbour
/// misorientation over [0, 2 theta]. Errors above the range go to the last
/// bin. theta is measured if set.covering_radius is empty.
ErrorHistogram error_histogram(const OrientationSet& set, std::uint64_t samples, std::size_t bins,
                               std::uint64_t seed, unsigned threads = 0);

/// Mean covering radius (radians) of trials uniform random antipodal sets of
/// n points (n / 2 rotations).
double random_baseline(std::size_t n, std::size_t trials, std::uint64_t seed, unsigned threads = 0);

/// Antipodally closed expansion of uniform random rotations: n/2 rotations, n points.
OrientationSet random_set(std::size_t n, std::uint64_t seed);

}  // namespace so3cover
