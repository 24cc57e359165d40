#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "so3cover/error.hpp"
#include "so3cover/evaluate.hpp"

namespace so3cover {
namespace {
constexpr std::uint32_t kLeafSize = 8;
}

NearestNeighborIndex::NearestNeighborIndex(std::span<const Vec4> points) : points_(points.begin(), points.end()) {
  if (points_.empty()) throw InvalidArgument("NearestNeighborIndex: empty point set");
  if (points_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("NearestNeighborIndex: too many points");
  }
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  nodes_.reserve(2 * points_.size() / kLeafSize + 2);
  build(0, static_cast<std::uint32_t>(points_.size()));
}

std::int32_t NearestNeighborIndex::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({});
  Node node;
  node.begin = begin;
  node.end = end;
  for (int k = 0; k < 4; ++k) {
    node.lo[k] = std::numeric_limits<double>::infinity();
    node.hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (auto i = begin; i < end; ++i) {
    for (int k = 0; k < 4; ++k) {
      node.lo[k] = std::min(node.lo[k], points_[order_[i]][k]);
      node.hi[k] = std::max(node.hi[k], points_[order_[i]][k]);
    }
  }
  if (end - begin > kLeafSize) {
    int axis = 0;
    for (int k = 1; k < 4; ++k) {
      if (node.hi[k] - node.lo[k] > node.hi[axis] - node.lo[axis]) axis = k;
    }
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) { return points_[a][axis] < points_[b][axis]; });
    node.axis = static_cast<std::uint8_t>(axis);
    node.split = points_[order_[mid]][axis];
    node.left = build(begin, mid);
    node.right = build(mid, end);
  }
  nodes_[id] = node;
  return id;
}

void NearestNeighborIndex::search(std::int32_t id, const Vec4& q, Hit& best, double& best_d2) const {
  const Node& node = nodes_[id];
  double box = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double d = q[k] < node.lo[k] ? node.lo[k] - q[k] : (q[k] > node.hi[k] ? q[k] - node.hi[k] : 0.0);
    box += d * d;
  }
  if (box > best_d2) return;
  if (node.left < 0) {
    for (auto i = node.begin; i < node.end; ++i) {
      const Vec4 d = points_[order_[i]] - q;
      const double d2 = dot(d, d);
      if (d2 < best_d2 || (d2 == best_d2 && order_[i] < best.index)) {
        best_d2 = d2;
        best.index = order_[i];
      }
    }
    return;
  }
  const bool go_left = q[node.axis] < node.split;
  search(go_left ? node.left : node.right, q, best, best_d2);
  search(go_left ? node.right : node.left, q, best, best_d2);
}

NearestNeighborIndex::Hit NearestNeighborIndex::nearest(const Vec4& q) const {
  Hit best;
  double best_d2 = std::numeric_limits<double>::infinity();
  search(0, q, best, best_d2);
  best.distance = std::sqrt(best_d2);
  return best;
}

}  // namespace so3cover
