#include "so3cover/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "so3cover/bounds.hpp"
#include "so3cover/delaunay.hpp"
#include "so3cover/error.hpp"
#include "so3cover/optimize.hpp"

namespace so3cover {
namespace {

constexpr std::uint64_t kChunk = 1 << 16;

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

NearestNeighborIndex build_nn_index(const OrientationSet& set) { return NearestNeighborIndex(set.points); }

double nearest_misorientation(const NearestNeighborIndex& index, const Quaternion& q) {
  const auto hit = index.nearest(q.vec());
  // angle on S^3 is 2 asin(d / 2); the rotation angle is twice that
  return 4.0 * std::asin(std::min(1.0, 0.5 * hit.distance));
}

ErrorHistogram error_histogram(const OrientationSet& set, std::uint64_t samples, std::size_t bins,
                               std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw InvalidArgument("error_histogram: samples must be >= 1");
  if (bins == 0) throw InvalidArgument("error_histogram: bins must be >= 1");
  const double theta = set.covering_radius ? *set.covering_radius : covering_radius(set);
  const double top = to_degrees(max_misorientation(theta));
  const double width = top / static_cast<double>(bins);
  const NearestNeighborIndex index = build_nn_index(set);

  struct Partial {
    std::vector<std::uint64_t> counts;
    double sum = 0.0;
    double max = 0.0;
  };
  const std::size_t chunks = static_cast<std::size_t>((samples + kChunk - 1) / kChunk);
  std::vector<Partial> parts(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Partial& p = parts[c];
    p.counts.assign(bins, 0);
    Rng rng = make_rng(seed, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      const double err = to_degrees(nearest_misorientation(index, random_quaternion(rng)));
      auto bin = width > 0.0 ? static_cast<std::size_t>(err / width) : 0;
      p.counts[std::min(bin, bins - 1)] += 1;
      p.sum += err;
      p.max = std::max(p.max, err);
    }
  });

  ErrorHistogram h;
  h.samples = samples;
  h.counts.assign(bins, 0);
  h.bin_edges_deg.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.bin_edges_deg[i] = width * static_cast<double>(i);
  double sum = 0.0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < bins; ++i) h.counts[i] += p.counts[i];
    sum += p.sum;
    h.max_deg = std::max(h.max_deg, p.max);
  }
  h.mean_deg = sum / static_cast<double>(samples);
  return h;
}

OrientationSet random_set(std::size_t n, std::uint64_t seed) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidArgument("random_set: n must be even and at least 8 (n counts points, 2 per rotation)");
  }
  const auto rots = sample_uniform(seed, n / 2);
  return expand_orbit(rots, laue_group("C1"));
}

double random_baseline(std::size_t n, std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw InvalidArgument("random_baseline: trials must be >= 1");
  std::vector<double> theta(trials);
  parallel_for(trials, threads, [&](std::size_t t) { theta[t] = covering_radius(random_set(n, seed + t)); });
  double sum = 0.0;
  for (double v : theta) sum += v;
  return sum / static_cast<double>(trials);
}

}  // namespace so3cover
