#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "so3cover/error.hpp"
#include "so3cover/nelder_mead.hpp"
#include "so3cover/optimize.hpp"

namespace so3cover {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec4 image(const Vec4& b, const QuaternionGroup& group, const PointOrigin& o) {
  return static_cast<double>(o.sign) * normalized(hamilton(b, group.elements()[o.element].vec()));
}

// Circumradius with the vertex order kept from the triangulation; an inverted
// simplex (circumcentre on the far side) or a flat one yields +inf.
double oriented_radius(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  try {
    const SphericalSimplex s = circumscribe(a, b, c, d);
    if (!(dot(s.circumcentre, a) > 0.0)) return kInf;
    return s.circumradius;
  } catch (const DegenerateGeometry&) {
    return kInf;
  }
}

class Refiner {
 public:
  Refiner(std::vector<Quaternion> basis, const QuaternionGroup& group) : x_(std::move(basis)), group_(group) {}

  RefineResult run(std::size_t passes);

 private:
  bool refine_simplex(const TriangulationS3& tri, const std::vector<std::vector<std::uint32_t>>& stars,
                      std::size_t t);

  std::vector<Quaternion> x_;
  const QuaternionGroup& group_;
  std::vector<Vec4> pos_;
  std::vector<PointOrigin> origins_;
  std::vector<std::vector<std::uint32_t>> images_;  // expanded indices per basis point
};

bool Refiner::refine_simplex(const TriangulationS3& tri, const std::vector<std::vector<std::uint32_t>>& stars,
                             std::size_t t) {
  const auto& simplex = tri.simplices[t];
  // active basis points, each with the simplex vertex it is parameterized by
  std::vector<std::uint32_t> active, anchor;
  for (auto v : simplex.vertices) {
    const std::uint32_t b = origins_[v].basis;
    if (std::find(active.begin(), active.end(), b) == active.end()) {
      active.push_back(b);
      anchor.push_back(v);
    }
  }
  std::vector<std::uint32_t> local;
  for (auto v : simplex.vertices) local.insert(local.end(), stars[v].begin(), stars[v].end());
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());

  // vertices of the local simplices that move with the active basis points
  std::vector<std::uint32_t> moving;
  std::vector<std::uint32_t> moving_slot;
  for (auto s : local) {
    for (auto v : tri.simplices[s].vertices) {
      const auto it = std::find(active.begin(), active.end(), origins_[v].basis);
      if (it == active.end()) continue;
      moving.push_back(v);
      moving_slot.push_back(static_cast<std::uint32_t>(it - active.begin()));
    }
  }

  Vec4 centre{};
  for (auto v : simplex.vertices) centre += pos_[v];
  const Quaternion c = Quaternion::from_vec(centre);
  const Quaternion cinv = c.conjugate();

  std::vector<double> x0(3 * active.size());
  for (std::size_t a = 0; a < active.size(); ++a) {
    const RFVector r = to_rf(cinv * Quaternion::from_vec(pos_[anchor[a]]));
    x0[3 * a] = r.r1;
    x0[3 * a + 1] = r.r2;
    x0[3 * a + 2] = r.r3;
  }

  std::vector<Vec4> trial_basis(active.size());
  std::vector<Vec4> work = pos_;
  auto decode = [&](std::span<const double> v) {
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Quaternion u = c * from_rf({v[3 * a], v[3 * a + 1], v[3 * a + 2]});
      const PointOrigin& o = origins_[anchor[a]];
      // u = sign * b * g  =>  b = sign * u * conj(g)
      trial_basis[a] = static_cast<double>(o.sign) *
                       normalized(hamilton(u.vec(), conjugate(group_.elements()[o.element].vec())));
    }
  };
  auto objective = [&](std::span<const double> v) {
    decode(v);
    for (std::size_t m = 0; m < moving.size(); ++m) {
      work[moving[m]] = image(trial_basis[moving_slot[m]], group_, origins_[moving[m]]);
    }
    double worst = 0.0;
    for (auto s : local) {
      const auto& vv = tri.simplices[s].vertices;
      worst = std::max(worst, oriented_radius(work[vv[0]], work[vv[1]], work[vv[2]], work[vv[3]]));
      if (worst == kInf) break;
    }
    return worst;
  };

  const double f0 = objective(x0);
  if (!std::isfinite(f0)) return false;
  NelderMeadOptions opt;
  opt.initial_step = 0.1 * std::tan(std::min(f0, 1.4));
  opt.max_evaluations = 200;
  const NelderMeadResult nm = nelder_mead(objective, x0, opt);
  if (!(nm.value < f0 - 1e-12)) return false;  // rounding noise is not an improvement

  decode(nm.x);
  for (std::size_t a = 0; a < active.size(); ++a) {
    x_[active[a]] = Quaternion::from_vec(trial_basis[a]);
    for (auto i : images_[active[a]]) pos_[i] = image(x_[active[a]].vec(), group_, origins_[i]);
  }
  return true;
}

RefineResult Refiner::run(std::size_t passes) {
  RefineResult res;
  OrientationSet set = expand_orbit(x_, group_);
  TriangulationS3 tri = triangulate(set.points);
  res.theta = tri.covering_radius;

  for (std::size_t pass = 0; pass < passes; ++pass) {
    const std::vector<Quaternion> saved = x_;
    pos_ = set.points;
    origins_ = set.origins;
    images_.assign(x_.size(), {});
    for (std::uint32_t i = 0; i < origins_.size(); ++i) images_[origins_[i].basis].push_back(i);
    const auto stars = tri.vertex_stars();

    std::vector<std::size_t> order(tri.simplices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return tri.simplices[a].circumradius > tri.simplices[b].circumradius;
    });

    // Symmetric images of a simplex share its owners and radius; visit one.
    std::set<std::vector<std::int64_t>> seen;
    std::size_t accepted = 0;
    for (const std::size_t t : order) {
      const auto& s = tri.simplices[t];
      std::vector<std::int64_t> key;
      for (auto v : s.vertices) key.push_back(origins_[v].basis);
      std::sort(key.begin(), key.end());
      key.push_back(std::llround(s.circumradius * 1e9));
      if (!seen.insert(std::move(key)).second) continue;
      if (refine_simplex(tri, stars, t)) ++accepted;
    }

    OrientationSet next_set = expand_orbit(x_, group_);
    TriangulationS3 next_tri = triangulate(next_set.points);
    if (next_tri.covering_radius > res.theta) {
      x_ = saved;
      ++res.reverted_passes;
      break;
    }
    res.accepted_moves += accepted;
    set = std::move(next_set);
    tri = std::move(next_tri);
    res.theta = tri.covering_radius;
    if (accepted == 0) break;
  }
  res.basis = x_;
  return res;
}

}  // namespace

RefineResult local_refine(std::span<const Quaternion> basis, const QuaternionGroup& group, std::size_t passes) {
  Refiner r(std::vector<Quaternion>(basis.begin(), basis.end()), group);
  return r.run(passes);
}

}  // namespace so3cover
