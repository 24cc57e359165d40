#include "so3cover/hull4d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "so3cover/error.hpp"

namespace so3cover {

Vec4 cross_product_4d(const Vec4& a, const Vec4& b, const Vec4& c) {
  // 2x2 minors of rows b, c
  const double m01 = b[0] * c[1] - b[1] * c[0];
  const double m02 = b[0] * c[2] - b[2] * c[0];
  const double m03 = b[0] * c[3] - b[3] * c[0];
  const double m12 = b[1] * c[2] - b[2] * c[1];
  const double m13 = b[1] * c[3] - b[3] * c[1];
  const double m23 = b[2] * c[3] - b[3] * c[2];
  return {-(a[1] * m23 - a[2] * m13 + a[3] * m12), (a[0] * m23 - a[2] * m03 + a[3] * m02),
          -(a[0] * m13 - a[1] * m03 + a[3] * m01), (a[0] * m12 - a[1] * m02 + a[2] * m01)};
}

Vec4 unit_cross_product_4d(const Vec4& a, const Vec4& b, const Vec4& c) {
  const Vec4 n = cross_product_4d(a, b, c);
  const double len = norm(n);
  const double scale = norm(a) * norm(b) * norm(c);
  if (!(len >= 1e-12 * scale) || len == 0.0) {
    throw DegenerateGeometry("cross_product_4d: inputs are (nearly) linearly dependent");
  }
  return (1.0 / len) * n;
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Facet {
  std::array<std::uint32_t, 4> v{};
  std::array<std::uint32_t, 4> nb{};
  Vec4 normal;          // outward, unnormalized: <normal, x - p[v0]> has the sign of orient4
  double hadamard = 0;  // |e1||e2||e3| for the floating-point filter
  std::uint32_t mark = 0;
  bool visible = false;
  bool alive = false;
};

class IncrementalHull {
 public:
  IncrementalHull(std::span<const Vec4> pts, std::uint64_t seed) : p_(pts), rng_(seed) {}

  ConvexHull4 run();

 private:
  std::uint32_t new_facet(const std::array<std::uint32_t, 4>& v);
  void kill_facet(std::uint32_t f);
  // +1 outside, -1 inside, 0 on the hyperplane
  int side(const Facet& f, const Vec4& q) const;
  bool is_visible(const Facet& f, const Vec4& q) const { return side(f, q) >= 0; }
  std::array<std::uint32_t, 5> initial_simplex() const;
  std::uint32_t locate(std::uint32_t qi);
  void insert(std::uint32_t qi, std::uint32_t start);

  std::span<const Vec4> p_;
  std::mt19937_64 rng_;
  std::vector<Facet> f_;
  std::vector<std::uint32_t> free_;
  Vec4 centre_;
  std::uint32_t last_ = 0;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> visible_;
  std::vector<std::uint32_t> stack_;
  std::vector<char> is_vertex_;
};

std::uint32_t IncrementalHull::new_facet(const std::array<std::uint32_t, 4>& v) {
  std::uint32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    id = static_cast<std::uint32_t>(f_.size());
    f_.emplace_back();
  }
  Facet& f = f_[id];
  f.v = v;
  f.nb.fill(kNone);
  const Vec4 e1 = p_[v[1]] - p_[v[0]];
  const Vec4 e2 = p_[v[2]] - p_[v[0]];
  const Vec4 e3 = p_[v[3]] - p_[v[0]];
  f.normal = cross_product_4d(e1, e2, e3);
  f.hadamard = norm(e1) * norm(e2) * norm(e3);
  f.mark = 0;
  f.visible = false;
  f.alive = true;
  return id;
}

void IncrementalHull::kill_facet(std::uint32_t id) {
  f_[id].alive = false;
  free_.push_back(id);
}

int IncrementalHull::side(const Facet& f, const Vec4& q) const {
  const Vec4 d = q - p_[f.v[0]];
  const double val = dot(f.normal, d);
  // |val| <= hadamard * |d| always; the rounding error is far below this margin.
  if (std::abs(val) > kOrientEpsilon * f.hadamard * norm(d)) return val > 0 ? 1 : -1;
  return orient4_exact(p_[f.v[0]], p_[f.v[1]], p_[f.v[2]], p_[f.v[3]], q);
}

std::array<std::uint32_t, 5> IncrementalHull::initial_simplex() const {
  const std::size_t n = p_.size();
  std::array<std::uint32_t, 5> s{};
  s[0] = 0;
  std::vector<Vec4> basis;  // orthonormal directions spanned so far
  for (std::size_t k = 1; k < 5; ++k) {
    double best = -1.0;
    std::uint32_t best_i = 0;
    Vec4 best_r;
    for (std::size_t i = 0; i < n; ++i) {
      Vec4 r = p_[i] - p_[s[0]];
      for (const auto& b : basis) r -= dot(r, b) * b;
      const double d = dot(r, r);
      if (d > best) {
        best = d;
        best_i = static_cast<std::uint32_t>(i);
        best_r = r;
      }
    }
    if (!(best > 0.0)) throw DegenerateGeometry("convex_hull_4d: points do not span R^4");
    s[k] = best_i;
    basis.push_back((1.0 / std::sqrt(best)) * best_r);
  }
  if (orient4_exact(p_[s[0]], p_[s[1]], p_[s[2]], p_[s[3]], p_[s[4]]) == 0) {
    // Gram-Schmidt picked a numerically independent but exactly flat set; scan.
    for (std::size_t i = 0; i < n; ++i) {
      if (orient4_exact(p_[s[0]], p_[s[1]], p_[s[2]], p_[s[3]], p_[i]) != 0) {
        s[4] = static_cast<std::uint32_t>(i);
        return s;
      }
    }
    throw DegenerateGeometry("convex_hull_4d: all points lie in one affine 3-flat");
  }
  return s;
}

std::uint32_t IncrementalHull::locate(std::uint32_t qi) {
  const Vec4& q = p_[qi];
  std::uint32_t cur = last_;
  if (!f_[cur].alive) {
    for (std::uint32_t i = 0; i < f_.size(); ++i) {
      if (f_[i].alive) {
        cur = i;
        break;
      }
    }
  }
  // Stochastic visibility walk along the ray from the interior centre to q.
  const std::size_t max_steps = 4 * f_.size() + 64;
  const Vec4 dq = q - centre_;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const Facet& f = f_[cur];
    const int start = static_cast<int>(rng_() & 3u);
    std::uint32_t next = kNone;
    for (int t = 0; t < 4; ++t) {
      const int k = (start + t) & 3;
      const Vec4& a = p_[f.v[(k + 1) & 3]];
      const Vec4& b = p_[f.v[(k + 2) & 3]];
      const Vec4& c = p_[f.v[(k + 3) & 3]];
      const Vec4 m = cross_product_4d(a - centre_, b - centre_, c - centre_);
      const double sv = dot(m, p_[f.v[k]] - centre_);
      const double sq = dot(m, dq);
      if ((sv > 0 && sq < 0) || (sv < 0 && sq > 0)) {
        next = f.nb[k];
        break;
      }
    }
    if (next == kNone) {
      if (is_visible(f, q)) return cur;
      break;
    }
    cur = next;
  }
  // Walk failed to certify a visible facet (rounding); fall back to a scan.
  for (std::uint32_t i = 0; i < f_.size(); ++i) {
    if (f_[i].alive && is_visible(f_[i], q)) return i;
  }
  return kNone;
}

void IncrementalHull::insert(std::uint32_t qi, std::uint32_t start) {
  const Vec4& q = p_[qi];
  ++stamp_;
  visible_.clear();
  stack_.clear();
  stack_.push_back(start);
  f_[start].mark = stamp_;
  f_[start].visible = true;
  while (!stack_.empty()) {
    const std::uint32_t fi = stack_.back();
    stack_.pop_back();
    visible_.push_back(fi);
    for (int k = 0; k < 4; ++k) {
      const std::uint32_t g = f_[fi].nb[k];
      if (f_[g].mark == stamp_) continue;
      f_[g].mark = stamp_;
      f_[g].visible = is_visible(f_[g], q);
      if (f_[g].visible) stack_.push_back(g);
    }
  }

  // One new facet per horizon ridge, built from the invisible neighbour g:
  // g's vertex opposite the ridge is replaced by q and two entries are
  // swapped, which yields outward orientation (q is strictly beneath g).
  struct EdgeSlot {
    std::uint32_t facet;
    int slot;
  };
  std::unordered_map<std::uint64_t, EdgeSlot> edges;
  edges.reserve(visible_.size() * 8);
  std::vector<std::uint32_t> created;
  for (const std::uint32_t fi : visible_) {
    for (int k = 0; k < 4; ++k) {
      const std::uint32_t g = f_[fi].nb[k];
      if (f_[g].visible) continue;
      int kg = 0;
      while (f_[g].nb[kg] != fi) ++kg;
      std::array<std::uint32_t, 4> v = f_[g].v;
      v[kg] = qi;
      const int s1 = (kg + 1) & 3, s2 = (kg + 2) & 3;
      std::swap(v[s1], v[s2]);
      const std::uint32_t nf = new_facet(v);
      f_[nf].nb[kg] = g;
      f_[g].nb[kg] = nf;
      created.push_back(nf);
      for (int j = 0; j < 4; ++j) {
        if (j == kg) continue;
        // ridge opposite slot j contains q and the two remaining old vertices
        std::uint32_t a = kNone, b = kNone;
        for (int t = 0; t < 4; ++t) {
          if (t == j || t == kg) continue;
          (a == kNone ? a : b) = v[t];
        }
        if (a > b) std::swap(a, b);
        const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
        auto it = edges.find(key);
        if (it == edges.end()) {
          edges.emplace(key, EdgeSlot{nf, j});
        } else {
          f_[nf].nb[j] = it->second.facet;
          f_[it->second.facet].nb[it->second.slot] = nf;
          edges.erase(it);
        }
      }
    }
  }
  if (!edges.empty()) throw NumericalError("convex_hull_4d: horizon is not a closed surface");
  for (const std::uint32_t fi : visible_) kill_facet(fi);
  last_ = created.back();
  is_vertex_[qi] = 1;
}

ConvexHull4 IncrementalHull::run() {
  const std::size_t n = p_.size();
  if (n < 5) throw InvalidArgument("convex_hull_4d: at least 5 points required, got " + std::to_string(n));
  if (n >= kNone) throw InvalidArgument("convex_hull_4d: too many points");
  is_vertex_.assign(n, 0);

  const auto s = initial_simplex();
  centre_ = Vec4{};
  for (auto i : s) centre_ += p_[i];
  centre_ *= 0.2;

  std::array<std::uint32_t, 5> ids{};
  for (int k = 0; k < 5; ++k) {
    std::array<std::uint32_t, 4> v{};
    int t = 0;
    for (int j = 0; j < 5; ++j) {
      if (j != k) v[t++] = s[j];
    }
    if (orient4_exact(p_[v[0]], p_[v[1]], p_[v[2]], p_[v[3]], p_[s[k]]) > 0) std::swap(v[0], v[1]);
    ids[k] = new_facet(v);
  }
  for (int k = 0; k < 5; ++k) {
    Facet& f = f_[ids[k]];
    for (int slot = 0; slot < 4; ++slot) {
      const std::uint32_t opp = f.v[slot];
      int j = 0;
      while (s[j] != opp) ++j;
      f.nb[slot] = ids[j];
    }
  }
  for (auto i : s) is_vertex_[i] = 1;
  last_ = ids[0];

  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!is_vertex_[i]) order.push_back(i);
  }
  std::shuffle(order.begin(), order.end(), rng_);
  for (const std::uint32_t qi : order) {
    const std::uint32_t start = locate(qi);
    if (start == kNone) continue;  // inside the current hull
    insert(qi, start);
  }

  // Compact: renumber live facets and drop vertices buried by later insertions.
  std::vector<std::uint32_t> remap(f_.size(), kNone);
  ConvexHull4 out;
  for (std::uint32_t i = 0; i < f_.size(); ++i) {
    if (f_[i].alive) {
      remap[i] = static_cast<std::uint32_t>(out.facets.size());
      out.facets.push_back({f_[i].v, f_[i].nb});
    }
  }
  std::vector<char> used(n, 0);
  for (auto& f : out.facets) {
    for (auto& nb : f.neighbors) nb = remap[nb];
    for (auto v : f.vertices) used[v] = 1;
  }
  out.vertex_count = static_cast<std::size_t>(std::count(used.begin(), used.end(), 1));
  return out;
}

}  // namespace

ConvexHull4 convex_hull_4d(std::span<const Vec4> points, std::uint64_t seed) {
  IncrementalHull hull(points, seed);
  return hull.run();
}

}  // namespace so3cover
