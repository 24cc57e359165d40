#include <array>
#include <cmath>

#include "so3cover/delaunay.hpp"
#include "so3cover/error.hpp"

namespace so3cover {
namespace {

// Gauss-Legendre nodes and weights on [0, 1], 6 points.
constexpr int kOrder = 6;
constexpr std::array<double, kOrder> kNode{0.033765242898423975, 0.16939530676686776, 0.3806904069584015,
                                           0.6193095930415985,   0.8306046932331322,  0.966234757101576};
constexpr std::array<double, kOrder> kWeight{0.08566224618958487, 0.18038078652406947, 0.23395696728634569,
                                             0.23395696728634569, 0.18038078652406947, 0.08566224618958487};

struct V3 {
  double x, y, z;
};

}  // namespace

double spherical_tetrahedron_volume(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  // Project from the normal of the vertices' affine hull: every vertex then
  // sits at the same height, which is positive for a hull facet.
  Vec4 ctr = cross_product_4d(b - a, c - a, d - a);
  if (!(norm(ctr) > 0.0)) ctr = cross_product_4d_exact(b - a, c - a, d - a);
  if (!(norm(ctr) > 0.0)) throw DegenerateGeometry("spherical_tetrahedron_volume: vertices are coplanar");
  ctr = normalized(ctr);
  if (dot(ctr, a) < 0.0) ctr = -ctr;
  // orthonormal basis of the tangent space at ctr
  std::array<Vec4, 3> basis;
  int filled = 0;
  for (int k = 0; k < 4 && filled < 3; ++k) {
    Vec4 e{};
    e[k] = 1.0;
    e -= dot(e, ctr) * ctr;
    for (int j = 0; j < filled; ++j) e -= dot(e, basis[j]) * basis[j];
    const double len = norm(e);
    if (len > 0.3) basis[filled++] = (1.0 / len) * e;
  }
  std::array<V3, 4> x;
  const std::array<const Vec4*, 4> v{&a, &b, &c, &d};
  for (int i = 0; i < 4; ++i) {
    const double h = dot(*v[i], ctr);
    if (!(h > 1e-6)) throw DegenerateGeometry("spherical_tetrahedron_volume: vertices not in one hemisphere");
    const Vec4 y = (1.0 / h) * *v[i];
    x[i] = {dot(y, basis[0]), dot(y, basis[1]), dot(y, basis[2])};
  }
  const V3 d1{x[1].x - x[0].x, x[1].y - x[0].y, x[1].z - x[0].z};
  const V3 d2{x[2].x - x[1].x, x[2].y - x[1].y, x[2].z - x[1].z};
  const V3 d3{x[3].x - x[2].x, x[3].y - x[2].y, x[3].z - x[2].z};
  // |det[x1-x0, x2-x0, x3-x0]| equals |det[d1, d2, d3]|
  const double det = std::abs(d1.x * (d2.y * d3.z - d2.z * d3.y) - d1.y * (d2.x * d3.z - d2.z * d3.x) +
                              d1.z * (d2.x * d3.y - d2.y * d3.x));
  // Collapsed cube: p = x0 + u (d1 + v (d2 + w d3)), Jacobian det u^2 v.
  double sum = 0.0;
  for (int i = 0; i < kOrder; ++i) {
    const double u = kNode[i];
    for (int j = 0; j < kOrder; ++j) {
      const double vv = kNode[j];
      for (int k = 0; k < kOrder; ++k) {
        const double w = kNode[k];
        const double px = x[0].x + u * (d1.x + vv * (d2.x + w * d3.x));
        const double py = x[0].y + u * (d1.y + vv * (d2.y + w * d3.y));
        const double pz = x[0].z + u * (d1.z + vv * (d2.z + w * d3.z));
        const double r2 = 1.0 + px * px + py * py + pz * pz;
        sum += kWeight[i] * kWeight[j] * kWeight[k] * u * u * vv / (r2 * r2);
      }
    }
  }
  return det * sum;
}

}  // namespace so3cover
