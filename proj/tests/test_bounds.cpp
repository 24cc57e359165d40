#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "so3cover/bounds.hpp"
#include "so3cover/error.hpp"

using namespace so3cover;
using std::numbers::pi;

namespace {

// Simpson integration of the shell area 4 pi sin^2 r.
double cap_by_shells(double theta) {
  const int n = 2000;
  const double h = theta / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * 4.0 * pi * std::sin(i * h) * std::sin(i * h);
  }
  return s * h / 3.0;
}

double angle(const Vec4& a, const Vec4& b) { return std::acos(std::clamp(dot(a, b), -1.0, 1.0)); }

// Dihedral angle along edge ab between faces abc and abd, measured in the
// plane orthogonal to span(a, b).
double dihedral_from_vertices(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  const Vec4 e1 = a;
  Vec4 e2 = b - dot(b, e1) * e1;
  e2 = normalized(e2);
  auto reject = [&](Vec4 v) {
    v -= dot(v, e1) * e1;
    v -= dot(v, e2) * e2;
    return normalized(v);
  };
  return angle(reject(c), reject(d));
}

}  // namespace

TEST(Bounds, CapVolume) {
  EXPECT_NEAR(cap_volume(pi), kSphereArea, 1e-12);
  EXPECT_EQ(cap_volume(0.0), 0.0);
  for (double t : {0.01, 0.3, 1.0, 2.0, 3.0}) EXPECT_NEAR(cap_volume(t), cap_by_shells(t), 1e-9);
  EXPECT_THROW(cap_volume(-0.1), InvalidArgument);
  EXPECT_THROW(cap_volume(4.0), InvalidArgument);
}

TEST(Bounds, TetrahedronAnglesMatchConstructedVertices) {
  for (double deg : {1.0, 10.0, 22.0, 45.0, 60.0, 80.0}) {
    const double t = to_radians(deg);
    const auto v = oracle::regular_tetrahedron(t);
    EXPECT_NEAR(edge_length(t), angle(v[0], v[1]), 1e-12) << deg;
    EXPECT_NEAR(dihedral_angle(t), dihedral_from_vertices(v[0], v[1], v[2], v[3]), 1e-10) << deg;
    EXPECT_NEAR(solid_angle(t), 3.0 * dihedral_angle(t) - pi, 1e-14);
  }
}

TEST(Bounds, SolidAngleIdentities) {
  EXPECT_NEAR(solid_angle(pi / 3.0), pi / 2.0, 1e-12);
  EXPECT_NEAR(solid_angle(1e-4), std::acos(23.0 / 27.0), 1e-6);
  EXPECT_NEAR(dihedral_angle(pi / 3.0), pi / 2.0, 1e-12);
}

TEST(Dilog, SpecialValues) {
  EXPECT_NEAR(dilog(0.0).real(), 0.0, 1e-15);
  EXPECT_NEAR(dilog(1.0).real(), pi * pi / 6.0, 1e-12);
  EXPECT_NEAR(dilog(-1.0).real(), static_cast<double>(oracle::dilog_minus_one()), 1e-12);
  EXPECT_NEAR(dilog(-1.0).imag(), 0.0, 1e-15);
  EXPECT_NEAR(dilog(0.5).real(), pi * pi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0), 1e-13);
}

TEST(Dilog, MatchesSeriesInsideDisc) {
  oracle::ld r = 0.05L;
  for (int i = 0; i < 40; ++i) {
    const oracle::ld ang = 0.37L * i;
    const std::complex<oracle::ld> z = std::polar(r, ang);
    const auto ref = oracle::dilog_series(z);
    const auto lib = dilog(std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag())));
    EXPECT_NEAR(lib.real(), static_cast<double>(ref.real()), 1e-13);
    EXPECT_NEAR(lib.imag(), static_cast<double>(ref.imag()), 1e-13);
    r += 0.02L;
  }
}

TEST(Dilog, ReflectionOutsideDisc) {
  // Li2(z) + Li2(1/z) = -pi^2/6 - log(-z)^2 / 2 away from the cut
  for (double a : {0.5, 1.0, 2.0, 2.8, -2.5}) {
    const std::complex<double> z = std::polar(2.5, a);
    const auto lhs = dilog(z) + dilog(1.0 / z);
    const auto rhs = -pi * pi / 6.0 - 0.5 * std::pow(std::log(-z), 2.0);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12) << a;
  }
}

TEST(Bounds, VolumeIdentities) {
  EXPECT_NEAR(regular_tet_volume(pi / 3.0), pi * pi / 8.0, 1e-9);
  EXPECT_NEAR(regular_tet_volume(to_radians(22.2388)), 2.0 * pi * pi / 600.0, 1e-6);
}

TEST(Bounds, VolumeMatchesQuadratureOracles) {
  for (double deg : {5.0, 17.0, 33.0, 52.0, 75.0}) {
    const double t = to_radians(deg);
    const double lib = regular_tet_volume(t);
    EXPECT_NEAR(lib, static_cast<double>(oracle::regular_tet_volume_schlafli(t)), 1e-6) << deg;
    const auto v = oracle::regular_tetrahedron(t);
    EXPECT_NEAR(lib, static_cast<double>(oracle::spherical_tet_volume(v[0], v[1], v[2], v[3])), 1e-6) << deg;
  }
}

TEST(Bounds, SmallRadiusBranchIsContinuous) {
  // flat tetrahedron limit: V ~ (8 / (9 sqrt 3)) theta^3
  for (double t : {1e-5, 1e-4, to_radians(0.099), to_radians(0.101)}) {
    const double flat = 8.0 / (9.0 * std::sqrt(3.0)) * t * t * t;
    EXPECT_NEAR(regular_tet_volume(t) / flat, 1.0, 1e-5) << t;
  }
  EXPECT_THROW(regular_tetrahedron(0.0), InvalidArgument);
  EXPECT_THROW(regular_tetrahedron(pi / 2.0), InvalidArgument);
}

TEST(Bounds, TightAtRegularPolytopes) {
  EXPECT_NEAR(simplex_bound_points(pi / 3.0), 8.0, 1e-9);
  EXPECT_NEAR(to_degrees(lower_bound_radius(8)), 60.0, 1e-6);
  EXPECT_NEAR(to_degrees(lower_bound_radius(120)), 22.2387561, 1e-6);
}

TEST(Bounds, LowerBoundTable) {
  // N and theta* (degrees) as tabulated, two decimals
  const std::pair<int, double> table[] = {
      {8, 60.00},     {120, 22.24},   {1920, 8.73},   {3960, 6.85},   {6000, 5.96},   {7920, 5.44},
      {9960, 5.04},   {12000, 4.73},  {13920, 4.50},  {15960, 4.30},  {18000, 4.13},  {19920, 4.00},
      {24000, 3.76},  {27960, 3.57},  {31920, 3.41},  {36000, 3.28},  {39960, 3.17},  {43920, 3.07},
      {48000, 2.98},  {60000, 2.77},  {79920, 2.51},  {99960, 2.33},  {139920, 2.09}, {180000, 1.92}};
  for (const auto& [n, deg] : table) EXPECT_NEAR(to_degrees(lower_bound_radius(n)), deg, 0.01) << n;
}

TEST(Bounds, LowerBoundMonotone) {
  double prev = lower_bound_radius(8);
  for (double n = 16; n < 1e6; n *= 1.7) {
    const double t = lower_bound_radius(n);
    EXPECT_LT(t, prev);
    EXPECT_NEAR(simplex_bound_points(t), n, 1e-6 * n);
    prev = t;
  }
  EXPECT_THROW(lower_bound_radius(4), InvalidArgument);
}

TEST(Bounds, DensityAndGap) {
  EXPECT_NEAR(covering_density(120, lower_bound_radius(120)), simplex_bound_density(lower_bound_radius(120)), 1e-9);
  EXPECT_GT(simplex_bound_density(0.1), 1.0);
  EXPECT_NEAR(optimality_gap(1920, to_radians(9.05)), 100.0 * (9.05 / to_degrees(lower_bound_radius(1920)) - 1.0),
              1e-9);
  const auto r = make_report(120, to_radians(22.2387561));
  EXPECT_EQ(r.n, 120u);
  EXPECT_NEAR(r.gap_percent, 0.0, 1e-5);
  EXPECT_NEAR(r.theta_deg, 22.2387561, 1e-9);
}
