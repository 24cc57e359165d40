#include "so3cover/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "so3cover/error.hpp"

namespace so3cover {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// Below this circumradius the closed form loses digits to cancellation and
// the Euclidean tetrahedron is accurate to O(theta^2).
constexpr double kEuclideanCutoff = 0.1 * kPi / 180.0;

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

double euclidean_tet_volume(double theta) {
  const double a = theta * std::sqrt(8.0 / 3.0);
  return a * a * a / (6.0 * std::numbers::sqrt2);
}

}  // namespace

double to_degrees(double rad) { return rad * 180.0 / kPi; }
double to_radians(double deg) { return deg * kPi / 180.0; }

double cap_volume(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    std::ostringstream os;
    os << "cap_volume: theta=" << theta << " outside [0, pi]";
    throw InvalidArgument(os.str());
  }
  if (theta < 1e-3) {
    // series of 2t - sin 2t avoids cancellation
    const double t2 = theta * theta;
    return kPi * (4.0 / 3.0) * theta * t2 * (1.0 - t2 / 5.0 + 2.0 * t2 * t2 / 105.0);
  }
  return kPi * (2.0 * theta - std::sin(2.0 * theta));
}

double edge_length(double theta) {
  const double c = std::cos(theta);
  return std::acos(clamp1((4.0 * c * c - 1.0) / 3.0));
}

double dihedral_angle(double theta) {
  const double c2 = std::cos(theta) * std::cos(theta);
  return std::acos(clamp1((4.0 * c2 - 1.0) / (8.0 * c2 + 1.0)));
}

double solid_angle(double theta) { return 3.0 * dihedral_angle(theta) - kPi; }

RegularTetrahedronGeometry regular_tetrahedron(double theta) {
  if (!(theta > 0.0 && theta < kPi / 2.0)) {
    std::ostringstream os;
    os << "regular_tetrahedron: theta=" << theta << " outside (0, pi/2)";
    throw InvalidArgument(os.str());
  }
  using C = std::complex<double>;
  RegularTetrahedronGeometry g;
  g.theta = theta;
  g.edge = edge_length(theta);
  const double psi = dihedral_angle(theta);
  g.dihedral = psi;
  g.solid = 3.0 * psi - kPi;

  const auto cis = [](double a) { return std::polar(1.0, a); };
  g.q = 3.0 * cis(-2.0 * psi) + 4.0 * cis(-3.0 * psi) + cis(-6.0 * psi);
  const double cp = std::cos(psi), sp = std::sin(psi);
  const double root = std::sqrt(std::max(0.0, (cp + 1.0) * (cp + 1.0) * (cp + 1.0) * (1.0 - 3.0 * cp)));
  g.z0 = C(-6.0 * sp * sp + 2.0 * root) / g.q;
  g.l = 0.5 * (dilog(g.z0) + 3.0 * dilog(g.z0 * cis(-4.0 * psi)) - 4.0 * dilog(-g.z0 * cis(-3.0 * psi)) -
               3.0 * psi * psi);

  if (theta < kEuclideanCutoff) {
    g.volume = euclidean_tet_volume(theta);
    return g;
  }
  const double raw = -g.l.real() + kPi * (std::arg(-g.q) + 3.0 * psi) - 1.5 * kPi2;
  double v = std::fmod(raw, 2.0 * kPi2);
  if (v < 0.0) v += 2.0 * kPi2;
  if (!(v > 0.0 && v < 2.0 * kPi2)) {
    std::ostringstream os;
    os.precision(17);
    os << "regular_tetrahedron: volume branch selection failed at theta=" << theta << " (raw " << raw
       << ", psi " << psi << ")";
    throw NumericalError(os.str());
  }
  g.volume = v;
  return g;
}

double covering_density(double n, double theta) { return n * cap_volume(theta) / kSphereArea; }

double simplex_bound_density(double theta) {
  const auto g = regular_tetrahedron(theta);
  return 4.0 * cap_volume(theta) * (g.solid / (4.0 * kPi)) / g.volume;
}

double simplex_bound_points(double theta) {
  if (theta >= kPi / 2.0) return 4.0;  // degenerate tetrahedron: a hemisphere with solid angle 2 pi
  const auto g = regular_tetrahedron(theta);
  return 2.0 * kPi * g.solid / g.volume;
}

double lower_bound_radius(double n) {
  if (!(n >= 5.0)) throw InvalidArgument("lower_bound_radius: n must be at least 5");
  double lo = to_radians(0.001), hi = to_radians(90.0);
  if (!(simplex_bound_points(lo) > n)) throw NumericalError("lower_bound_radius: n too large for bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (simplex_bound_points(mid) > n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  if (std::abs(simplex_bound_points(t) - n) > 1e-6 * n) {
    std::ostringstream os;
    os << "lower_bound_radius: residual too large at n=" << n;
    throw NumericalError(os.str());
  }
  return t;
}

double optimality_gap(double n, double theta) { return 100.0 * (theta / lower_bound_radius(n) - 1.0); }

CoveringReport make_report(std::size_t n, double theta) {
  CoveringReport r;
  r.n = n;
  r.theta_deg = to_degrees(theta);
  const double ts = lower_bound_radius(static_cast<double>(n));
  r.theta_star_deg = to_degrees(ts);
  r.gap_percent = 100.0 * (theta / ts - 1.0);
  r.density = covering_density(static_cast<double>(n), theta);
  return r;
}

}  // namespace so3cover
