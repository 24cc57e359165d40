#pragma once

// Simplex-bound machinery on S^3. All angles are radians unless a name ends
// in _deg.

#include <complex>
#include <cstddef>

namespace so3cover {

/// Surface area of S^3.
inline constexpr double kSphereArea = 2.0 * 9.869604401089358;  // 2 pi^2

/// Volume of a spherical cap of angular radius theta on S^3, pi (2 theta - sin 2 theta).
/// Throws InvalidArgument outside [0, pi].
double cap_volume(double theta);

/// Edge arc of the regular spherical tetrahedron with circumradius theta.
double edge_length(double theta);

/// Dihedral angle psi of the regular spherical tetrahedron with circumradius theta.
double dihedral_angle(double theta);

/// Vertex solid angle, 3 psi - pi.
double solid_angle(double theta);

/// Principal branch of the dilogarithm Li2(z).
std::complex<double> dilog(std::complex<double> z);

struct RegularTetrahedronGeometry {
  double theta = 0.0;
  double edge = 0.0;
  double dihedral = 0.0;
  double solid = 0.0;
  std::complex<double> q;
  std::complex<double> z0;
  std::complex<double> l;
  double volume = 0.0;
};

/// Full Murakami-type evaluation for the regular tetrahedron of circumradius theta.
/// Valid for theta in (0, pi/2); throws NumericalError if the reduced volume
/// falls outside (0, 2 pi^2).
RegularTetrahedronGeometry regular_tetrahedron(double theta);

inline double regular_tet_volume(double theta) { return regular_tetrahedron(theta).volume; }

/// N C3(theta) / (2 pi^2).
double covering_density(double n, double theta);

/// Density of a cover by regular simplices of circumradius theta.
double simplex_bound_density(double theta);

/// Number of points a regular-simplex tessellation of radius theta would need.
double simplex_bound_points(double theta);

/// theta* solving simplex_bound_points(theta*) = n. Requires n >= 5.
double lower_bound_radius(double n);

/// 100 (theta / theta_star - 1).
double optimality_gap(double n, double theta);

struct CoveringReport {
  std::size_t n = 0;         ///< points on S^3 (antipodes counted)
  double theta_deg = 0.0;
  double theta_star_deg = 0.0;
  double gap_percent = 0.0;  ///< conjectured: the bound itself is unproven on S^3
  double density = 0.0;
};

CoveringReport make_report(std::size_t n, double theta);

double to_degrees(double rad);
double to_radians(double deg);

}  // namespace so3cover
