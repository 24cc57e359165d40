#include <cmath>
#include <complex>
#include <numbers>

#include "so3cover/bounds.hpp"

namespace so3cover {
namespace {

using C = std::complex<double>;

// B_{2k} / (2k+1)!, k = 1..10
constexpr double kCoeff[10] = {
    1.0 / 36.0,
    -1.0 / 3600.0,
    1.0 / 211680.0,
    -1.0 / 10886400.0,
    (5.0 / 66.0) / 39916800.0,
    (-691.0 / 2730.0) / 6227020800.0,
    (7.0 / 6.0) / 1307674368000.0,
    (-3617.0 / 510.0) / 355687428096000.0,
    (43867.0 / 798.0) / 121645100408832000.0,
    (-174611.0 / 330.0) / 51090942171709440000.0,
};

// sum_n B_n u^{n+1} / (n+1)!
C bernoulli_series(C u) {
  const C u2 = u * u;
  C acc = kCoeff[9];
  for (int k = 8; k >= 0; --k) acc = kCoeff[k] + u2 * acc;
  return u + u2 * (-0.25 + u * acc);
}

}  // namespace

std::complex<double> dilog(std::complex<double> z) {
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  const double rz = z.real(), iz = z.imag();
  if (iz == 0.0) {
    if (rz == 0.0) return 0.0;
    if (rz == 1.0) return pi2_6;
  }
  const double nz = rz * rz + iz * iz;
  C u, rest = 0.0;
  double sgn = 1.0;
  if (rz <= 0.5) {
    if (nz > 1.0) {
      const C lz = std::log(-z);
      u = -std::log(1.0 - 1.0 / z);
      rest = -0.5 * lz * lz - pi2_6;
      sgn = -1.0;
    } else {
      u = -std::log(1.0 - z);
    }
  } else if (nz <= 2.0 * rz) {
    u = -std::log(z);
    rest = u * std::log(1.0 - z) + pi2_6;
    sgn = -1.0;
  } else {
    const C lz = std::log(-z);
    u = -std::log(1.0 - 1.0 / z);
    rest = -0.5 * lz * lz - pi2_6;
    sgn = -1.0;
  }
  return sgn * bernoulli_series(u) + rest;
}

}  // namespace so3cover
