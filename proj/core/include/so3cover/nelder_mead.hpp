#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace so3cover {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double initial_step = 0.1;  ///< offset of the initial simplex vertices along each axis
  std::size_t max_evaluations = 200;
  double f_tolerance = 1e-15;  ///< stop when best and worst values agree this closely
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free minimization of f from x0. f may return +inf to reject a point.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace so3cover
