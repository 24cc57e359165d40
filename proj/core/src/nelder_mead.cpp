#include "so3cover/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace so3cover {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  fv[0] = eval(simplex[0]);
  for (std::size_t i = 0; i < n; ++i) {
    simplex[i + 1][i] += opt.initial_step;
    fv[i + 1] = eval(simplex[i + 1]);
  }

  std::vector<std::size_t> idx(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto combine = [&](double t, const std::vector<double>& towards, std::vector<double>& out) {
    // centroid + t (towards - centroid)
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (towards[j] - centroid[j]);
  };

  while (res.evaluations < opt.max_evaluations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];
    if (std::isfinite(fv[worst]) && fv[worst] - fv[best] <= opt.f_tolerance) {
      res.converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[idx[i]][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    combine(-opt.reflection, simplex[worst], xr);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      combine(-opt.reflection * opt.expansion, simplex[worst], xe);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    // contraction: outside if the reflected point beats the worst, inside otherwise
    if (fr < fv[worst]) {
      combine(-opt.reflection * opt.contraction, simplex[worst], xc);
    } else {
      combine(opt.contraction, simplex[worst], xc);
    }
    const double fc = eval(xc);
    if (fc < std::min(fr, fv[worst])) {
      simplex[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      auto& x = simplex[idx[i]];
      for (std::size_t j = 0; j < n; ++j) x[j] = simplex[best][j] + opt.shrink * (x[j] - simplex[best][j]);
      fv[idx[i]] = eval(x);
    }
  }
  const auto it = std::min_element(fv.begin(), fv.end());
  res.value = *it;
  res.x = simplex[static_cast<std::size_t>(it - fv.begin())];
  return res;
}

}  // namespace so3cover
