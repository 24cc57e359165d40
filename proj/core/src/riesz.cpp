#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "so3cover/error.hpp"
#include "so3cover/optimize.hpp"

namespace so3cover {
namespace {

constexpr double kCoincident = 1e-12;

// Representative expanded point of each basis point (element 0, the identity)
// and the number of expanded points in its orbit.
struct OrbitInfo {
  std::vector<std::size_t> rep;
  std::vector<std::int8_t> sign;
  std::vector<double> multiplicity;
};

OrbitInfo orbit_info(const OrientationSet& set) {
  OrbitInfo info;
  const std::size_t nb = set.basis.size();
  info.rep.assign(nb, std::numeric_limits<std::size_t>::max());
  info.sign.assign(nb, 1);
  info.multiplicity.assign(nb, 0.0);
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    const auto& o = set.origins[i];
    info.multiplicity[o.basis] += 1.0;
    if (o.element == 0 && info.rep[o.basis] == std::numeric_limits<std::size_t>::max()) {
      info.rep[o.basis] = i;
      info.sign[o.basis] = o.sign;
    }
  }
  for (std::size_t k = 0; k < nb; ++k) {
    if (info.rep[k] == std::numeric_limits<std::size_t>::max()) {
      // the basis point itself was merged with an image of an earlier one
      throw DegenerateGeometry("riesz_energy: basis point " + std::to_string(k) + " duplicates another orbit");
    }
  }
  return info;
}

}  // namespace

void validate(const PipelineConfig& c) {
  if (!(c.s >= 0.0)) throw InvalidArgument("pipeline config: s must be >= 0");
  if (!(c.cg_tolerance >= 0.0)) throw InvalidArgument("pipeline config: cg_tolerance must be >= 0");
  if (c.restarts == 0) throw InvalidArgument("pipeline config: restarts must be >= 1");
}

RieszEvaluation riesz_energy(const OrientationSet& set, double s) {
  if (!(s >= 0.0)) throw InvalidArgument("riesz_energy: s must be >= 0");
  if (set.points.size() < 2) throw InvalidArgument("riesz_energy: at least 2 points required");
  const OrbitInfo info = orbit_info(set);
  const std::size_t n = set.points.size();
  RieszEvaluation out;
  out.gradient.resize(set.basis.size());
  const bool log_energy = s == 0.0;
  const bool square = s == 2.0;
  for (std::size_t k = 0; k < set.basis.size(); ++k) {
    const Vec4& p = set.points[info.rep[k]];
    double e = 0.0;
    Vec4 g{};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == info.rep[k]) continue;
      const Vec4 d = p - set.points[j];
      const double d2 = dot(d, d);
      if (d2 < kCoincident * kCoincident) {
        std::ostringstream os;
        os << "riesz_energy: points " << info.rep[k] << " and " << j << " coincide (infinite energy)";
        throw DegenerateGeometry(os.str());
      }
      double coef;  // dE/dp = coef * d, before the factor 2 for ordered pairs
      if (log_energy) {
        e -= 0.5 * std::log(d2);
        coef = -1.0 / d2;
      } else if (square) {
        const double inv = 1.0 / d2;
        e += inv;
        coef = -2.0 * inv * inv;
      } else {
        const double ps = std::pow(d2, -0.5 * s);
        e += ps;
        coef = -s * ps / d2;
      }
      g += coef * d;
    }
    const double m = info.multiplicity[k];
    out.energy += m * e;
    // p = sign * b, and dE/db = m * sign * dE/dp by equivariance of the orbit
    Vec4 gb = (2.0 * m * info.sign[k]) * g;
    const Vec4& b = set.basis[k].vec();
    gb -= dot(gb, b) * b;
    out.gradient[k] = gb;
  }
  return out;
}

RieszResult minimize_riesz(std::span<const Quaternion> basis0, const QuaternionGroup& group,
                           const PipelineConfig& config) {
  validate(config);
  RieszResult res;
  std::vector<Quaternion> x(basis0.begin(), basis0.end());
  auto evaluate = [&](const std::vector<Quaternion>& b) { return riesz_energy(expand_orbit(b, group), config.s); };
  auto gnorm2 = [](const std::vector<Vec4>& g) {
    double acc = 0.0;
    for (const auto& v : g) acc += dot(v, v);
    return acc;
  };

  RieszEvaluation cur = evaluate(x);
  res.initial_energy = cur.energy;
  const double g0 = std::sqrt(gnorm2(cur.gradient));
  std::vector<Vec4> dir(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) dir[k] = -cur.gradient[k];

  // Typical nearest-neighbour angle; bounds the step of a single point.
  const double npts = std::max<double>(8.0, 2.0 * static_cast<double>(x.size() * group.order()));
  const double spacing = std::cbrt(2.0 * 9.869604401089358 / npts);
  double alpha = -1.0;

  std::vector<Quaternion> trial(x.size());
  while (res.iterations < config.cg_max_iters) {
    const double gn = std::sqrt(gnorm2(cur.gradient));
    if (gn <= config.cg_tolerance * g0 || gn < 1e-300) {
      res.converged = true;
      break;
    }
    double slope = 0.0, dmax = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      slope += dot(cur.gradient[k], dir[k]);
      dmax = std::max(dmax, norm(dir[k]));
    }
    if (!(slope < 0.0)) {
      for (std::size_t k = 0; k < x.size(); ++k) dir[k] = -cur.gradient[k];
      slope = -gn * gn;
      dmax = 0.0;
      for (const auto& d : dir) dmax = std::max(dmax, norm(d));
    }
    const double alpha_cap = spacing / dmax;
    alpha = alpha < 0.0 ? 0.1 * alpha_cap : std::min(2.0 * alpha, alpha_cap);

    bool accepted = false;
    RieszEvaluation next;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t k = 0; k < x.size(); ++k) trial[k] = Quaternion::from_vec(x[k].vec() + alpha * dir[k]);
      try {
        next = evaluate(trial);
      } catch (const DegenerateGeometry&) {
        alpha *= 0.5;
        continue;
      }
      if (next.energy <= cur.energy + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      res.line_search_failed = true;
      break;
    }
    ++res.iterations;

    // Polak-Ribiere with nonnegative beta; old vectors transported by projection.
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const Vec4& b = trial[k].vec();
      Vec4 gold = cur.gradient[k];
      gold -= dot(gold, b) * b;
      num += dot(next.gradient[k], next.gradient[k] - gold);
      den += dot(cur.gradient[k], cur.gradient[k]);
    }
    const double beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const Vec4& b = trial[k].vec();
      Vec4 d = dir[k];
      d -= dot(d, b) * b;
      dir[k] = -next.gradient[k] + beta * d;
    }
    x = trial;
    cur = std::move(next);
  }
  res.final_energy = cur.energy;
  res.basis = std::move(x);
  return res;
}

}  // namespace so3cover
