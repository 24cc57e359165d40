#include <algorithm>
#include <atomic>
#include <cstdio>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "so3cover/error.hpp"
#include "so3cover/optimize.hpp"

namespace so3cover {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

ProgressSink stderr_progress() {
  auto mutex = std::make_shared<std::mutex>();
  return [mutex](const StageRecord& r) {
    std::lock_guard<std::mutex> lock(*mutex);
    std::fprintf(stderr, "stage=%s restart=%zu theta_deg=%.6f\n", r.stage.c_str(), r.restart, r.theta_deg);
    std::fflush(stderr);
  };
}

std::size_t basis_size_for(std::size_t n, const QuaternionGroup& group) {
  const std::size_t step = 2 * group.order();
  // at least 8 points, otherwise the set cannot span R^4
  const std::size_t min_n = ((8 + step - 1) / step) * step;
  if (n >= min_n && n % step == 0) return n / step;
  std::size_t suggest = std::max(min_n, ((n + step / 2) / step) * step);
  std::ostringstream os;
  os << "n=" << n << " is not achievable with group " << group.name() << ": n must be a multiple of " << step
     << " (2 points per rotation times " << group.order() << " symmetry rotations) and at least " << min_n
     << "; nearest valid n=" << suggest;
  throw InvalidArgument(os.str());
}

namespace {

struct RestartOutcome {
  std::vector<Quaternion> basis;
  double theta = 0.0;
  std::vector<StageRecord> trace;
  std::string error;
};

RestartOutcome run_restart(std::size_t restart, std::size_t basis_size, const QuaternionGroup& group,
                           const PipelineConfig& config, const ProgressSink& progress) {
  RestartOutcome out;
  auto record = [&](const char* stage, double theta) {
    StageRecord r{restart, stage, to_degrees(theta)};
    out.trace.push_back(r);
    if (progress) progress(r);
  };
  Rng rng = make_rng(config.seed, restart);
  std::vector<Quaternion> basis(basis_size);
  for (auto& b : basis) b = random_quaternion(rng);
  double theta = covering_radius(expand_orbit(basis, group));
  record("random", theta);

  RieszResult rz = minimize_riesz(basis, group, config);
  const double theta_rz = covering_radius(expand_orbit(rz.basis, group));
  // a stage never hands on a worse set than it received
  if (theta_rz <= theta) {
    basis = std::move(rz.basis);
    theta = theta_rz;
  }
  record("riesz", theta);

  SmoothResult sm = odt_smooth(basis, group, config.odt_iterations);
  basis = std::move(sm.basis);
  theta = sm.theta;
  record("odt", theta);

  RefineResult rf = local_refine(basis, group, config.refine_passes);
  basis = std::move(rf.basis);
  theta = rf.theta;
  record("refine", theta);

  out.basis = std::move(basis);
  out.theta = theta;
  return out;
}

}  // namespace

GenerateResult generate(std::size_t n, const QuaternionGroup& group, const PipelineConfig& config,
                        const ProgressSink& progress) {
  validate(config);
  const std::size_t basis_size = basis_size_for(n, group);
  std::vector<RestartOutcome> outcomes(config.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < config.restarts; k = next++) {
      try {
        outcomes[k] = run_restart(k, basis_size, group, config, progress);
      } catch (const std::exception& e) {
        outcomes[k].error = e.what();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(config.threads), config.restarts));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  GenerateResult res;
  bool found = false;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    res.trace.insert(res.trace.end(), outcomes[k].trace.begin(), outcomes[k].trace.end());
    if (!outcomes[k].error.empty()) continue;
    if (!found || outcomes[k].theta < outcomes[res.best_restart].theta) {
      res.best_restart = k;
      found = true;
    }
  }
  if (!found) throw NumericalError("generate: every restart failed; first error: " + outcomes[0].error);
  const RestartOutcome& best = outcomes[res.best_restart];
  res.set = expand_orbit(best.basis, group);
  res.set.covering_radius = best.theta;
  res.report = make_report(res.set.n_points(), best.theta);
  return res;
}

}  // namespace so3cover
