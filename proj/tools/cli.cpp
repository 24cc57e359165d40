#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>

#include "so3cover/bounds.hpp"
#include "so3cover/delaunay.hpp"
#include "so3cover/error.hpp"
#include "so3cover/evaluate.hpp"
#include "so3cover/optimize.hpp"
#include "so3cover/qset_io.hpp"
#include "so3cover/symmetry.hpp"

namespace so3cover::cli {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

unsigned thread_count(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SO3COVER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<unsigned>(v);
    throw InvalidArgument(std::string("SO3COVER_THREADS must be a non-negative integer, got '") + env + "'");
  }
  return 0;
}

void print_report(std::ostream& out, const CoveringReport& r, const std::string& group) {
  out << "n=" << r.n << '\n';
  out << "rotations=" << r.n / 2 << '\n';
  out << "group=" << group << '\n';
  out << "theta_deg=" << fixed(r.theta_deg, 6) << '\n';
  out << "alpha_max_deg=" << fixed(2.0 * r.theta_deg, 6) << '\n';
  out << "theta_star_deg=" << fixed(r.theta_star_deg, 6) << '\n';
  out << "gap_percent=" << fixed(r.gap_percent, 4) << '\n';
  out << "gap_status=conjectured\n";
  out << "density=" << fixed(r.density, 6) << '\n';
}

struct Options {
  // generate
  std::size_t n = 0;
  std::string group = "C1";
  PipelineConfig config;
  std::string out_path;
  bool expanded = false;
  // measure / histogram
  std::string in_path;
  std::uint64_t samples = 1000000;
  std::size_t bins = 100;
  std::uint64_t seed = 1;
  // baseline
  std::size_t trials = 20;
  std::optional<unsigned> threads;
  bool quiet = false;
};

int cmd_generate(Options& o, std::ostream& out, std::ostream& err) {
  const QuaternionGroup group = laue_group(o.group);
  o.config.threads = thread_count(o.threads);
  basis_size_for(o.n, group);  // usage error before any work
  std::mutex mu;
  ProgressSink sink;
  if (!o.quiet) {
    sink = [&](const StageRecord& r) {
      std::lock_guard<std::mutex> lock(mu);
      err << "stage=" << r.stage << " restart=" << r.restart << " theta_deg=" << fixed(r.theta_deg, 6)
          << std::endl;
    };
  }
  GenerateResult res;
  try {
    res = generate(o.n, group, o.config, sink);
  } catch (const InvalidArgument&) {
    throw;
  } catch (const Error& e) {
    err << "error: pipeline failed: " << e.what() << '\n';
    return kExitPipeline;
  }
  if (!o.out_path.empty()) write_qset_file(o.out_path, res.set, o.expanded);
  print_report(out, res.report, group.name());
  out << "best_restart=" << res.best_restart << '\n';
  out << "seed=" << o.config.seed << '\n';
  for (const auto& w : res.set.warnings) err << "warning: " << w << '\n';
  return kExitOk;
}

int cmd_measure(const Options& o, std::ostream& out, std::ostream&) {
  const QsetData data = [&] {
    std::ifstream in(o.in_path);
    if (!in) throw InvalidArgument("cannot open '" + o.in_path + "'");
    return parse_qset(in);
  }();
  const OrientationSet set = to_orientation_set(data);
  const TriangulationS3 tri = triangulate(set.points);
  print_report(out, make_report(set.n_points(), tri.covering_radius), data.group);
  out << "simplices=" << tri.simplices.size() << '\n';
  return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out, std::ostream&) {
  if (o.n < 5) throw InvalidArgument("bound: --n must be at least 5");
  const double ts = lower_bound_radius(static_cast<double>(o.n));
  out << "n=" << o.n << '\n';
  out << "theta_star_deg=" << fixed(to_degrees(ts), 4) << '\n';
  out << "density=" << fixed(simplex_bound_density(ts), 6) << '\n';
  out << "status=conjectured\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  std::vector<std::string> names;
  if (o.group == "all") {
    for (auto n : group_names()) names.emplace_back(n);
  } else {
    laue_group(o.group);  // rejects unknown labels
    names.push_back(o.group);
  }
  bool all = true;
  for (const auto& name : names) {
    const GroupReport r = verify_group(laue_group(name));
    out << "group=" << r.name << " order=" << r.order << " expected=" << r.expected_order
        << " identity=" << (r.has_identity ? "yes" : "no") << " closed=" << (r.closed ? "yes" : "no")
        << " result=" << (r.passed() ? "pass" : "fail") << '\n';
    for (const auto& v : r.violations) out << "violation=" << v << '\n';
    all = all && r.passed();
  }
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_histogram(const Options& o, std::ostream& out, std::ostream&) {
  const OrientationSet set = read_qset_file(o.in_path);
  const ErrorHistogram h = error_histogram(set, o.samples, o.bins, o.seed, thread_count(o.threads));
  if (o.out_path.empty()) {
    write_histogram_csv(out, h);
    return kExitOk;
  }
  std::ofstream f(o.out_path);
  if (!f) throw InvalidArgument("cannot write '" + o.out_path + "'");
  write_histogram_csv(f, h);
  out << "max_deg=" << fixed(h.max_deg, 6) << '\n';
  out << "mean_deg=" << fixed(h.mean_deg, 6) << '\n';
  out << "samples=" << h.samples << '\n';
  out << "bins=" << h.counts.size() << '\n';
  return kExitOk;
}

int cmd_baseline(const Options& o, std::ostream& out, std::ostream&) {
  const double theta = random_baseline(o.n, o.trials, o.seed, thread_count(o.threads));
  const CoveringReport r = make_report(o.n, theta);
  out << "n=" << o.n << '\n';
  out << "trials=" << o.trials << '\n';
  out << "mean_theta_deg=" << fixed(r.theta_deg, 6) << '\n';
  out << "theta_star_deg=" << fixed(r.theta_star_deg, 6) << '\n';
  out << "gap_percent=" << fixed(r.gap_percent, 4) << '\n';
  out << "gap_status=conjectured\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covering-radius optimized orientation sets on SO(3)", "so3cover"};
  app.require_subcommand(1);
  Options o;

  auto add_threads = [&](CLI::App* c) {
    c->add_option("--threads", o.threads, "worker threads, 0 = auto (fallback: SO3COVER_THREADS)");
  };

  auto* gen = app.add_subcommand("generate", "optimize a set of n points (2 per rotation)");
  gen->add_option("--n", o.n, "points on S^3, a multiple of 2|G|")->required();
  gen->add_option("--group", o.group, "symmetry group label")->capture_default_str();
  gen->add_option("--restarts", o.config.restarts)->capture_default_str();
  gen->add_option("--seed", o.config.seed)->capture_default_str();
  gen->add_option("--out", o.out_path, "write the set as .qset");
  gen->add_flag("--expanded", o.expanded, "write every rotation instead of the basis");
  gen->add_option("--s", o.config.s, "Riesz exponent")->capture_default_str();
  gen->add_option("--cg-tolerance", o.config.cg_tolerance)->capture_default_str();
  gen->add_option("--cg-max-iters", o.config.cg_max_iters)->capture_default_str();
  gen->add_option("--odt-iterations", o.config.odt_iterations)->capture_default_str();
  gen->add_option("--refine-passes", o.config.refine_passes)->capture_default_str();
  gen->add_flag("--quiet", o.quiet, "suppress stage lines");
  add_threads(gen);

  auto* mea = app.add_subcommand("measure", "covering radius and gap of a .qset file");
  mea->add_option("--in", o.in_path)->required();

  auto* bnd = app.add_subcommand("bound", "simplex lower bound for n points");
  bnd->add_option("--n", o.n)->required();

  auto* ver = app.add_subcommand("verify", "check a symmetry group table");
  ver->add_option("--group", o.group, "group label or 'all'")->required();

  auto* his = app.add_subcommand("histogram", "nearest-neighbour misorientation histogram");
  his->add_option("--in", o.in_path)->required();
  his->add_option("--samples", o.samples)->capture_default_str();
  his->add_option("--bins", o.bins)->capture_default_str();
  his->add_option("--seed", o.seed)->capture_default_str();
  his->add_option("--out", o.out_path, "CSV path (stdout if omitted)");
  add_threads(his);

  auto* base = app.add_subcommand("baseline", "mean covering radius of random sets");
  base->add_option("--n", o.n, "points on S^3 (2 per rotation)")->required();
  base->add_option("--trials", o.trials)->capture_default_str();
  base->add_option("--seed", o.seed)->capture_default_str();
  add_threads(base);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("so3cover");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(o, out, err);
    if (*mea) return cmd_measure(o, out, err);
    if (*bnd) return cmd_bound(o, out, err);
    if (*ver) return cmd_verify(o, out, err);
    if (*his) return cmd_histogram(o, out, err);
    if (*base) return cmd_baseline(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitPipeline;
  }
  return kExitUsage;
}

}  // namespace so3cover::cli
