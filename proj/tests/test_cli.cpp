#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "so3cover/bounds.hpp"
#include "so3cover/delaunay.hpp"
#include "so3cover/error.hpp"
#include "so3cover/qset_io.hpp"

using namespace so3cover;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> report(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos && line.find(' ') == std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "so3cover_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_text(const std::string& name, const std::string& body) {
  const fs::path p = temp_file(name);
  std::ofstream(p) << body;
  return p.string();
}

const char* kHeader =
    "#format=so3cover-qset/1\n#group=C1\n#points=8\n#rotations=4\n#content=basis\n#convention=hamilton wxyz\n";

}  // namespace

TEST(Cli, GenerateSixHundredCell) {
  const std::string path = temp_file("cell600.qset").string();
  const auto r = run({"generate", "--n", "120", "--group", "2I", "--restarts", "2", "--out", path});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto kv = report(r.out);
  EXPECT_EQ(kv["n"], "120");
  EXPECT_EQ(kv["rotations"], "60");
  EXPECT_EQ(kv["group"], "2I");
  EXPECT_NEAR(std::stod(kv["theta_deg"]), 22.238756, 1e-6);
  EXPECT_NEAR(std::stod(kv["alpha_max_deg"]), 44.477512, 2e-6);
  EXPECT_EQ(kv["gap_status"], "conjectured");
  EXPECT_EQ(kv["seed"], "1");
  EXPECT_NE(r.err.find("stage=random restart=0 theta_deg="), std::string::npos);
  EXPECT_NE(r.err.find("stage=refine restart=1 theta_deg="), std::string::npos);

  const auto m = run({"measure", "--in", path});
  ASSERT_EQ(m.code, cli::kExitOk) << m.err;
  kv = report(m.out);
  EXPECT_EQ(kv["simplices"], "600");
  EXPECT_NEAR(std::stod(kv["theta_deg"]), 22.238756, 1e-6);
}

TEST(Cli, QuietSuppressesProgress) {
  const auto r = run({"generate", "--n", "8", "--restarts", "1", "--quiet", "--threads", "1"});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.err.find("stage="), std::string::npos);
}

TEST(Cli, RoundTripPreservesRadius) {
  const std::string basis = temp_file("o_basis.qset").string();
  const std::string expanded = temp_file("o_expanded.qset").string();
  const auto a = run({"generate", "--n", "96", "--group", "O", "--restarts", "1", "--quiet", "--out", basis});
  const auto b = run({"generate", "--n", "96", "--group", "O", "--restarts", "1", "--quiet", "--expanded", "--out",
                      expanded});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  const double theta = std::stod(report(a.out)["theta_deg"]);
  const auto s1 = read_qset_file(basis);
  const auto s2 = read_qset_file(expanded);
  EXPECT_EQ(s1.n_points(), 96u);
  EXPECT_EQ(s2.n_points(), 96u);
  EXPECT_EQ(s1.group.name(), "O");
  EXPECT_NEAR(to_degrees(covering_radius(s1)), theta, 1e-6);
  EXPECT_NEAR(to_degrees(covering_radius(s1)), to_degrees(covering_radius(s2)), 1e-9);
  EXPECT_EQ(report(run({"measure", "--in", expanded}).out)["group"], "C1");
}

TEST(Cli, Bound) {
  const auto r = run({"bound", "--n", "1920"});
  ASSERT_EQ(r.code, 0);
  auto kv = report(r.out);
  EXPECT_EQ(kv["theta_star_deg"], "8.7291");
  EXPECT_EQ(kv["status"], "conjectured");
  EXPECT_EQ(run({"bound", "--n", "3"}).code, cli::kExitUsage);
}

TEST(Cli, Verify) {
  const auto r = run({"verify", "--group", "all"});
  ASSERT_EQ(r.code, 0);
  std::size_t lines = 0;
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);) {
    EXPECT_NE(l.find("result=pass"), std::string::npos) << l;
    ++lines;
  }
  EXPECT_EQ(lines, 12u);
  EXPECT_NE(run({"verify", "--group", "O"}).out.find("group=O order=24 expected=24"), std::string::npos);
  EXPECT_EQ(run({"verify", "--group", "Q8"}).code, cli::kExitUsage);
}

TEST(Cli, HistogramCsv) {
  const std::string in = temp_file("hist.qset").string();
  ASSERT_EQ(run({"generate", "--n", "120", "--group", "2I", "--restarts", "1", "--quiet", "--out", in}).code, 0);
  const auto r = run({"histogram", "--in", in, "--samples", "20000", "--bins", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "# so3cover-histogram v1");
  std::getline(csv, line);
  EXPECT_EQ(line, "bin_left_deg,count");
  std::uint64_t total = 0;
  int rows = 0;
  while (std::getline(csv, line) && line.find(',') != std::string::npos) {
    total += std::stoull(line.substr(line.find(',') + 1));
    ++rows;
  }
  EXPECT_EQ(rows, 10);
  EXPECT_EQ(total, 20000u);
  EXPECT_NE(r.out.find("samples=20000"), std::string::npos);

  const std::string out = temp_file("hist.csv").string();
  const auto f = run({"histogram", "--in", in, "--samples", "20000", "--bins", "10", "--out", out});
  ASSERT_EQ(f.code, 0);
  EXPECT_LE(std::stod(report(f.out)["max_deg"]), 44.477512 + 1e-6);
  EXPECT_TRUE(fs::exists(out));
}

TEST(Cli, Baseline) {
  const auto r = run({"baseline", "--n", "200", "--trials", "3", "--seed", "10"});
  ASSERT_EQ(r.code, 0);
  auto kv = report(r.out);
  EXPECT_EQ(kv["trials"], "3");
  EXPECT_GT(std::stod(kv["gap_percent"]), 50.0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--n", "abc"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"generate", "--n", "120", "--group", "XYZ"}).code, cli::kExitUsage);
  const auto bad_n = run({"generate", "--n", "7", "--group", "C1"});
  EXPECT_EQ(bad_n.code, cli::kExitUsage);
  EXPECT_NE(bad_n.err.find("8"), std::string::npos);
  EXPECT_EQ(run({"generate", "--n", "8", "--restarts", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"measure", "--in", "/nonexistent/file.qset"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, MalformedFilesReportLine) {
  struct Case {
    std::string body;
    std::string line;
  };
  const std::string rows = "1 0 0 0\n0 1 0 0\n0 0 1 0\n";
  const Case cases[] = {
      {std::string(kHeader) + rows + "0 0 0 x\n", "line 10"},
      {std::string(kHeader) + rows + "0 0 1\n", "line 10"},
      {std::string(kHeader) + "1 0 0 0\n0.5 0.5 0.5 0.6\n", "line 8"},
      {"#group=C1\n1 0 0 0\n", "line 2"},
      {std::string(kHeader) + rows, "line"},  // 3 rows for 8 points
      {"#format=so3cover-qset/9\n", "line 1"},
  };
  int i = 0;
  for (const auto& c : cases) {
    const std::string path = write_text("bad" + std::to_string(i++) + ".qset", c.body);
    const auto r = run({"measure", "--in", path});
    EXPECT_EQ(r.code, cli::kExitUsage) << c.body;
    EXPECT_NE(r.err.find(c.line), std::string::npos) << r.err;
  }
  std::istringstream ok(std::string(kHeader) + rows + "0 0 0 1\n");
  EXPECT_EQ(parse_qset(ok).rows.size(), 4u);
}

TEST(Cli, BinaryExitCodes) {
  const std::string exe = SO3COVER_CLI_PATH;
  EXPECT_EQ(WEXITSTATUS(std::system((exe + " bound --n 120 > /dev/null").c_str())), 0);
  EXPECT_EQ(WEXITSTATUS(std::system((exe + " generate --n 7 2> /dev/null").c_str())), 2);
  EXPECT_EQ(WEXITSTATUS(std::system((exe + " > /dev/null 2>&1").c_str())), 2);
}

TEST(Cli, ThreadsFromEnvironment) {
  ::setenv("SO3COVER_THREADS", "2", 1);
  const auto a = run({"histogram", "--in", write_text("env.qset", std::string(kHeader) + "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"),
                      "--samples", "70000", "--bins", "4"});
  ::unsetenv("SO3COVER_THREADS");
  const auto b = run({"histogram", "--in", write_text("env.qset", std::string(kHeader) + "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"),
                      "--samples", "70000", "--bins", "4", "--threads", "1"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  ::setenv("SO3COVER_THREADS", "zero", 1);
  EXPECT_EQ(run({"bound", "--n", "120"}).code, 0);
  ::unsetenv("SO3COVER_THREADS");
}
