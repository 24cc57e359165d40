#include "so3cover/qset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "so3cover/error.hpp"

namespace so3cover {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc() || r.ptr != last || !std::isfinite(v)) {
    throw ParseError(line, "not a finite number: '" + tok + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) {
    throw ParseError(line, "not a non-negative integer: '" + tok + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

QsetData parse_qset(std::istream& in) {
  QsetData d;
  bool have_format = false, have_group = false, have_points = false, have_content = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s[0] == '#') {
      const auto eq = s.find('=');
      if (eq == std::string::npos) continue;  // free comment
      const std::string key = trim(s.substr(1, eq - 1));
      const std::string val = trim(s.substr(eq + 1));
      if (key == "format") {
        if (val != kQsetFormat) throw ParseError(line, "unsupported format '" + val + "'");
        have_format = true;
      } else if (key == "group") {
        d.group = val;
        have_group = true;
      } else if (key == "points") {
        d.points = parse_count(val, line);
        have_points = true;
      } else if (key == "rotations") {
        d.rotations = parse_count(val, line);
      } else if (key == "content") {
        if (val != "basis" && val != "expanded") throw ParseError(line, "content must be basis or expanded");
        d.expanded = val == "expanded";
        have_content = true;
      } else if (key == "theta_deg") {
        d.theta_deg = parse_number(val, line);
      }
      continue;
    }
    if (!have_format) throw ParseError(line, "data row before #format header");
    std::istringstream fields(s);
    std::string tok;
    double c[4];
    int k = 0;
    while (fields >> tok) {
      if (k == 4) throw ParseError(line, "expected 4 fields (w x y z), found more");
      c[k++] = parse_number(tok, line);
    }
    if (k != 4) throw ParseError(line, "expected 4 fields (w x y z), found " + std::to_string(k));
    const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
    if (std::abs(n - 1.0) > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "quaternion is not unit norm (|q| = " << n << ")";
      throw ParseError(line, os.str());
    }
    d.rows.push_back(Quaternion::from_components(c[0], c[1], c[2], c[3]).canonical());
  }
  if (!have_format) throw ParseError(line, "missing #format header");
  if (!have_group) throw ParseError(line, "missing #group header");
  if (!have_points) throw ParseError(line, "missing #points header");
  if (!have_content) throw ParseError(line, "missing #content header");
  if (d.rows.empty()) throw ParseError(line, "no quaternion rows");
  if (d.rotations != 0 && 2 * d.rotations != d.points) {
    throw ParseError(line, "#rotations must be half of #points");
  }
  std::size_t order = 0;
  try {
    order = expected_group_order(d.group);
  } catch (const InvalidArgument& e) {
    throw ParseError(line, e.what());
  }
  const std::size_t expect = d.expanded ? 2 * d.rows.size() : 2 * d.rows.size() * order;
  if (expect != d.points) {
    throw ParseError(line, "#points=" + std::to_string(d.points) + " inconsistent with " +
                               std::to_string(d.rows.size()) + " rows and group " + d.group + " (expected " +
                               std::to_string(expect) + ")");
  }
  return d;
}

OrientationSet to_orientation_set(const QsetData& d) {
  OrientationSet set = expand_orbit(d.rows, laue_group(d.expanded ? "C1" : d.group));
  if (d.theta_deg) set.covering_radius = *d.theta_deg * std::acos(-1.0) / 180.0;
  return set;
}

OrientationSet read_qset(std::istream& in) { return to_orientation_set(parse_qset(in)); }

OrientationSet read_qset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return read_qset(in);
}

void write_qset(std::ostream& out, const OrientationSet& set, bool expanded) {
  out << "#format=" << kQsetFormat << '\n';
  out << "#group=" << (expanded ? std::string("C1") : set.group.name()) << '\n';
  out << "#points=" << set.n_points() << '\n';
  out << "#rotations=" << set.n_rotations() << '\n';
  out << "#content=" << (expanded ? "expanded" : "basis") << '\n';
  if (set.covering_radius) out << "#theta_deg=" << format_double(*set.covering_radius * 180.0 / std::acos(-1.0)) << '\n';
  out << "#convention=hamilton wxyz\n";
  auto row = [&](const Vec4& q) {
    const Vec4 c = canonical_sign(q);
    out << format_double(c[0]) << ' ' << format_double(c[1]) << ' ' << format_double(c[2]) << ' '
        << format_double(c[3]) << '\n';
  };
  if (expanded) {
    for (std::size_t i = 0; i < set.points.size(); i += 2) row(set.points[i]);
  } else {
    for (const auto& b : set.basis) row(b.vec());
  }
}

void write_qset_file(const std::string& path, const OrientationSet& set, bool expanded) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  write_qset(out, set, expanded);
  if (!out) throw Error("write failed for '" + path + "'");
}

void write_histogram_csv(std::ostream& out, const ErrorHistogram& h) {
  out << "# so3cover-histogram v1\n";
  out << "bin_left_deg,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << format_double(h.bin_edges_deg[i], 10) << ',' << h.counts[i] << '\n';
  }
  out << "max_deg=" << format_double(h.max_deg, 10) << " mean_deg=" << format_double(h.mean_deg, 10)
      << " samples=" << h.samples << '\n';
}

}  // namespace so3cover
