#pragma once

// Text formats: orientation sets (.qset) and error histograms (.csv).
//
// .qset layout:
//   #format=so3cover-qset/1
//   #group=<label>
//   #points=<n on S^3>
//   #rotations=<n / 2>
//   #content=basis|expanded
//   #theta_deg=<value>            (optional)
//   #convention=hamilton wxyz
//   w x y z                       (one unit quaternion per line, w >= 0, 17 digits)
// A basis file lists the basis and is expanded under the group on load; an
// expanded file lists one quaternion per rotation.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "so3cover/evaluate.hpp"
#include "so3cover/symmetry.hpp"

namespace so3cover {

inline constexpr const char* kQsetFormat = "so3cover-qset/1";

struct QsetData {
  std::string group = "C1";
  std::size_t points = 0;
  std::size_t rotations = 0;
  bool expanded = false;
  std::optional<double> theta_deg;
  std::vector<Quaternion> rows;
};

/// Throws ParseError (with line number) for malformed headers, non-numeric or
/// non-unit rows (|norm - 1| > 1e-12) and inconsistent counts.
QsetData parse_qset(std::istream& in);

/// Expands parsed data into a set; an expanded file is treated as a C1 basis.
OrientationSet to_orientation_set(const QsetData& data);

OrientationSet read_qset(std::istream& in);
OrientationSet read_qset_file(const std::string& path);

void write_qset(std::ostream& out, const OrientationSet& set, bool expanded = false);
void write_qset_file(const std::string& path, const OrientationSet& set, bool expanded = false);

void write_histogram_csv(std::ostream& out, const ErrorHistogram& h);

/// Shortest decimal text with 17 significant digits.
std::string format_double(double v, int digits = 17);

}  // namespace so3cover
