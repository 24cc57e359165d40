#include "so3cover/symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "so3cover/error.hpp"

namespace so3cover {
namespace {

constexpr std::array<std::string_view, 12> kNames{"C1", "C2", "C3", "C4", "C6", "D2",
                                                   "D3", "D4", "D6", "T",  "O",  "2I"};

bool same_up_to_sign(const Vec4& a, const Vec4& b) {
  double dm = 0.0, dp = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    dm = std::max(dm, std::abs(a[i] - b[i]));
    dp = std::max(dp, std::abs(a[i] + b[i]));
  }
  return std::min(dm, dp) < kDedupTolerance;
}

struct TableRow {
  Vec4 q;
  const char* members;  // labels of the groups containing this element
};

// Subsets of O: each row lists the groups whose generator table has a check mark.
const std::vector<TableRow>& cubic_table() {
  static const std::vector<TableRow> rows = [] {
    const double h = std::numbers::sqrt2 / 2.0;
    return std::vector<TableRow>{
        {{1, 0, 0, 0}, "O T D4 D2 C4 C2 C1"},
        {{0, 0, 0, 1}, "O T D4 D2 C4 C2"},
        {{0, 1, 0, 0}, "O T D4 D2"},
        {{0, 0, 1, 0}, "O T D4 D2"},
        {{h, 0, 0, h}, "O D4 C4"},
        {{h, 0, 0, -h}, "O D4 C4"},
        {{0, h, h, 0}, "O D4"},
        {{0, -h, h, 0}, "O D4"},
        {{0.5, 0.5, -0.5, 0.5}, "O T"},
        {{0.5, 0.5, 0.5, -0.5}, "O T"},
        {{0.5, 0.5, -0.5, -0.5}, "O T"},
        {{0.5, -0.5, -0.5, -0.5}, "O T"},
        {{0.5, -0.5, 0.5, 0.5}, "O T"},
        {{0.5, -0.5, 0.5, -0.5}, "O T"},
        {{0.5, -0.5, -0.5, 0.5}, "O T"},
        {{0.5, 0.5, 0.5, 0.5}, "O T"},
        {{h, h, 0, 0}, "O"},
        {{h, -h, 0, 0}, "O"},
        {{h, 0, h, 0}, "O"},
        {{h, 0, -h, 0}, "O"},
        {{0, h, 0, h}, "O"},
        {{0, -h, 0, h}, "O"},
        {{0, 0, h, h}, "O"},
        {{0, 0, -h, h}, "O"},
    };
  }();
  return rows;
}

// Subsets of D6.
const std::vector<TableRow>& hexagonal_table() {
  static const std::vector<TableRow> rows = [] {
    const double r = std::sqrt(3.0) / 2.0;
    return std::vector<TableRow>{
        {{1, 0, 0, 0}, "D6 D3 C6 C3 C1"},
        {{0.5, 0, 0, r}, "D6 D3 C6 C3"},
        {{0.5, 0, 0, -r}, "D6 D3 C6 C3"},
        {{0, 0, 0, 1}, "D6 C6"},
        {{r, 0, 0, 0.5}, "D6 C6"},
        {{r, 0, 0, -0.5}, "D6 C6"},
        {{0, 1, 0, 0}, "D6 D3"},
        {{0, -0.5, r, 0}, "D6 D3"},
        {{0, 0.5, r, 0}, "D6 D3"},
        {{0, r, 0.5, 0}, "D6"},
        {{0, -r, 0.5, 0}, "D6"},
        {{0, 0, 1, 0}, "D6"},
    };
  }();
  return rows;
}

bool row_has(const TableRow& row, std::string_view label) {
  std::istringstream in(row.members);
  std::string tok;
  while (in >> tok) {
    if (tok == label) return true;
  }
  return false;
}

std::vector<Quaternion> from_table(const std::vector<TableRow>& table, std::string_view label) {
  std::vector<Quaternion> out;
  for (const auto& row : table) {
    if (row_has(row, label)) out.push_back(Quaternion::from_vec(row.q).canonical());
  }
  return out;
}

std::vector<Quaternion> binary_icosahedral() {
  const double phi = std::numbers::phi;
  const std::array<Quaternion, 2> gens{
      Quaternion::from_components(0.5, 0.5, 0.5, 0.5),
      Quaternion::from_components(phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0)};
  return group_closure(gens, 200);
}

std::string names_list() {
  std::string s;
  for (auto n : kNames) {
    if (!s.empty()) s += ", ";
    s += n;
  }
  return s;
}

std::string format_quat(const Vec4& q) {
  std::ostringstream os;
  os.precision(6);
  os << "{" << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << "}";
  return os.str();
}

bool lex_less(const Vec4& a, const Vec4& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(a[i] - b[i]) > kDedupTolerance) return a[i] < b[i];
  }
  return false;
}

}  // namespace

QuaternionGroup::QuaternionGroup(std::string name, std::vector<Quaternion> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidArgument("QuaternionGroup: empty element list");
}

std::optional<std::size_t> QuaternionGroup::find(const Quaternion& q) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (same_up_to_sign(elements_[i].vec(), q.vec())) return i;
  }
  return std::nullopt;
}

std::span<const std::string_view> group_names() { return kNames; }

std::size_t expected_group_order(std::string_view name) {
  if (name == "C1") return 1;
  if (name == "C2") return 2;
  if (name == "C3") return 3;
  if (name == "C4" || name == "D2") return 4;
  if (name == "C6" || name == "D3") return 6;
  if (name == "D4") return 8;
  if (name == "D6" || name == "T") return 12;
  if (name == "O") return 24;
  if (name == "2I") return 60;
  throw InvalidArgument("unknown group '" + std::string(name) + "'; valid names: " + names_list());
}

QuaternionGroup laue_group(std::string_view name) {
  expected_group_order(name);  // validates the label
  std::vector<Quaternion> elements;
  if (name == "2I") {
    elements = binary_icosahedral();
  } else if (name == "C3" || name == "C6" || name == "D3" || name == "D6") {
    elements = from_table(hexagonal_table(), name);
  } else {
    elements = from_table(cubic_table(), name);
  }
  // identity first, so element 0 is always the identity
  auto it = std::find_if(elements.begin(), elements.end(),
                         [](const Quaternion& q) { return same_up_to_sign(q.vec(), Vec4{1, 0, 0, 0}); });
  if (it != elements.end()) std::rotate(elements.begin(), it, it + 1);
  return QuaternionGroup(std::string(name), std::move(elements));
}

std::vector<Quaternion> group_closure(std::span<const Quaternion> generators, std::size_t max_order) {
  std::vector<Quaternion> elems{Quaternion::identity()};
  auto known = [&](const Quaternion& q) {
    return std::any_of(elems.begin(), elems.end(),
                       [&](const Quaternion& e) { return same_up_to_sign(e.vec(), q.vec()); });
  };
  for (const auto& g : generators) {
    if (!known(g)) elems.push_back(g.canonical());
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (const auto& prod : {elems[i] * elems[j], elems[j] * elems[i]}) {
        if (!known(prod)) {
          elems.push_back(prod.canonical());
          if (elems.size() > max_order) {
            throw NumericalError("group_closure: generators do not close within " +
                                 std::to_string(max_order) + " elements");
          }
        }
      }
    }
  }
  return elems;
}

GroupReport verify_group(const QuaternionGroup& group) {
  GroupReport rep;
  rep.name = group.name();
  rep.order = group.order();
  try {
    rep.expected_order = expected_group_order(group.name());
  } catch (const InvalidArgument&) {
    rep.expected_order = 0;
  }
  rep.has_identity = group.contains(Quaternion::identity());
  if (!rep.has_identity) rep.violations.push_back("identity {1, 0, 0, 0} is missing");

  rep.closed = true;
  const auto els = group.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = 0; j < els.size(); ++j) {
      const Quaternion prod = els[i] * els[j];
      if (!group.contains(prod)) {
        rep.closed = false;
        rep.violations.push_back("closure: product of elements " + std::to_string(i) + " and " + std::to_string(j) +
                                 " = " + format_quat(prod.canonical().vec()) + " is not in the group");
      }
    }
  }
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = i + 1; j < els.size(); ++j) {
      if (same_up_to_sign(els[i].vec(), els[j].vec())) {
        rep.violations.push_back("duplicate elements " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  if (rep.expected_order == 0) {
    rep.violations.push_back("unknown group label '" + group.name() + "'");
  } else if (rep.order != rep.expected_order) {
    rep.violations.push_back("cardinality " + std::to_string(rep.order) + " differs from expected " +
                             std::to_string(rep.expected_order));
  }
  return rep;
}

bool is_subset(const QuaternionGroup& sub, const QuaternionGroup& super) {
  return std::all_of(sub.elements().begin(), sub.elements().end(),
                     [&](const Quaternion& q) { return super.contains(q); });
}

OrientationSet expand_orbit(std::span<const Quaternion> basis, const QuaternionGroup& group) {
  if (basis.empty()) throw InvalidArgument("expand_orbit: basis must not be empty");

  struct Candidate {
    Vec4 q;
    PointOrigin origin;
    double key;
  };
  // Sweep direction for duplicate detection; generic to avoid ties on symmetric sets.
  const Vec4 sweep = normalized(Vec4{0.5377, 0.3244, 0.7120, 0.3196});

  std::vector<Candidate> cand;
  cand.reserve(basis.size() * group.order());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    for (std::size_t g = 0; g < group.order(); ++g) {
      const Vec4 raw = normalized(hamilton(basis[b].vec(), group.elements()[g].vec()));
      const Vec4 can = canonical_sign(raw);
      const std::int8_t sign = (can == raw) ? 1 : -1;
      cand.push_back({can, {static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(g), sign},
                      std::abs(dot(can, sweep))});
    }
  }

  std::vector<std::size_t> order(cand.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cand[a].key < cand[b].key; });

  // A candidate is dropped if an earlier-generated candidate equals it up to sign.
  std::vector<char> dropped(cand.size(), 0);
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t ia = order[a];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const std::size_t ib = order[b];
      if (cand[ib].key - cand[ia].key > 4.0 * kDedupTolerance) break;
      if (same_up_to_sign(cand[ia].q, cand[ib].q)) dropped[std::max(ia, ib)] = 1;
    }
  }

  OrientationSet set;
  set.basis.assign(basis.begin(), basis.end());
  set.group = group;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (dropped[i]) continue;
    set.points.push_back(cand[i].q);
    set.origins.push_back(cand[i].origin);
    set.points.push_back(-cand[i].q);
    PointOrigin neg = cand[i].origin;
    neg.sign = static_cast<std::int8_t>(-neg.sign);
    set.origins.push_back(neg);
  }
  const std::size_t expected = 2 * basis.size() * group.order();
  if (set.points.size() != expected) {
    set.warnings.push_back("expand_orbit: " + std::to_string(set.points.size()) + " points instead of " +
                           std::to_string(expected) + "; some basis points lie in the same orbit");
  }
  return set;
}

std::vector<Quaternion> coset_representatives(const QuaternionGroup& super, const QuaternionGroup& sub) {
  std::vector<Quaternion> elems(super.elements().begin(), super.elements().end());
  for (auto& e : elems) e = e.canonical();
  std::sort(elems.begin(), elems.end(), [](const Quaternion& a, const Quaternion& b) { return lex_less(a.vec(), b.vec()); });

  std::vector<char> assigned(elems.size(), 0);
  std::vector<Quaternion> reps;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (assigned[i]) continue;
    reps.push_back(elems[i]);
    for (const auto& h : sub.elements()) {
      const Quaternion m = elems[i] * h;
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (!assigned[j] && same_up_to_sign(elems[j].vec(), m.vec())) assigned[j] = 1;
      }
    }
  }
  return reps;
}

OrientationSet rebase_to_subgroup(const OrientationSet& set, std::string_view subgroup) {
  const QuaternionGroup sub = laue_group(subgroup);
  if (!is_subset(sub, set.group)) {
    throw InvalidArgument("rebase_to_subgroup: " + std::string(subgroup) + " is not a subgroup of " +
                          set.group.name() +
                          "; subgroups of O are {C1, C2, C4, D2, D4, T}, subgroups of D6 are {C1, C3, C6, D3}");
  }
  const auto reps = coset_representatives(set.group, sub);
  std::vector<Quaternion> basis;
  basis.reserve(set.basis.size() * reps.size());
  for (const auto& b : set.basis) {
    for (const auto& r : reps) basis.push_back(b * r);
  }
  OrientationSet out = expand_orbit(basis, sub);
  out.covering_radius = set.covering_radius;
  return out;
}

}  // namespace so3cover
