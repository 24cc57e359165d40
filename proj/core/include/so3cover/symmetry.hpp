#pragma once

// Finite binary quaternion groups for the Laue classes and orbit expansion of
// basis sets under them.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "so3cover/quaternion.hpp"

namespace so3cover {

/// Finite rotation group stored modulo sign: one canonical (w > 0)
/// representative per rotation. The antipodal half is implicit.
class QuaternionGroup {
 public:
  QuaternionGroup(std::string name, std::vector<Quaternion> elements);

  const std::string& name() const { return name_; }
  std::span<const Quaternion> elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }

  /// Index of the element equal to q up to sign, if any.
  std::optional<std::size_t> find(const Quaternion& q) const;
  bool contains(const Quaternion& q) const { return find(q).has_value(); }

 private:
  std::string name_;
  std::vector<Quaternion> elements_;
};

/// Labels accepted by laue_group: C1 C2 C3 C4 C6 D2 D3 D4 D6 T O 2I.
std::span<const std::string_view> group_names();

/// Number of rotations the named group must contain (24 for O, 60 for 2I, ...).
std::size_t expected_group_order(std::string_view name);

/// Group by label. Throws InvalidArgument listing valid names for unknown labels.
QuaternionGroup laue_group(std::string_view name);

/// Closure of a generator set under multiplication, modulo sign.
/// Throws NumericalError if the closure exceeds max_order (not a finite group).
std::vector<Quaternion> group_closure(std::span<const Quaternion> generators, std::size_t max_order = 1000);

struct GroupReport {
  std::string name;
  std::size_t order = 0;
  std::size_t expected_order = 0;
  bool has_identity = false;
  bool closed = false;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// Checks identity membership, closure under multiplication modulo sign and
/// the expected cardinality. Never throws; findings go into the report.
GroupReport verify_group(const QuaternionGroup& group);

/// True if every element of sub appears (up to sign) in super.
bool is_subset(const QuaternionGroup& sub, const QuaternionGroup& super);

/// Which basis point and group element produced an expanded point, and with
/// which sign: point = sign * (basis[basis] * group[element]).
struct PointOrigin {
  std::uint32_t basis = 0;
  std::uint32_t element = 0;
  std::int8_t sign = 1;
};

/// Basis set B, group G and the antipodally closed expansion
/// P = {+-b*g : b in B, g in G}.
struct OrientationSet {
  std::vector<Quaternion> basis;
  QuaternionGroup group{"C1", {Quaternion::identity()}};
  std::vector<Vec4> points;
  std::vector<PointOrigin> origins;
  std::vector<std::string> warnings;
  std::optional<double> covering_radius;  ///< radians, when measured

  /// Points on S^3 (antipodes counted separately).
  std::size_t n_points() const { return points.size(); }
  /// Distinct rotations (= n_points / 2).
  std::size_t n_rotations() const { return points.size() / 2; }
};

/// Two unit quaternions are considered equal (up to sign) within this
/// component-wise tolerance.
inline constexpr double kDedupTolerance = 1e-9;

/// Expands basis under group, adds antipodes and removes duplicates. Points
/// come in pairs: points[2k] has canonical sign and points[2k+1] = -points[2k].
/// Basis points related by a group element share an orbit and yield fewer than 2|B||G| points; this is
/// reported in warnings, not thrown.
OrientationSet expand_orbit(std::span<const Quaternion> basis, const QuaternionGroup& group);

/// Left coset representatives of sub in super, one per coset, each the
/// lexicographically smallest canonical element of its coset.
std::vector<Quaternion> coset_representatives(const QuaternionGroup& super, const QuaternionGroup& sub);

/// Re-expresses set with a smaller symmetry group: basis becomes
/// {b * r : r coset representative}; the expanded point set is unchanged.
/// Throws InvalidArgument if subgroup is not contained in set.group.
OrientationSet rebase_to_subgroup(const OrientationSet& set, std::string_view subgroup);

}  // namespace so3cover
