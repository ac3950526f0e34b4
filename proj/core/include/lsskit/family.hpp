#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lsskit/bitset.hpp"
#include "lsskit/errors.hpp"

namespace lsskit {

/// A finite ground set. Element ids are 0-based positions into `labels`.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Id of a label, or nullopt when unknown.
  std::optional<std::uint32_t> find(const std::string& label) const;

  bool operator==(const GroundSet& o) const { return labels_ == o.labels_; }
  bool operator!=(const GroundSet& o) const { return !(*this == o); }

 private:
  std::vector<std::string> labels_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

GroundPtr make_ground(std::vector<std::string> labels);

/// True when both values live over the same ground set (same object or
/// equal label sequences).
bool same_ground(const GroundPtr& a, const GroundPtr& b);
void require_same_ground(const GroundPtr& a, const GroundPtr& b, const char* what);

/// A subset of a ground set, stored as a bitmask over element ids.
class Subset {
 public:
  Subset(GroundPtr ground, Bitset bits);
  Subset(GroundPtr ground, const std::vector<std::uint32_t>& ids);

  static Subset empty(GroundPtr ground);
  static Subset full(GroundPtr ground);
  static Subset single(GroundPtr ground, std::uint32_t id);

  const GroundPtr& ground() const { return ground_; }
  const Bitset& bits() const { return bits_; }

  bool contains(std::uint32_t id) const { return bits_.test(id); }
  std::size_t count() const { return bits_.count(); }
  bool is_empty() const { return bits_.none(); }

  std::vector<std::uint32_t> ids() const { return bits_.to_ids(); }
  std::vector<std::string> labels() const;

  bool operator==(const Subset& o) const;
  bool operator!=(const Subset& o) const { return !(*this == o); }

 private:
  GroundPtr ground_;
  Bitset bits_;
};

Subset set_union(const Subset& a, const Subset& b);
Subset set_intersection(const Subset& a, const Subset& b);
Subset set_difference(const Subset& a, const Subset& b);
bool is_subset(const Subset& a, const Subset& b);
bool intersects(const Subset& a, const Subset& b);

/// An indexed family of subsets. Families are immutable and keep duplicate
/// subsets: indices are the identity of an element, not the set it denotes.
class SetFamily {
 public:
  SetFamily(GroundPtr ground, std::vector<Subset> elements);

  const GroundPtr& ground() const { return ground_; }
  std::size_t size() const { return elements_.size(); }
  const Subset& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<Subset>& elements() const { return elements_; }

  /// Union of all elements.
  Subset support() const;

  bool operator==(const SetFamily& o) const;
  bool operator!=(const SetFamily& o) const { return !(*this == o); }

 private:
  GroundPtr ground_;
  std::vector<Subset> elements_;
};

/// A family that covers the ground set and has no empty elements.
class Scale : public SetFamily {
 public:
  explicit Scale(SetFamily family);
  Scale(GroundPtr ground, std::vector<Subset> elements);
};

/// The cover of the ground set by one-point sets, in id order.
Scale singleton_cover(const GroundPtr& ground);

/// Exact positional equality with singleton_cover: element i is {i}.
bool is_singleton_cover(const SetFamily& family);

/// Equality with the trivial cover as a multiset: one singleton per point and
/// nothing else. Families with duplicated singletons or extra elements are a
/// different presentation and do not count.
bool is_trivial_cover(const SetFamily& family);

/// Union of all family elements that meet `target`. The union over an empty
/// index set is the empty subset.
Subset star(const Subset& target, const SetFamily& family);

/// Element i of the result is star(inner.element(i), against).
SetFamily star_family(const SetFamily& inner, const SetFamily& against);

/// star(s, ...) of a one-point set {id}.
Subset point_star(std::uint32_t id, const SetFamily& family);

/// Tower of iterated stars: height 0 is `base` itself, and each next level
/// stars the base elements against the previous level. Element i of every
/// level corresponds to element i of the base.
Scale iterated_star(const Scale& base, unsigned n);

/// Indices of the family elements meeting `target`, ascending. Returned as
/// indices so duplicate subsets stay distinguishable.
std::vector<std::uint32_t> horizon(const Subset& target, const SetFamily& family);

struct RefinesResult {
  bool refines = false;
  /// On success, assignment[i] is a coarse index containing fine.element(i).
  std::vector<std::uint32_t> assignment;
  /// On failure, one fine index with no containing coarse element.
  std::uint32_t offender = 0;
};

/// Whether every element of `fine` is contained in some element of `coarse`.
RefinesResult refines(const SetFamily& fine, const SetFamily& coarse);

/// The input family with its empty elements dropped and all one-point sets
/// appended after the surviving elements. Always a scale.
Scale trivial_extension(const SetFamily& family);

/// Max over points of the number of family elements containing the point.
std::size_t multiplicity(const SetFamily& family);

}  // namespace lsskit
