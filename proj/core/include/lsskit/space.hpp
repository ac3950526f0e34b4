#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lsskit/family.hpp"

namespace lsskit {

/// Distance value of an extended integer metric; kInfDist means "infinite".
inline constexpr std::uint64_t kInfDist = ~std::uint64_t(0);

/// A metric on a finite set that may take the value infinity.
class InfMetric {
 public:
  InfMetric(GroundPtr ground, std::vector<std::vector<std::uint64_t>> dist);

  const GroundPtr& ground() const { return ground_; }
  std::uint64_t operator()(std::uint32_t x, std::uint32_t y) const {
    return dist_[x * ground_->size() + y];
  }

  /// Largest finite pairwise distance (0 when none exists off the diagonal).
  std::uint64_t max_finite() const;

  /// Diameter of a subset; kInfDist when two members sit at infinite distance.
  std::uint64_t diameter(const Subset& a) const;

 private:
  GroundPtr ground_;
  std::vector<std::uint64_t> dist_;  // row-major
};

/// The cover of the ground set by closed balls of the given radius, one ball
/// per center in id order.
Scale ball_cover(const InfMetric& metric, std::uint64_t radius);

/// A large scale structure on a finite set, presented by generator scales and
/// normalized into its lattice of bounded sets.
///
/// The bounded sets are the least family that contains every one-point set
/// and every generator element and is closed under (a) nonempty subsets and
/// (b) unions of two overlapping members. Closure (a) restates the axiom that
/// covers dominated elementwise by a uniformly bounded cover are uniformly
/// bounded; closure (b) follows from star closure, since two overlapping
/// bounded sets lie in the star of either one against a common coarsening.
/// Only the antichain of inclusion-maximal bounded sets is stored; it is a
/// partition of the ground set, and a set is bounded exactly when it is
/// nonempty and contained in one block.
class LssSpace {
 public:
  LssSpace(GroundPtr ground, std::vector<Scale> generators);

  const GroundPtr& ground() const { return ground_; }
  const std::vector<Scale>& generators() const { return generators_; }

  /// The coarsest uniformly bounded scale: the inclusion-maximal bounded
  /// sets, pairwise disjoint, covering the ground set, ordered by smallest
  /// member id.
  const Scale& maximal_bounded() const { return maximal_bounded_; }

  std::uint32_t component_count() const { return static_cast<std::uint32_t>(maximal_bounded_.size()); }
  std::uint32_t component_of(std::uint32_t id) const { return component_of_[id]; }
  const Subset& component(std::uint32_t index) const { return maximal_bounded_.element(index); }

  /// Membership in the bounded-set lattice.
  bool is_bounded(const Subset& a) const;

 private:
  GroundPtr ground_;
  std::vector<Scale> generators_;
  Scale maximal_bounded_;
  std::vector<std::uint32_t> component_of_;
};

using SpacePtr = std::shared_ptr<const LssSpace>;

LssSpace build_lss(GroundPtr ground, std::vector<Scale> generators);
SpacePtr make_space(GroundPtr ground, std::vector<Scale> generators);

struct BoundednessReport {
  bool uniformly_bounded = false;
  /// On success: for each nonempty element, the index of a maximal bounded
  /// set containing it (one-point elements included); nullopt for empty
  /// elements, which are disregarded.
  std::vector<std::optional<std::uint32_t>> dominated_by;
  /// On failure: one element index with at least two points not contained in
  /// any maximal bounded set.
  std::optional<std::uint32_t> offender;
};

/// Whether the family is uniformly bounded in the space: every element with
/// two or more points sits inside one maximal bounded set.
BoundednessReport is_uniformly_bounded(const SetFamily& family, const LssSpace& space);

/// The subspace structure on a nonempty subset Y. Ground labels are inherited
/// in ascending id order. Generators are the singleton-completed traces of
/// the parent generators together with the singleton-completed trace of the
/// parent's maximal bounded scale, so a trace of any parent-bounded set stays
/// bounded in the subspace.
LssSpace subspace(const LssSpace& space, const Subset& y);

/// Ids of `y` in subspace order; position = new id.
std::vector<std::uint32_t> subspace_id_map(const Subset& y);

/// The structure induced by an infinity-metric: generated by the covers by
/// closed n-balls for n = 1..D, with D the largest finite pairwise distance
/// (n = 1 when D = 0). Ball covers beyond D add no new bounded sets, since
/// every finite-diameter set already lies inside a D-ball.
LssSpace metric_lss(const InfMetric& metric);

}  // namespace lsskit
