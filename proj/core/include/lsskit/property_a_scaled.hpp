#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lsskit/nets.hpp"
#include "lsskit/property_a.hpp"

namespace lsskit {

/// Witness for property A with the elements of a base scale playing the role
/// of points. Each A_U is a finite set of (base index, level) pairs; supports
/// are measured by horizons of stars, and the ratio condition fires for base
/// pairs whose horizons against the queried scale intersect.
struct ScaledPropertyAWitness {
  Scale base;
  Rational epsilon;
  Scale queried;        ///< must not be the cover by one-point sets
  Scale horizon_scale;  ///< the W of the support condition
  /// sets[i] is A_{U_i}, sorted, unique, levels >= 1, entries are base indices.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sets;
};

struct ScaledWitnessReport {
  bool ok = false;
  std::vector<WitnessViolation> violations;  ///< x, y are base indices here
  std::size_t pairs_checked = 0;
  std::optional<Rational> max_ratio;
};

/// Checks the three conditions with exact rational comparisons. Requires the
/// base, queried and horizon scales to be uniformly bounded and the queried
/// scale to not be the cover by one-point sets.
ScaledWitnessReport verify_scaled_witness(const LssSpace& space,
                                          const ScaledPropertyAWitness& witness);

/// Over the singleton base, base indices are point ids and the two notions of
/// witness coincide: two points have intersecting horizons against a scale
/// exactly when they share one of its elements, which is the plain trigger,
/// and the horizon support condition is the plain star support condition.
/// The reduction therefore sets the plain test scale to the queried scale and
/// the plain support scale to the horizon scale.
PropertyAWitness reduce_trivial_base(const ScaledPropertyAWitness& witness);

/// Inverse embedding of a plain witness over the singleton base.
ScaledPropertyAWitness lift_trivial_base(const PropertyAWitness& witness);

struct ScaledPairMeasurement {
  std::uint32_t i = 0, j = 0;          ///< a tested base pair on the source
  std::size_t a_sym_diff = 0;          ///< |A_i Δ A_j|
  std::size_t a_intersection = 0;      ///< |A_i ∩ A_j|
  std::size_t b_max_sym_diff = 0;      ///< max |B_k Δ B_l| over the chosen pairs
  std::size_t b_min_intersection = 0;  ///< min |B_k ∩ B_l| over the chosen pairs
};

struct ScaledTransfer {
  ScaledPropertyAWitness witness;
  std::size_t cover_m = 0;  ///< max cover count of pushed base elements by the target base
  std::size_t cover_n = 0;  ///< max cover count of pulled target base elements by the source base
  Rational budget;          ///< epsilon / (2 m^2 (n+1))
  ScaledWitnessReport recheck;
  std::vector<ScaledPairMeasurement> counting;  ///< per tested pair, for the logged bounds
};

/// The queried scale the target witness must carry for a transfer along f
/// with the given source queried and base scales: the stars of pushed-forward
/// queried elements against the pushed-forward base, trivially extended.
Scale transfer_queried_scale(const SpaceMap& f, const Scale& queried_x, const Scale& base_x);

/// Transfers a scaled witness backward along a coarse equivalence.
///
/// Covers are fixed once: for every source base element, the lexicographically
/// smallest minimum cover of its image by the target base; for every target
/// base element, the lexicographically smallest minimum cover of its preimage
/// by the source base. A_{U} then contains (U, 1) together with every
/// (U', level) such that U' lies in the chosen cover of the preimage of some
/// target element appearing at that level in the B-sets of the chosen cover
/// of f(U); realizing candidates through the chosen preimage covers is what
/// makes the intersection bookkeeping of the budget argument come out.
///
/// The result is re-verified at epsilon rather than trusted, and the raw
/// counting quantities are reported so the budget constants can be examined.
ScaledTransfer transfer_scaled_witness(const SpaceMap& f, const ScaledPropertyAWitness& target,
                                       const Scale& base_x, const Scale& queried_x,
                                       const Rational& epsilon, const OracleLimits& limits = {});

}  // namespace lsskit
