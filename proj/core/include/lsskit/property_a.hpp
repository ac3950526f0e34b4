#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lsskit/maps.hpp"
#include "lsskit/rational.hpp"
#include "lsskit/space.hpp"

namespace lsskit {

/// Per-point finite sets A_x of (point id, level) pairs, together with the
/// data they are measured against: pairs within a common test-scale element
/// must have small symmetric difference relative to their intersection, and
/// every A_x must live inside the star of x against the support scale.
struct PropertyAWitness {
  Rational epsilon;
  Scale test_scale;
  Scale support_scale;
  /// sets[x] is A_x, sorted, unique, levels >= 1.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sets;
};

enum class WitnessViolationKind {
  Support,   ///< a pair of A_x falls outside st(x, support)
  Diagonal,  ///< (x, 1) missing from A_x
  Ratio,     ///< |A_x Δ A_y| < ε·|A_x ∩ A_y| fails for a tested pair
};

struct WitnessViolation {
  WitnessViolationKind kind;
  std::uint32_t x = 0;
  std::uint32_t y = 0;          // Ratio only
  std::size_t sym_diff = 0;     // Ratio only
  std::size_t intersection = 0; // Ratio only
};

struct WitnessReport {
  bool ok = false;
  std::vector<WitnessViolation> violations;
  std::size_t pairs_checked = 0;
  /// Largest |Δ|/|∩| over tested pairs with nonempty intersection.
  std::optional<Rational> max_ratio;
};

struct BoundedGeometryReport {
  bool bounded_geometry = false;
  std::size_t constant = 0;  ///< size of the largest maximal bounded set
};

/// Finite spaces always have bounded geometry; the sharp constant lets
/// fixture families chart growth.
BoundedGeometryReport has_bounded_geometry(const LssSpace& space);

/// Checks all three witness conditions with exact rational comparisons. The
/// ratio condition runs over every ordered pair (x, y) with y in the star of
/// x against the test scale; an empty intersection with a nonempty symmetric
/// difference fails the strict inequality automatically.
WitnessReport verify_witness(const LssSpace& space, const PropertyAWitness& witness);

struct WitnessSearchResult {
  std::optional<PropertyAWitness> witness;
  bool exhausted = false;  ///< search space exhausted; not a disproof
};

/// Exhaustive backtracking search for a witness with the given support scale
/// and level budget. Deterministic: per point, candidate sets are enumerated
/// smallest-first over the allowed (point, level) pairs. Exhaustion refutes
/// only this support/level budget, never the property itself.
WitnessSearchResult search_witness(const LssSpace& space, const Rational& epsilon,
                                   const Scale& test_scale, const Scale& support_scale,
                                   unsigned max_level, const OracleLimits& limits = {});

/// Per generator scale, a uniformly bounded coarsening of multiplicity at
/// most n + 1.
struct AsdimCertificate {
  std::size_t n = 0;
  std::vector<Scale> coarsenings;  // aligned with the space's generator list
};

struct AsdimResult {
  std::optional<AsdimCertificate> certificate;
  std::optional<std::size_t> failed_generator;
};

/// Searches for a certificate that the asymptotic dimension is at most n.
/// The coarsest uniformly bounded scale has multiplicity one and coarsens
/// every uniformly bounded cover, so on these finite presentations the
/// search always succeeds with that scale; the routine still validates the
/// refinement and multiplicity bounds it returns.
AsdimResult check_asdim_at_most(const LssSpace& space, std::size_t n);

/// Throws InvariantError when the certificate fails any of its conditions
/// (alignment, uniform boundedness, refinement, multiplicity).
void validate_asdim_certificate(const LssSpace& space, const AsdimCertificate& certificate);

struct AsdimWitnessConstruction {
  PropertyAWitness witness;
  unsigned tower_height = 0;   ///< the chosen star-tower height
  Rational ratio_bound;        ///< (4k + 6) / (tower_height - 1)
  Scale coarsening;            ///< the multiplicity-bounded coarsening used
};

/// Builds a candidate witness from a dimension certificate: picks the least
/// tower height n with (4k+6)/(n-1) < ε, coarsens the scale of point stars
/// against the n-fold star tower, and assembles each A_x from the chosen
/// representative of every coarsening element the growing star tower meets
/// but does not swallow. The result is returned unverified: on spaces whose
/// star towers stabilize early the constructed sets degenerate and fail the
/// ratio condition, so callers must run verify_witness.
AsdimWitnessConstruction construct_witness_asdim(const LssSpace& space,
                                                 const AsdimCertificate& certificate,
                                                 const Rational& epsilon, const Scale& test_scale);

struct WitnessTransfer {
  PropertyAWitness witness;
  std::size_t max_fiber = 0;   ///< N
  WitnessReport recheck;       ///< verification of the result at ε
};

/// Pulls a witness back along a coarse equivalence: A_x collects the pairs
/// (z, n) with (f(z), n) in B_{f(x)}. Requires the target witness to verify
/// at ε/N where N is the largest fiber of f. The returned witness is
/// re-verified at ε rather than trusted: when the target witness leans on
/// support points outside the image of f, the pulled-back intersections can
/// collapse, and the recheck reports exactly that.
WitnessTransfer transfer_witness(const SpaceMap& f, const PropertyAWitness& target_witness,
                                 const Rational& epsilon);

}  // namespace lsskit
