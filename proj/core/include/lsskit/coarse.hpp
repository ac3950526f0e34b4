#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lsskit/property_a.hpp"
#include "lsskit/space.hpp"

namespace lsskit {

/// A set of ordered pairs over a ground set.
class Entourage {
 public:
  explicit Entourage(GroundPtr ground);
  Entourage(GroundPtr ground, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

  const GroundPtr& ground() const { return ground_; }

  bool test(std::uint32_t x, std::uint32_t y) const { return row(x).test(y); }
  void set(std::uint32_t x, std::uint32_t y) { rows_[x].set(y); }

  const Bitset& row(std::uint32_t x) const { return rows_[x]; }

  std::size_t pair_count() const;
  bool is_subset_of(const Entourage& o) const;
  bool operator==(const Entourage& o) const;
  bool operator!=(const Entourage& o) const { return !(*this == o); }

  Entourage inverse() const;
  /// {(x, z) : (x, y) here and (y, z) in `o` for some y}.
  Entourage compose(const Entourage& o) const;
  Entourage& operator|=(const Entourage& o);

  static Entourage diagonal(GroundPtr ground);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;

 private:
  GroundPtr ground_;
  std::vector<Bitset> rows_;
};

/// {(x, y) : x, y in some element of the family}.
Entourage squares_of(const SetFamily& family);

/// A coarse structure presented by generating entourages. On a finite set the
/// union axiom collapses the maximal controlled sets to a single maximum: the
/// closure of the generators and the diagonal under inverse, composition and
/// union, which is a reflexive symmetric transitive relation. A set is
/// controlled exactly when it is contained in that maximum.
class CoarseSpace {
 public:
  CoarseSpace(GroundPtr ground, std::vector<Entourage> generators);

  const GroundPtr& ground() const { return ground_; }
  const std::vector<Entourage>& generators() const { return generators_; }
  const Entourage& max_controlled() const { return max_controlled_; }

  bool is_controlled(const Entourage& e) const { return e.is_subset_of(max_controlled_); }

 private:
  GroundPtr ground_;
  std::vector<Entourage> generators_;
  Entourage max_controlled_;
};

CoarseSpace coarse_closure(GroundPtr ground, std::vector<Entourage> generators);

/// Entourage-side picture of a space: generated by the union of B x B over
/// the maximal bounded sets B.
CoarseSpace lss_to_coarse(const LssSpace& space);

/// Scale-side picture of a coarse space: bounded sets are the sets B with
/// B x B controlled; generated by the maximal such B (the classes of the
/// maximum controlled relation) plus one-point sets.
LssSpace coarse_to_lss(const CoarseSpace& cs);

struct LocalFinitenessReport {
  bool uniformly_locally_finite = false;
  std::size_t constant = 0;  ///< max over x of |T[x]| for the maximum controlled T
};

LocalFinitenessReport is_uniformly_locally_finite(const CoarseSpace& cs);

/// Witness in the entourage picture: triples (x, y, level) supported in a
/// controlled set S, with the diagonal at level one, and the ratio condition
/// for pairs in a controlled set T.
struct SakoWitness {
  Rational epsilon;
  Entourage test;     ///< T
  Entourage support;  ///< S
  std::vector<std::array<std::uint32_t, 3>> triples;  ///< (x, y, level), sorted, unique
};

struct SakoReport {
  bool ok = false;
  std::vector<WitnessViolation> violations;
  std::size_t pairs_checked = 0;
  std::optional<Rational> max_ratio;
};

SakoReport verify_sako_witness(const CoarseSpace& cs, const SakoWitness& witness);

/// Converts a verified star-side witness into the entourage picture over
/// lss_to_coarse of its space: T and S are the pair squares of the test and
/// support scales, and the triple set glues the slices together. Verification
/// is preserved at the same epsilon.
SakoWitness witness_lss_to_sako(const LssSpace& space, const PropertyAWitness& witness);

/// Converts a verified entourage-side witness back: the support scale is the
/// trivially extended family of slice supports V_x (controlled via the
/// composition of the support with its inverse, which is asserted), and the
/// test scale is the maximal square decomposition of T, trivially extended.
PropertyAWitness witness_sako_to_lss(const CoarseSpace& cs, const SakoWitness& witness);

}  // namespace lsskit
