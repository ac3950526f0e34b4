#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lsskit/space.hpp"

namespace lsskit {

/// A total function between the ground sets of two spaces.
struct SpaceMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<std::uint32_t> table;  // source id -> target id

  SpaceMap(SpacePtr src, SpacePtr tgt, std::vector<std::uint32_t> tbl);

  std::uint32_t operator()(std::uint32_t x) const { return table[x]; }

  Subset image() const;
  Subset apply(const Subset& a) const;
  Subset preimage(const Subset& b) const;

  /// Elementwise image of a family (a family on the target).
  SetFamily push_forward(const SetFamily& family) const;
  /// Elementwise preimage (may contain empty elements).
  SetFamily pull_back(const SetFamily& family) const;

  /// Largest fiber size max_y |f^{-1}(y)|.
  std::size_t max_fiber() const;

  static SpaceMap identity(const SpacePtr& space);
};

/// g after f.
SpaceMap compose(const SpaceMap& f, const SpaceMap& g);

struct BornologousCheck {
  bool ok = false;
  /// A maximal bounded set of the source whose image is unbounded.
  std::optional<Subset> counterexample;
};

struct EmbeddingCheck {
  bool ok = false;
  /// A maximal bounded set of the target with unbounded preimage.
  std::optional<Subset> counterexample;
};

struct SurjectivityCheck {
  bool ok = false;
  /// On success, a scale V with target ⊆ st(image, V).
  std::optional<Scale> witness;
  /// On failure, a maximal bounded set of the target missed by the star of
  /// the image.
  std::optional<Subset> missed;
};

struct ClosenessCheck {
  bool ok = false;
  std::optional<Scale> witness;
  std::optional<std::uint32_t> offender;  ///< an x with {f(x), g(x)} unbounded
};

/// Images of bounded sets are bounded. On the lattice model this is
/// equivalent to: every maximal bounded set of the source maps into a
/// maximal bounded set of the target.
BornologousCheck is_bornologous(const SpaceMap& f);

/// Preimages of bounded sets are bounded.
EmbeddingCheck is_coarse_embedding(const SpaceMap& f);

/// The star of the image against the coarsest uniformly bounded scale is
/// the whole target.
SurjectivityCheck is_coarsely_surjective(const SpaceMap& f);

/// Whether {f(x), g(x)} lies in a bounded set for every x.
ClosenessCheck are_close(const SpaceMap& f, const SpaceMap& g);

/// The canonical coarse inverse: g(y) = the smallest-id x whose image lies in
/// the same maximal bounded set as y. Requires f to be bornologous, a coarse
/// embedding and coarsely surjective; the three section properties
/// (g bornologous, f∘g close to id, g∘f close to id) are re-verified before
/// returning.
SpaceMap construct_coarse_inverse(const SpaceMap& f);

struct MapReport {
  BornologousCheck bornologous;
  EmbeddingCheck embedding;
  SurjectivityCheck surjectivity;
  bool equivalence = false;
  std::optional<SpaceMap> inverse;
  std::optional<Scale> closeness_on_target;  ///< witness for f∘g ~ id
  std::optional<Scale> closeness_on_source;  ///< witness for g∘f ~ id
};

/// Classifies the map along two independent routes and checks they agree:
/// (a) exhibit an inverse-up-to-closeness, (b) bornologous + embedding +
/// coarsely surjective. Disagreement is an internal bug and throws
/// std::logic_error.
MapReport is_coarse_equivalence(const SpaceMap& f);

}  // namespace lsskit
