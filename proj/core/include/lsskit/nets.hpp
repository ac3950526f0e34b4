#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsskit/maps.hpp"
#include "lsskit/space.hpp"

namespace lsskit {

/// x ~ y iff x != y and some scale element contains both.
class ProximityGraph {
 public:
  ProximityGraph(Scale scale);

  const GroundPtr& ground() const { return ground_; }
  const Scale& scale() const { return scale_; }

  bool adjacent(std::uint32_t x, std::uint32_t y) const { return adj_[x].test(y); }
  const Bitset& neighbors(std::uint32_t x) const { return adj_[x]; }

 private:
  GroundPtr ground_;
  Scale scale_;
  std::vector<Bitset> adj_;
};

/// A maximal pairwise non-adjacent subset of an ambient set.
struct Net {
  Subset within;
  Subset members;
};

bool is_valid_net(const Subset& ambient, const Subset& members, const ProximityGraph& graph);

/// Deterministic greedy net: scans the ambient set in ascending id order and
/// keeps every point not adjacent to one already kept.
Net greedy_net(const Subset& ambient, const ProximityGraph& graph);
Net greedy_net(const Subset& ambient, const Scale& scale);

/// All maximal non-adjacent subsets of the ambient set, sorted by ascending
/// member lists. Exact; refuses ambients above the configured budget.
std::vector<Subset> enumerate_nets(const Subset& ambient, const ProximityGraph& graph,
                                   const OracleLimits& limits = {});
std::vector<Subset> enumerate_nets(const Subset& ambient, const Scale& scale,
                                   const OracleLimits& limits = {});

/// Exact minimum cover of `target` by base elements; among minimum covers the
/// lexicographically smallest index list is returned. Empty list for an empty
/// target. Throws CoverInfeasibleError when the base cannot cover the target.
std::vector<std::uint32_t> min_cover(const Subset& target, const SetFamily& base,
                                     const OracleLimits& limits = {});

enum class BsmMode { AllNets, ExistsNet, Covering };

std::string to_string(BsmMode mode);
BsmMode bsm_mode_from_string(const std::string& text);

/// One bounded-scale-measure constant with its per-element witnesses.
/// The bound is the exact max (or max of min) the mode names, so theorem
/// inequalities can be asserted sharply against it.
struct BsmCertificate {
  Scale base;
  Scale queried;
  BsmMode mode;
  std::size_t bound = 0;
  /// Per queried element: net member ids (net modes) or base element indices
  /// (covering mode).
  std::vector<std::vector<std::uint32_t>> witnesses;
};

/// bound = max over queried elements of the largest net size.
BsmCertificate net_bound_all(const Scale& queried, const Scale& base, const OracleLimits& limits = {});

/// bound = max over queried elements of the smallest net size.
BsmCertificate net_bound_exists(const Scale& queried, const Scale& base, const OracleLimits& limits = {});

/// bound = max over queried elements of the minimum number of base elements
/// covering the element.
BsmCertificate covering_number(const Scale& queried, const Scale& base, const OracleLimits& limits = {});

/// Evaluates the chosen mode against the coarsest uniformly bounded scale of
/// the space. Any other uniformly bounded queried scale refines it up to
/// one-point sets, and all three constants only grow under coarsening of the
/// queried scale, so the coarsest scale dominates every other choice.
/// Requires `base` to be uniformly bounded in the space.
BsmCertificate check_bsm(const LssSpace& space, const Scale& base, BsmMode mode,
                         const OracleLimits& limits = {});

/// Transfer of a certificate along a coarse equivalence.
///
/// Net modes travel forward: a certificate on the source at base U becomes a
/// certificate on the target at the trivially extended image of U, and the
/// transferred bound is compared against the all-nets bound computed on the
/// source at the pulled-back queried scale (a net of a target element pulls
/// back to a non-adjacent set inside the preimage).
///
/// Covering mode travels backward: a certificate on the target at base U
/// becomes one on the source at the trivially extended preimage of U, since
/// V ⊆ f⁻¹(f(V)) ⊆ the preimages of any cover of f(V); the comparison bound
/// is the covering bound of the pushed-forward queried scale on the target.
struct BsmTransfer {
  BsmCertificate transferred;
  std::size_t comparison_bound = 0;
  bool bound_law = false;  ///< transferred.bound <= comparison_bound
};

BsmTransfer bsm_transfer(const SpaceMap& f, const BsmCertificate& certificate,
                         const OracleLimits& limits = {});

}  // namespace lsskit
