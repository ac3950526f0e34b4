#include "lsskit/nets.hpp"

#include <algorithm>
#include <cstdlib>

namespace lsskit {

OracleLimits OracleLimits::from_env() {
  OracleLimits limits;
  if (const char* raw = std::getenv("LSSKIT_ORACLE_LIMIT")) {
    char* end = nullptr;
    long v = std::strtol(raw, &end, 10);
    if (end && *end == '\0' && v > 0) {
      auto n = static_cast<std::size_t>(v);
      limits.net_enumeration_ambient = n;
      limits.cover_universe = n;
      limits.search_ground = n;
      limits.search_candidates = n;
      limits.cover_base = std::max<std::size_t>(64, n);
    }
  }
  return limits;
}

ProximityGraph::ProximityGraph(Scale scale)
    : ground_(scale.ground()), scale_(std::move(scale)), adj_(ground_->size(), Bitset(ground_->size())) {
  for (const auto& e : scale_.elements()) {
    for (std::size_t x = e.bits().first(); x != Bitset::npos; x = e.bits().next(x)) {
      adj_[x] |= e.bits();
    }
  }
  for (std::size_t x = 0; x < adj_.size(); ++x) adj_[x].reset(x);
}

bool is_valid_net(const Subset& ambient, const Subset& members, const ProximityGraph& graph) {
  require_same_ground(ambient.ground(), graph.ground(), "is_valid_net");
  if (!members.bits().is_subset_of(ambient.bits())) return false;
  for (std::size_t x = members.bits().first(); x != Bitset::npos; x = members.bits().next(x)) {
    if (graph.neighbors(static_cast<std::uint32_t>(x)).intersects(members.bits())) return false;
  }
  Bitset rest = difference(ambient.bits(), members.bits());
  for (std::size_t a = rest.first(); a != Bitset::npos; a = rest.next(a)) {
    if (!graph.neighbors(static_cast<std::uint32_t>(a)).intersects(members.bits())) return false;
  }
  return true;
}

Net greedy_net(const Subset& ambient, const ProximityGraph& graph) {
  require_same_ground(ambient.ground(), graph.ground(), "greedy_net");
  Bitset chosen(ambient.ground()->size());
  for (std::size_t x = ambient.bits().first(); x != Bitset::npos; x = ambient.bits().next(x)) {
    if (!graph.neighbors(static_cast<std::uint32_t>(x)).intersects(chosen)) chosen.set(x);
  }
  return Net{ambient, Subset(ambient.ground(), std::move(chosen))};
}

Net greedy_net(const Subset& ambient, const Scale& scale) {
  return greedy_net(ambient, ProximityGraph(scale));
}

namespace {

// Maximal non-adjacent sets = maximal cliques of the complement graph,
// enumerated Bron-Kerbosch style with compatibility masks. `compat[v]` is the
// set of ambient vertices that may coexist with v in a net.
void enumerate_rec(const std::vector<Bitset>& compat, const std::vector<std::uint32_t>& verts,
                   Bitset r, Bitset p, Bitset x, std::vector<Bitset>& out) {
  if (p.none() && x.none()) {
    out.push_back(r);
    return;
  }
  Bitset candidates = p;
  for (std::size_t vi = candidates.first(); vi != Bitset::npos; vi = candidates.next(vi)) {
    Bitset r2 = r;
    r2.set(vi);
    enumerate_rec(compat, verts, std::move(r2), p & compat[vi], x & compat[vi], out);
    p.reset(vi);
    x.set(vi);
  }
}

}  // namespace

std::vector<Subset> enumerate_nets(const Subset& ambient, const ProximityGraph& graph,
                                   const OracleLimits& limits) {
  require_same_ground(ambient.ground(), graph.ground(), "enumerate_nets");
  auto verts = ambient.ids();
  if (verts.size() > limits.net_enumeration_ambient) {
    throw OracleLimitError("net enumeration over " + std::to_string(verts.size()) +
                           " points exceeds the configured limit of " +
                           std::to_string(limits.net_enumeration_ambient));
  }
  const std::size_t k = verts.size();
  std::vector<Bitset> compat(k, Bitset(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && !graph.adjacent(verts[i], verts[j])) compat[i].set(j);
    }
  }
  Bitset p(k);
  for (std::size_t i = 0; i < k; ++i) p.set(i);
  std::vector<Bitset> found;
  enumerate_rec(compat, verts, Bitset(k), std::move(p), Bitset(k), found);

  std::vector<Subset> out;
  out.reserve(found.size());
  for (const auto& mask : found) {
    Bitset bits(ambient.ground()->size());
    for (std::size_t i = mask.first(); i != Bitset::npos; i = mask.next(i)) bits.set(verts[i]);
    out.emplace_back(ambient.ground(), std::move(bits));
  }
  std::sort(out.begin(), out.end(),
            [](const Subset& a, const Subset& b) { return a.bits().lex_less(b.bits()); });
  return out;
}

std::vector<Subset> enumerate_nets(const Subset& ambient, const Scale& scale,
                                   const OracleLimits& limits) {
  return enumerate_nets(ambient, ProximityGraph(scale), limits);
}

namespace {

struct CoverInstance {
  std::vector<std::uint32_t> set_ids;  // original base indices, ascending
  std::vector<Bitset> sets;            // restricted to the target, same order
  Bitset target;
};

// Greedy cover, max new coverage first, smallest index on ties.
std::vector<std::size_t> greedy_cover(const CoverInstance& inst) {
  std::vector<std::size_t> picked;
  Bitset uncovered = inst.target;
  while (uncovered.any()) {
    std::size_t best = ~std::size_t(0), best_gain = 0;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
      std::size_t gain = (inst.sets[i] & uncovered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best == ~std::size_t(0)) return {};  // cannot happen on feasible instances
    picked.push_back(best);
    uncovered.and_not(inst.sets[best]);
  }
  return picked;
}

// Lower bound: greedily collect uncovered points no two of which share a set.
std::size_t packing_bound(const CoverInstance& inst, const Bitset& uncovered,
                          const std::vector<Bitset>& point_sets) {
  Bitset blocked(uncovered.size());
  std::size_t lb = 0;
  for (std::size_t p = uncovered.first(); p != Bitset::npos; p = uncovered.next(p)) {
    if (blocked.test(p)) continue;
    ++lb;
    // Block every point sharing a covering set with p.
    for (std::size_t s = point_sets[p].first(); s != Bitset::npos; s = point_sets[p].next(s)) {
      blocked |= inst.sets[s];
    }
  }
  return lb;
}

struct CoverSearch {
  const CoverInstance& inst;
  const std::vector<Bitset>& point_sets;  // per point, the sets containing it
  std::size_t best;
  std::vector<std::size_t> best_pick;

  void run(Bitset uncovered, std::vector<std::size_t>& pick) {
    if (uncovered.none()) {
      if (pick.size() < best) {
        best = pick.size();
        best_pick = pick;
      }
      return;
    }
    if (pick.size() + packing_bound(inst, uncovered, point_sets) >= best) return;
    // Branch on the uncovered point with the fewest candidate sets.
    std::size_t branch_point = Bitset::npos, fewest = ~std::size_t(0);
    for (std::size_t p = uncovered.first(); p != Bitset::npos; p = uncovered.next(p)) {
      std::size_t c = point_sets[p].count();
      if (c < fewest) {
        fewest = c;
        branch_point = p;
      }
    }
    const Bitset& candidates = point_sets[branch_point];
    for (std::size_t s = candidates.first(); s != Bitset::npos; s = candidates.next(s)) {
      pick.push_back(s);
      run(difference(uncovered, inst.sets[s]), pick);
      pick.pop_back();
    }
  }
};

// First (lexicographically smallest) cover of exactly `k` sets, scanning set
// indices in ascending order.
bool lex_cover(const CoverInstance& inst, const std::vector<Bitset>& point_sets,
               const std::vector<Bitset>& suffix_union, std::size_t k, std::size_t from,
               Bitset uncovered, std::vector<std::size_t>& pick) {
  if (uncovered.none()) return pick.size() == k ? true : false;
  if (pick.size() >= k) return false;
  if (!uncovered.is_subset_of(suffix_union[from])) return false;
  if (pick.size() + packing_bound(inst, uncovered, point_sets) > k) return false;
  for (std::size_t s = from; s < inst.sets.size(); ++s) {
    if (!inst.sets[s].intersects(uncovered)) continue;
    pick.push_back(s);
    if (lex_cover(inst, point_sets, suffix_union, k, s + 1, difference(uncovered, inst.sets[s]),
                  pick)) {
      return true;
    }
    pick.pop_back();
  }
  return false;
}

}  // namespace

std::vector<std::uint32_t> min_cover(const Subset& target, const SetFamily& base,
                                     const OracleLimits& limits) {
  require_same_ground(target.ground(), base.ground(), "min_cover");
  if (target.is_empty()) return {};
  if (target.count() > limits.cover_universe) {
    throw OracleLimitError("cover target of size " + std::to_string(target.count()) +
                           " exceeds the configured limit of " + std::to_string(limits.cover_universe));
  }
  if (base.size() > limits.cover_base) {
    throw OracleLimitError("cover base of size " + std::to_string(base.size()) +
                           " exceeds the configured limit of " + std::to_string(limits.cover_base));
  }

  CoverInstance inst;
  inst.target = target.bits();
  for (std::uint32_t i = 0; i < base.size(); ++i) {
    Bitset restricted = base.element(i).bits() & target.bits();
    if (restricted.any()) {
      inst.set_ids.push_back(i);
      inst.sets.push_back(std::move(restricted));
    }
  }
  {
    Bitset all(target.ground()->size());
    for (const auto& s : inst.sets) all |= s;
    if (!target.bits().is_subset_of(all)) {
      throw CoverInfeasibleError("base family cannot cover the target");
    }
  }

  std::vector<Bitset> point_sets(target.ground()->size(), Bitset(inst.sets.size()));
  for (std::size_t s = 0; s < inst.sets.size(); ++s) {
    for (std::size_t p = inst.sets[s].first(); p != Bitset::npos; p = inst.sets[s].next(p)) {
      point_sets[p].set(s);
    }
  }

  CoverSearch search{inst, point_sets, greedy_cover(inst).size(), {}};
  std::vector<std::size_t> scratch;
  search.run(inst.target, scratch);
  const std::size_t k = search.best;

  // Second pass: the lexicographically smallest cover of the optimal size.
  std::vector<Bitset> suffix_union(inst.sets.size() + 1, Bitset(target.ground()->size()));
  for (std::size_t s = inst.sets.size(); s-- > 0;) {
    suffix_union[s] = suffix_union[s + 1];
    suffix_union[s] |= inst.sets[s];
  }
  std::vector<std::size_t> pick;
  if (!lex_cover(inst, point_sets, suffix_union, k, 0, inst.target, pick)) {
    throw std::logic_error("lexicographic cover pass lost the optimum; this is a bug");
  }
  std::vector<std::uint32_t> out;
  out.reserve(pick.size());
  for (auto s : pick) out.push_back(inst.set_ids[s]);
  return out;
}

std::string to_string(BsmMode mode) {
  switch (mode) {
    case BsmMode::AllNets: return "all-nets";
    case BsmMode::ExistsNet: return "exists-net";
    case BsmMode::Covering: return "covering";
  }
  return "?";
}

BsmMode bsm_mode_from_string(const std::string& text) {
  if (text == "all-nets") return BsmMode::AllNets;
  if (text == "exists-net") return BsmMode::ExistsNet;
  if (text == "covering") return BsmMode::Covering;
  throw ParseError("unknown bsm mode '" + text + "' (expected all-nets, exists-net or covering)");
}

namespace {

BsmCertificate net_bound(const Scale& queried, const Scale& base, bool want_max,
                         const OracleLimits& limits) {
  require_same_ground(queried.ground(), base.ground(), "net bound");
  ProximityGraph graph(base);
  BsmCertificate cert{base, queried, want_max ? BsmMode::AllNets : BsmMode::ExistsNet, 0, {}};
  for (const auto& v : queried.elements()) {
    auto nets = enumerate_nets(v, graph, limits);
    const Subset* extremal = nullptr;
    for (const auto& net : nets) {
      if (!extremal) {
        extremal = &net;
        continue;
      }
      if (want_max ? net.count() > extremal->count() : net.count() < extremal->count()) {
        extremal = &net;
      }
    }
    cert.witnesses.push_back(extremal ? extremal->ids() : std::vector<std::uint32_t>{});
    if (extremal) cert.bound = std::max(cert.bound, extremal->count());
  }
  return cert;
}

}  // namespace

BsmCertificate net_bound_all(const Scale& queried, const Scale& base, const OracleLimits& limits) {
  return net_bound(queried, base, true, limits);
}

BsmCertificate net_bound_exists(const Scale& queried, const Scale& base, const OracleLimits& limits) {
  return net_bound(queried, base, false, limits);
}

BsmCertificate covering_number(const Scale& queried, const Scale& base, const OracleLimits& limits) {
  require_same_ground(queried.ground(), base.ground(), "covering_number");
  BsmCertificate cert{base, queried, BsmMode::Covering, 0, {}};
  for (const auto& v : queried.elements()) {
    auto cover = min_cover(v, base, limits);
    cert.bound = std::max(cert.bound, cover.size());
    cert.witnesses.push_back(std::move(cover));
  }
  return cert;
}

BsmCertificate check_bsm(const LssSpace& space, const Scale& base, BsmMode mode,
                         const OracleLimits& limits) {
  if (!is_uniformly_bounded(base, space).uniformly_bounded) {
    throw PreconditionError("check_bsm: base scale is not uniformly bounded in the space");
  }
  const Scale& queried = space.maximal_bounded();
  switch (mode) {
    case BsmMode::AllNets: return net_bound_all(queried, base, limits);
    case BsmMode::ExistsNet: return net_bound_exists(queried, base, limits);
    case BsmMode::Covering: return covering_number(queried, base, limits);
  }
  throw std::logic_error("unreachable bsm mode");
}

BsmTransfer bsm_transfer(const SpaceMap& f, const BsmCertificate& certificate,
                         const OracleLimits& limits) {
  if (!is_coarse_equivalence(f).equivalence) {
    throw PreconditionError("bsm_transfer requires a coarse equivalence");
  }

  BsmTransfer result{BsmCertificate{certificate.base, certificate.queried, certificate.mode, 0, {}},
                     0, false};
  if (certificate.mode == BsmMode::Covering) {
    // Backward: certificate lives on the target of f, result on the source.
    require_same_ground(certificate.base.ground(), f.target->ground(), "bsm_transfer covering");
    Scale base_x = trivial_extension(f.pull_back(certificate.base));
    const Scale& queried_x = f.source->maximal_bounded();
    result.transferred = covering_number(queried_x, base_x, limits);
    Scale pushed = trivial_extension(f.push_forward(queried_x));
    result.comparison_bound = covering_number(pushed, certificate.base, limits).bound;
  } else {
    // Forward: certificate lives on the source of f, result on the target.
    require_same_ground(certificate.base.ground(), f.source->ground(), "bsm_transfer nets");
    Scale base_y = trivial_extension(f.push_forward(certificate.base));
    const Scale& queried_y = f.target->maximal_bounded();
    result.transferred = certificate.mode == BsmMode::AllNets
                             ? net_bound_all(queried_y, base_y, limits)
                             : net_bound_exists(queried_y, base_y, limits);
    Scale pulled = trivial_extension(f.pull_back(queried_y));
    result.comparison_bound = net_bound_all(pulled, certificate.base, limits).bound;
  }
  result.bound_law = result.transferred.bound <= result.comparison_bound;
  return result;
}

}  // namespace lsskit
