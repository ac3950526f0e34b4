#include "lsskit/property_a.hpp"

#include <algorithm>
#include <stdexcept>

#include "lsskit/nets.hpp"

namespace lsskit {

namespace {

using PairVec = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

void normalize(PairVec& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::size_t intersection_size(const PairVec& a, const PairVec& b) {
  std::size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

std::size_t sym_diff_size(const PairVec& a, const PairVec& b) {
  return a.size() + b.size() - 2 * intersection_size(a, b);
}

bool contains_pair(const PairVec& v, std::pair<std::uint32_t, std::uint32_t> p) {
  return std::binary_search(v.begin(), v.end(), p);
}

}  // namespace

BoundedGeometryReport has_bounded_geometry(const LssSpace& space) {
  BoundedGeometryReport report;
  report.bounded_geometry = true;
  for (const auto& block : space.maximal_bounded().elements()) {
    report.constant = std::max(report.constant, block.count());
  }
  return report;
}

WitnessReport verify_witness(const LssSpace& space, const PropertyAWitness& witness) {
  require_same_ground(witness.test_scale.ground(), space.ground(), "verify_witness test scale");
  require_same_ground(witness.support_scale.ground(), space.ground(), "verify_witness support scale");
  if (!is_uniformly_bounded(witness.test_scale, space).uniformly_bounded ||
      !is_uniformly_bounded(witness.support_scale, space).uniformly_bounded) {
    throw PreconditionError("verify_witness: test and support scales must be uniformly bounded");
  }
  const std::size_t n = space.ground()->size();
  if (witness.sets.size() != n) {
    throw InvariantError("witness must carry one set per point");
  }

  WitnessReport report;
  report.ok = true;

  std::vector<Bitset> support_star(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    support_star[x] = point_star(x, witness.support_scale).bits();
  }

  for (std::uint32_t x = 0; x < n; ++x) {
    const auto& ax = witness.sets[x];
    if (!contains_pair(ax, {x, 1})) {
      report.ok = false;
      report.violations.push_back({WitnessViolationKind::Diagonal, x, 0, 0, 0});
    }
    for (const auto& [z, lvl] : ax) {
      if (lvl < 1 || z >= n || !support_star[x].test(z)) {
        report.ok = false;
        report.violations.push_back({WitnessViolationKind::Support, x, z, lvl, 0});
      }
    }
  }

  ProximityGraph near(witness.test_scale);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (x != y && !near.adjacent(x, y)) continue;  // y in st(x, test) iff adjacent or equal
      ++report.pairs_checked;
      std::size_t inter = intersection_size(witness.sets[x], witness.sets[y]);
      std::size_t sym = sym_diff_size(witness.sets[x], witness.sets[y]);
      if (!(Rational(static_cast<long long>(sym)) <
            witness.epsilon * Rational(static_cast<long long>(inter)))) {
        report.ok = false;
        report.violations.push_back({WitnessViolationKind::Ratio, x, y, sym, inter});
      }
      if (inter > 0) {
        Rational ratio(static_cast<long long>(sym), static_cast<long long>(inter));
        if (!report.max_ratio || ratio > *report.max_ratio) report.max_ratio = ratio;
      }
    }
  }
  return report;
}

WitnessSearchResult search_witness(const LssSpace& space, const Rational& epsilon,
                                   const Scale& test_scale, const Scale& support_scale,
                                   unsigned max_level, const OracleLimits& limits) {
  if (epsilon <= Rational(0)) throw PreconditionError("search_witness: epsilon must be positive");
  const std::size_t n = space.ground()->size();
  if (n > limits.search_ground) {
    throw OracleLimitError("witness search over " + std::to_string(n) +
                           " points exceeds the configured limit of " +
                           std::to_string(limits.search_ground));
  }
  if (max_level > limits.search_max_level) {
    throw OracleLimitError("witness search level budget " + std::to_string(max_level) +
                           " exceeds the configured limit of " +
                           std::to_string(limits.search_max_level));
  }
  if (!is_uniformly_bounded(test_scale, space).uniformly_bounded ||
      !is_uniformly_bounded(support_scale, space).uniformly_bounded) {
    throw PreconditionError("search_witness: test and support scales must be uniformly bounded");
  }

  // Candidate pairs per point, excluding the forced diagonal pair.
  std::vector<PairVec> candidates(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    auto star_ids = point_star(x, support_scale).ids();
    for (auto z : star_ids) {
      for (unsigned lvl = 1; lvl <= max_level; ++lvl) {
        if (z == x && lvl == 1) continue;
        candidates[x].push_back({z, lvl});
      }
    }
    if (candidates[x].size() > limits.search_candidates || candidates[x].size() >= 63) {
      throw OracleLimitError("witness search candidate list for point " + std::to_string(x) +
                             " exceeds the configured limit");
    }
  }

  ProximityGraph near(test_scale);
  std::vector<PairVec> assigned(n);

  auto build = [&](std::uint32_t x, std::uint64_t mask) {
    PairVec out;
    out.push_back({x, 1u});
    for (std::size_t b = 0; b < candidates[x].size(); ++b) {
      if (mask & (std::uint64_t(1) << b)) out.push_back(candidates[x][b]);
    }
    normalize(out);
    return out;
  };

  auto pair_ok = [&](const PairVec& a, const PairVec& b) {
    std::size_t inter = intersection_size(a, b);
    std::size_t sym = sym_diff_size(a, b);
    return Rational(static_cast<long long>(sym)) <
           epsilon * Rational(static_cast<long long>(inter));
  };

  // Depth-first over points; per point, candidate sets in ascending mask
  // order, so minimal sets are tried first and the result is canonical.
  auto rec = [&](auto&& self, std::uint32_t x) -> bool {
    if (x == n) return true;
    const std::uint64_t total = std::uint64_t(1) << candidates[x].size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      assigned[x] = build(x, mask);
      bool ok = true;
      for (std::uint32_t y = 0; y < x && ok; ++y) {
        if (near.adjacent(x, y)) ok = pair_ok(assigned[x], assigned[y]);
      }
      if (ok && self(self, x + 1)) return true;
    }
    assigned[x].clear();
    return false;
  };

  WitnessSearchResult result;
  if (!rec(rec, 0)) {
    result.exhausted = true;
    return result;
  }

  PropertyAWitness witness{epsilon, test_scale, support_scale, std::move(assigned)};
  auto self_check = verify_witness(space, witness);
  if (!self_check.ok) {
    throw std::logic_error("witness search produced a non-verifying witness; this is a bug");
  }
  result.witness = std::move(witness);
  return result;
}

void validate_asdim_certificate(const LssSpace& space, const AsdimCertificate& certificate) {
  if (certificate.coarsenings.size() != space.generators().size()) {
    throw InvariantError("dimension certificate does not align with the generator list");
  }
  for (std::size_t i = 0; i < certificate.coarsenings.size(); ++i) {
    const auto& coarsening = certificate.coarsenings[i];
    if (!is_uniformly_bounded(coarsening, space).uniformly_bounded) {
      throw InvariantError("dimension certificate coarsening " + std::to_string(i) +
                           " is not uniformly bounded");
    }
    if (!refines(space.generators()[i], coarsening).refines) {
      throw InvariantError("dimension certificate entry " + std::to_string(i) +
                           " does not coarsen its generator");
    }
    if (multiplicity(coarsening) > certificate.n + 1) {
      throw InvariantError("dimension certificate entry " + std::to_string(i) +
                           " exceeds the multiplicity bound");
    }
  }
}

AsdimResult check_asdim_at_most(const LssSpace& space, std::size_t n) {
  AsdimResult result;
  AsdimCertificate certificate;
  certificate.n = n;
  for (std::size_t i = 0; i < space.generators().size(); ++i) {
    const Scale& candidate = space.maximal_bounded();
    if (!refines(space.generators()[i], candidate).refines ||
        multiplicity(candidate) > n + 1 ||
        !is_uniformly_bounded(candidate, space).uniformly_bounded) {
      result.failed_generator = i;
      return result;
    }
    certificate.coarsenings.push_back(candidate);
  }
  result.certificate = std::move(certificate);
  return result;
}

AsdimWitnessConstruction construct_witness_asdim(const LssSpace& space,
                                                 const AsdimCertificate& certificate,
                                                 const Rational& epsilon,
                                                 const Scale& test_scale) {
  if (epsilon <= Rational(0)) {
    throw PreconditionError("construct_witness_asdim: epsilon must be positive");
  }
  require_same_ground(test_scale.ground(), space.ground(), "construct_witness_asdim");
  validate_asdim_certificate(space, certificate);
  const long long k = static_cast<long long>(certificate.n);

  // Least n with (4k+6)/(n-1) < epsilon, i.e. n-1 = floor((4k+6)/eps) + 1.
  Rational threshold = Rational(4 * k + 6) / epsilon;
  long long floor_val = threshold.numerator() / threshold.denominator();
  unsigned height = static_cast<unsigned>(floor_val + 2);
  Rational ratio_bound = Rational(4 * k + 6, static_cast<long long>(height) - 1);

  const std::size_t n_points = space.ground()->size();

  // Point stars against each tower level 1..height.
  std::vector<std::vector<Bitset>> level_star(height + 1);
  SetFamily level = test_scale;
  for (unsigned m = 1; m <= height; ++m) {
    level = star_family(test_scale, level);
    level_star[m].reserve(n_points);
    for (std::uint32_t x = 0; x < n_points; ++x) {
      level_star[m].push_back(star(Subset::single(space.ground(), x), level).bits());
    }
  }

  std::vector<Subset> tower_elems;
  tower_elems.reserve(n_points);
  for (std::uint32_t x = 0; x < n_points; ++x) {
    tower_elems.emplace_back(space.ground(), level_star[height][x]);
  }
  Scale tower(space.ground(), std::move(tower_elems));

  // A uniformly bounded coarsening of the tower scale with multiplicity at
  // most k+1; the coarsest uniformly bounded scale works whenever the test
  // scale is itself uniformly bounded.
  const Scale& coarsening = space.maximal_bounded();
  if (!refines(tower, coarsening).refines ||
      multiplicity(coarsening) > certificate.n + 1) {
    throw PreconditionError(
        "construct_witness_asdim: no admissible coarsening of the star tower at height " +
        std::to_string(height));
  }

  // Representative of each coarsening element: its smallest member.
  std::vector<std::uint32_t> rep;
  rep.reserve(coarsening.size());
  for (const auto& v : coarsening.elements()) {
    rep.push_back(static_cast<std::uint32_t>(v.bits().first()));
  }

  std::vector<PairVec> sets(n_points);
  for (std::uint32_t x = 0; x < n_points; ++x) {
    PairVec ax;
    ax.push_back({x, 1u});
    for (std::uint32_t vi = 0; vi < coarsening.size(); ++vi) {
      const Bitset& v = coarsening.element(vi).bits();
      for (unsigned m = 1; m <= height; ++m) {
        const Bitset& sxm = level_star[m][x];
        if (v.intersects(sxm) && !v.is_subset_of(sxm)) {
          ax.push_back({rep[vi], m});
        }
      }
    }
    normalize(ax);
    sets[x] = std::move(ax);
  }

  Scale support(star_family(tower, coarsening));
  PropertyAWitness witness{epsilon, test_scale, std::move(support), std::move(sets)};
  return AsdimWitnessConstruction{std::move(witness), height, ratio_bound, coarsening};
}

WitnessTransfer transfer_witness(const SpaceMap& f, const PropertyAWitness& target_witness,
                                 const Rational& epsilon) {
  if (epsilon <= Rational(0)) throw PreconditionError("transfer_witness: epsilon must be positive");
  if (!is_coarse_equivalence(f).equivalence) {
    throw PreconditionError("transfer_witness requires a coarse equivalence");
  }
  require_same_ground(target_witness.test_scale.ground(), f.target->ground(),
                      "transfer_witness target witness");

  const std::size_t fiber_count = f.max_fiber();
  Rational budget = epsilon / Rational(static_cast<long long>(fiber_count));
  PropertyAWitness at_budget = target_witness;
  at_budget.epsilon = budget;
  if (!verify_witness(*f.target, at_budget).ok) {
    throw PreconditionError(
        "transfer_witness: target witness does not verify at epsilon divided by the largest "
        "fiber");
  }

  // Nonempty preimages of the target test scale still cover the source.
  SetFamily pulled_test = f.pull_back(target_witness.test_scale);
  std::vector<Subset> test_elems;
  for (const auto& e : pulled_test.elements()) {
    if (!e.is_empty()) test_elems.push_back(e);
  }
  Scale test_x(f.source->ground(), std::move(test_elems));
  Scale support_x = trivial_extension(f.pull_back(target_witness.support_scale));

  std::vector<std::vector<std::uint32_t>> fibers(f.target->ground()->size());
  for (std::uint32_t x = 0; x < f.table.size(); ++x) fibers[f.table[x]].push_back(x);

  const std::size_t n = f.source->ground()->size();
  std::vector<PairVec> sets(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    PairVec ax;
    for (const auto& [w, lvl] : target_witness.sets[f.table[x]]) {
      for (auto z : fibers[w]) ax.push_back({z, lvl});
    }
    normalize(ax);
    sets[x] = std::move(ax);
  }

  PropertyAWitness witness{epsilon, std::move(test_x), std::move(support_x), std::move(sets)};
  WitnessTransfer out{std::move(witness), fiber_count, {}};
  out.recheck = verify_witness(*f.source, out.witness);
  return out;
}

}  // namespace lsskit
