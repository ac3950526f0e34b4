#include "lsskit/property_a_scaled.hpp"

#include <algorithm>
#include <set>

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

ScaledWitnessReport verify_scaled_witness(const LssSpace& space,
                                          const ScaledPropertyAWitness& witness) {
  require_same_ground(witness.base.ground(), space.ground(), "verify_scaled_witness base");
  require_same_ground(witness.queried.ground(), space.ground(), "verify_scaled_witness queried");
  require_same_ground(witness.horizon_scale.ground(), space.ground(),
                      "verify_scaled_witness horizon scale");
  if (!is_uniformly_bounded(witness.base, space).uniformly_bounded ||
      !is_uniformly_bounded(witness.queried, space).uniformly_bounded ||
      !is_uniformly_bounded(witness.horizon_scale, space).uniformly_bounded) {
    throw PreconditionError("verify_scaled_witness: all three scales must be uniformly bounded");
  }
  if (is_trivial_cover(witness.queried)) {
    throw PreconditionError("verify_scaled_witness: queried scale must not be the trivial cover");
  }
  const std::size_t k = witness.base.size();
  if (witness.sets.size() != k) {
    throw InvariantError("scaled witness must carry one set per base element");
  }

  ScaledWitnessReport report;
  report.ok = true;

  // Allowed support indices per base element: horizon of st(U, W).
  std::vector<Bitset> allowed(k, Bitset(k));
  for (std::uint32_t i = 0; i < k; ++i) {
    Subset st_u = star(witness.base.element(i), witness.horizon_scale);
    for (auto idx : horizon(st_u, witness.base)) allowed[i].set(idx);
  }

  for (std::uint32_t i = 0; i < k; ++i) {
    const auto& a = witness.sets[i];
    if (!contains_pair(a, {i, 1})) {
      report.ok = false;
      report.violations.push_back({WitnessViolationKind::Diagonal, i, 0, 0, 0});
    }
    for (const auto& [idx, lvl] : a) {
      if (lvl < 1 || idx >= k || !allowed[i].test(idx)) {
        report.ok = false;
        report.violations.push_back({WitnessViolationKind::Support, i, idx, lvl, 0});
      }
    }
  }

  // Queried horizons as index sets over the queried scale.
  std::vector<Bitset> q_horizon(k, Bitset(witness.queried.size()));
  for (std::uint32_t i = 0; i < k; ++i) {
    for (auto idx : horizon(witness.base.element(i), witness.queried)) q_horizon[i].set(idx);
  }

  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = i; j < k; ++j) {
      if (!q_horizon[i].intersects(q_horizon[j])) continue;
      ++report.pairs_checked;
      std::size_t inter = intersection_size(witness.sets[i], witness.sets[j]);
      std::size_t sym = sym_diff_size(witness.sets[i], witness.sets[j]);
      if (!(Rational(static_cast<long long>(sym)) <
            witness.epsilon * Rational(static_cast<long long>(inter)))) {
        report.ok = false;
        report.violations.push_back({WitnessViolationKind::Ratio, i, j, sym, inter});
      }
      if (inter > 0) {
        Rational ratio(static_cast<long long>(sym), static_cast<long long>(inter));
        if (!report.max_ratio || ratio > *report.max_ratio) report.max_ratio = ratio;
      }
    }
  }
  return report;
}

PropertyAWitness reduce_trivial_base(const ScaledPropertyAWitness& witness) {
  if (!is_singleton_cover(witness.base)) {
    throw PreconditionError("reduce_trivial_base: base must be the cover by one-point sets");
  }
  // Base index i is the point i, so the sets carry over verbatim.
  return PropertyAWitness{witness.epsilon, witness.queried, witness.horizon_scale, witness.sets};
}

ScaledPropertyAWitness lift_trivial_base(const PropertyAWitness& witness) {
  return ScaledPropertyAWitness{singleton_cover(witness.test_scale.ground()), witness.epsilon,
                                witness.test_scale, witness.support_scale, witness.sets};
}

Scale transfer_queried_scale(const SpaceMap& f, const Scale& queried_x, const Scale& base_x) {
  SetFamily pushed_queried = f.push_forward(queried_x);
  SetFamily pushed_base = f.push_forward(base_x);
  return trivial_extension(star_family(pushed_queried, pushed_base));
}

ScaledTransfer transfer_scaled_witness(const SpaceMap& f, const ScaledPropertyAWitness& target,
                                       const Scale& base_x, const Scale& queried_x,
                                       const Rational& epsilon, const OracleLimits& limits) {
  if (epsilon <= Rational(0)) {
    throw PreconditionError("transfer_scaled_witness: epsilon must be positive");
  }
  if (!is_coarse_equivalence(f).equivalence) {
    throw PreconditionError("transfer_scaled_witness requires a coarse equivalence");
  }
  require_same_ground(base_x.ground(), f.source->ground(), "transfer_scaled_witness base");
  require_same_ground(queried_x.ground(), f.source->ground(), "transfer_scaled_witness queried");
  require_same_ground(target.base.ground(), f.target->ground(), "transfer_scaled_witness target");

  if (target.queried != static_cast<const SetFamily&>(transfer_queried_scale(f, queried_x, base_x))) {
    throw PreconditionError(
        "transfer_scaled_witness: target queried scale is not the transfer of the source "
        "queried scale");
  }

  const std::size_t kx = base_x.size();
  const std::size_t ky = target.base.size();

  // Chosen covers, fixed once. J[i]: cover of f(U_{X_i}) by target base
  // elements. K[h]: cover of the preimage of U_{Y_h} by source base elements
  // (empty when the preimage is empty).
  std::vector<std::vector<std::uint32_t>> cover_j(kx), cover_k(ky);
  std::size_t m = 0, n = 0;
  for (std::uint32_t i = 0; i < kx; ++i) {
    cover_j[i] = min_cover(f.apply(base_x.element(i)), target.base, limits);
    m = std::max(m, cover_j[i].size());
  }
  for (std::uint32_t h = 0; h < ky; ++h) {
    cover_k[h] = min_cover(f.preimage(target.base.element(h)), base_x, limits);
    n = std::max(n, cover_k[h].size());
  }
  if (m == 0) throw PreconditionError("transfer_scaled_witness: empty source base");

  Rational budget = epsilon / Rational(static_cast<long long>(2 * m * m * (n + 1)));
  ScaledPropertyAWitness at_budget = target;
  at_budget.epsilon = budget;
  if (!verify_scaled_witness(*f.target, at_budget).ok) {
    throw PreconditionError(
        "transfer_scaled_witness: target witness does not verify at the transfer budget");
  }

  // A_{U_i} = {(i,1)} ∪ {(i', lvl) : i' ∈ K[h] for some (h, lvl) in the
  // B-sets of the chosen cover of f(U_i)}.
  std::vector<PairVec> sets(kx);
  for (std::uint32_t i = 0; i < kx; ++i) {
    PairVec a;
    a.push_back({i, 1u});
    for (auto j : cover_j[i]) {
      for (const auto& [h, lvl] : target.sets[j]) {
        for (auto iprime : cover_k[h]) a.push_back({iprime, lvl});
      }
    }
    normalize(a);
    sets[i] = std::move(a);
  }

  Scale horizon_x = trivial_extension(f.pull_back(star_family(target.horizon_scale, target.base)));

  ScaledTransfer out{
      ScaledPropertyAWitness{base_x, epsilon, queried_x, std::move(horizon_x), std::move(sets)},
      m,
      n,
      budget,
      {},
      {}};
  out.recheck = verify_scaled_witness(*f.source, out.witness);

  // Raw counting data for every tested source pair, for the logged bounds.
  std::vector<Bitset> q_horizon(kx, Bitset(queried_x.size()));
  for (std::uint32_t i = 0; i < kx; ++i) {
    for (auto idx : horizon(base_x.element(i), queried_x)) q_horizon[i].set(idx);
  }
  for (std::uint32_t i = 0; i < kx; ++i) {
    for (std::uint32_t j = i; j < kx; ++j) {
      if (!q_horizon[i].intersects(q_horizon[j])) continue;
      ScaledPairMeasurement row;
      row.i = i;
      row.j = j;
      row.a_sym_diff = sym_diff_size(out.witness.sets[i], out.witness.sets[j]);
      row.a_intersection = intersection_size(out.witness.sets[i], out.witness.sets[j]);
      bool first = true;
      for (auto bk : cover_j[i]) {
        for (auto bl : cover_j[j]) {
          std::size_t sym = sym_diff_size(target.sets[bk], target.sets[bl]);
          std::size_t inter = intersection_size(target.sets[bk], target.sets[bl]);
          row.b_max_sym_diff = std::max(row.b_max_sym_diff, sym);
          row.b_min_intersection = first ? inter : std::min(row.b_min_intersection, inter);
          first = false;
        }
      }
      out.counting.push_back(row);
    }
  }
  return out;
}

}  // namespace lsskit
