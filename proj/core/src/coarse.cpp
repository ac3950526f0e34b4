#include "lsskit/coarse.hpp"

#include <algorithm>
#include <stdexcept>

#include "lsskit/nets.hpp"

namespace lsskit {

Entourage::Entourage(GroundPtr ground)
    : ground_(std::move(ground)), rows_(ground_ ? ground_->size() : 0, Bitset(ground_ ? ground_->size() : 0)) {
  if (!ground_) throw InvariantError("entourage requires a ground set");
}

Entourage::Entourage(GroundPtr ground,
                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs)
    : Entourage(std::move(ground)) {
  for (const auto& [x, y] : pairs) {
    if (x >= ground_->size() || y >= ground_->size()) {
      throw InvariantError("entourage pair out of range");
    }
    rows_[x].set(y);
  }
}

std::size_t Entourage::pair_count() const {
  std::size_t c = 0;
  for (const auto& r : rows_) c += r.count();
  return c;
}

bool Entourage::is_subset_of(const Entourage& o) const {
  require_same_ground(ground_, o.ground_, "Entourage::is_subset_of");
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    if (!rows_[x].is_subset_of(o.rows_[x])) return false;
  }
  return true;
}

bool Entourage::operator==(const Entourage& o) const {
  if (!same_ground(ground_, o.ground_)) return false;
  return rows_ == o.rows_;
}

Entourage Entourage::inverse() const {
  Entourage out(ground_);
  for (std::uint32_t x = 0; x < rows_.size(); ++x) {
    for (std::size_t y = rows_[x].first(); y != Bitset::npos; y = rows_[x].next(y)) {
      out.rows_[y].set(x);
    }
  }
  return out;
}

Entourage Entourage::compose(const Entourage& o) const {
  require_same_ground(ground_, o.ground_, "Entourage::compose");
  Entourage out(ground_);
  for (std::uint32_t x = 0; x < rows_.size(); ++x) {
    for (std::size_t y = rows_[x].first(); y != Bitset::npos; y = rows_[x].next(y)) {
      out.rows_[x] |= o.rows_[y];
    }
  }
  return out;
}

Entourage& Entourage::operator|=(const Entourage& o) {
  require_same_ground(ground_, o.ground_, "Entourage::operator|=");
  for (std::size_t x = 0; x < rows_.size(); ++x) rows_[x] |= o.rows_[x];
  return *this;
}

Entourage Entourage::diagonal(GroundPtr ground) {
  Entourage out(std::move(ground));
  for (std::uint32_t x = 0; x < out.rows_.size(); ++x) out.rows_[x].set(x);
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Entourage::pairs() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t x = 0; x < rows_.size(); ++x) {
    for (std::size_t y = rows_[x].first(); y != Bitset::npos; y = rows_[x].next(y)) {
      out.push_back({x, static_cast<std::uint32_t>(y)});
    }
  }
  return out;
}

Entourage squares_of(const SetFamily& family) {
  Entourage out(family.ground());
  for (const auto& e : family.elements()) {
    for (std::size_t x = e.bits().first(); x != Bitset::npos; x = e.bits().next(x)) {
      for (std::size_t y = e.bits().first(); y != Bitset::npos; y = e.bits().next(y)) {
        out.set(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
      }
    }
  }
  return out;
}

CoarseSpace::CoarseSpace(GroundPtr ground, std::vector<Entourage> generators)
    : ground_(std::move(ground)),
      generators_(std::move(generators)),
      max_controlled_(Entourage::diagonal(ground_)) {
  for (const auto& g : generators_) {
    require_same_ground(g.ground(), ground_, "CoarseSpace generator");
    max_controlled_ |= g;
  }
  // Fixpoint under inverse and composition; unions are the running |=.
  while (true) {
    Entourage next = max_controlled_;
    next |= max_controlled_.inverse();
    next |= max_controlled_.compose(max_controlled_);
    if (next == max_controlled_) break;
    max_controlled_ = std::move(next);
  }
}

CoarseSpace coarse_closure(GroundPtr ground, std::vector<Entourage> generators) {
  return CoarseSpace(std::move(ground), std::move(generators));
}

CoarseSpace lss_to_coarse(const LssSpace& space) {
  std::vector<Entourage> gens;
  gens.push_back(squares_of(space.maximal_bounded()));
  return CoarseSpace(space.ground(), std::move(gens));
}

LssSpace coarse_to_lss(const CoarseSpace& cs) {
  // The maximum controlled set is an equivalence relation; its classes are
  // the maximal sets B with B x B controlled.
  const auto& ground = cs.ground();
  const Entourage& e = cs.max_controlled();
  std::vector<Subset> blocks;
  Bitset seen(ground->size());
  for (std::uint32_t x = 0; x < ground->size(); ++x) {
    if (seen.test(x)) continue;
    Bitset cls = e.row(x);
    cls.set(x);
    seen |= cls;
    blocks.emplace_back(ground, cls);
  }
  for (std::uint32_t x = 0; x < ground->size(); ++x) blocks.push_back(Subset::single(ground, x));
  std::vector<Scale> gens;
  gens.emplace_back(ground, std::move(blocks));
  return LssSpace(ground, std::move(gens));
}

LocalFinitenessReport is_uniformly_locally_finite(const CoarseSpace& cs) {
  LocalFinitenessReport report;
  report.uniformly_locally_finite = true;
  const Entourage& e = cs.max_controlled();
  // |T[x]| = number of y with (y, x) in T; the maximum is symmetric, so rows
  // and columns agree.
  for (std::uint32_t x = 0; x < cs.ground()->size(); ++x) {
    report.constant = std::max(report.constant, e.row(x).count());
  }
  return report;
}

namespace {

using Triple = std::array<std::uint32_t, 3>;

std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> slices_of(
    const std::vector<Triple>& triples, std::size_t n) {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out(n);
  for (const auto& t : triples) out[t[0]].push_back({t[1], t[2]});
  for (auto& s : out) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return out;
}

std::size_t pair_intersection(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& a,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& b) {
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

}  // namespace

SakoReport verify_sako_witness(const CoarseSpace& cs, const SakoWitness& witness) {
  require_same_ground(witness.test.ground(), cs.ground(), "verify_sako_witness test");
  require_same_ground(witness.support.ground(), cs.ground(), "verify_sako_witness support");
  if (!cs.is_controlled(witness.test) || !cs.is_controlled(witness.support)) {
    throw PreconditionError("verify_sako_witness: test and support must be controlled");
  }

  const std::size_t n = cs.ground()->size();
  SakoReport report;
  report.ok = true;

  auto slices = slices_of(witness.triples, n);

  for (std::uint32_t x = 0; x < n; ++x) {
    bool diag = false;
    for (const auto& [y, lvl] : slices[x]) {
      if (y == x && lvl == 1) diag = true;
      if (lvl < 1 || !witness.support.test(x, y)) {
        report.ok = false;
        report.violations.push_back({WitnessViolationKind::Support, x, y, lvl, 0});
      }
    }
    if (!diag) {
      report.ok = false;
      report.violations.push_back({WitnessViolationKind::Diagonal, x, 0, 0, 0});
    }
  }

  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (!witness.test.test(x, y)) continue;
      ++report.pairs_checked;
      std::size_t inter = pair_intersection(slices[x], slices[y]);
      std::size_t sym = slices[x].size() + slices[y].size() - 2 * inter;
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

SakoWitness witness_lss_to_sako(const LssSpace& space, const PropertyAWitness& witness) {
  if (!verify_witness(space, witness).ok) {
    throw PreconditionError("witness_lss_to_sako: witness does not verify");
  }
  SakoWitness out{witness.epsilon, squares_of(witness.test_scale),
                  squares_of(witness.support_scale), {}};
  for (std::uint32_t x = 0; x < witness.sets.size(); ++x) {
    for (const auto& [z, lvl] : witness.sets[x]) out.triples.push_back({x, z, lvl});
  }
  std::sort(out.triples.begin(), out.triples.end());
  return out;
}

PropertyAWitness witness_sako_to_lss(const CoarseSpace& cs, const SakoWitness& witness) {
  if (!verify_sako_witness(cs, witness).ok) {
    throw PreconditionError("witness_sako_to_lss: witness does not verify");
  }
  const auto& ground = cs.ground();
  const std::size_t n = ground->size();
  auto slices = slices_of(witness.triples, n);

  // Support scale: slice supports V_x, trivially extended. Controlledness of
  // their squares factors through S^{-1} ∘ S; assert it.
  std::vector<Subset> supports;
  for (std::uint32_t x = 0; x < n; ++x) {
    Bitset v(n);
    for (const auto& [y, lvl] : slices[x]) v.set(y);
    supports.emplace_back(ground, std::move(v));
  }
  SetFamily support_family(ground, supports);
  Entourage s_comp = witness.support.inverse().compose(witness.support);
  if (!squares_of(support_family).is_subset_of(s_comp) || !cs.is_controlled(s_comp)) {
    throw std::logic_error("slice supports escape the support composition; this is a bug");
  }
  Scale support_scale = trivial_extension(support_family);

  // Test scale: maximal squares inside T, trivially extended. A square needs
  // both diagonal points and both mixed pairs inside T.
  Bitset loops(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (witness.test.test(x, x)) loops.set(x);
  }
  std::vector<Subset> test_elems;
  {
    auto loop_ids = loops.to_ids();
    if (!loop_ids.empty()) {
      // Incompatibility edges on loop vertices: x -- y iff {x,y} does not
      // square into T. A scale whose non-singleton elements are exactly these
      // edges has them as its proximity relation, so maximal squares are the
      // maximal non-adjacent sets.
      std::vector<Subset> edge_elems;
      for (std::size_t a = 0; a < loop_ids.size(); ++a) {
        for (std::size_t b = a + 1; b < loop_ids.size(); ++b) {
          std::uint32_t x = loop_ids[a], y = loop_ids[b];
          if (!(witness.test.test(x, y) && witness.test.test(y, x))) {
            edge_elems.push_back(Subset(ground, std::vector<std::uint32_t>{x, y}));
          }
        }
      }
      for (std::uint32_t x = 0; x < n; ++x) edge_elems.push_back(Subset::single(ground, x));
      Scale incompat_scale(ground, std::move(edge_elems));
      Bitset loop_subset(n);
      for (auto id : loop_ids) loop_subset.set(id);
      OracleLimits clique_limits;
      clique_limits.net_enumeration_ambient = n;
      for (auto& clique :
           enumerate_nets(Subset(ground, loop_subset), incompat_scale, clique_limits)) {
        if (!clique.is_empty()) test_elems.push_back(std::move(clique));
      }
    }
  }
  SetFamily test_family(ground, std::move(test_elems));
  Scale test_scale = trivial_extension(test_family);

  return PropertyAWitness{witness.epsilon, std::move(test_scale), std::move(support_scale),
                          std::move(slices)};
}

}  // namespace lsskit
