#include "lsskit/maps.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsskit {

SpaceMap::SpaceMap(SpacePtr src, SpacePtr tgt, std::vector<std::uint32_t> tbl)
    : source(std::move(src)), target(std::move(tgt)), table(std::move(tbl)) {
  if (!source || !target) throw InvariantError("space map requires source and target spaces");
  if (table.size() != source->ground()->size()) {
    throw InvariantError("space map table is not total on the source");
  }
  for (auto v : table) {
    if (v >= target->ground()->size()) {
      throw InvariantError("space map table value out of range");
    }
  }
}

Subset SpaceMap::image() const {
  Bitset b(target->ground()->size());
  for (auto v : table) b.set(v);
  return Subset(target->ground(), std::move(b));
}

Subset SpaceMap::apply(const Subset& a) const {
  require_same_ground(a.ground(), source->ground(), "SpaceMap::apply");
  Bitset b(target->ground()->size());
  for (std::size_t i = a.bits().first(); i != Bitset::npos; i = a.bits().next(i)) b.set(table[i]);
  return Subset(target->ground(), std::move(b));
}

Subset SpaceMap::preimage(const Subset& b) const {
  require_same_ground(b.ground(), target->ground(), "SpaceMap::preimage");
  Bitset a(source->ground()->size());
  for (std::uint32_t x = 0; x < table.size(); ++x) {
    if (b.contains(table[x])) a.set(x);
  }
  return Subset(source->ground(), std::move(a));
}

SetFamily SpaceMap::push_forward(const SetFamily& family) const {
  require_same_ground(family.ground(), source->ground(), "SpaceMap::push_forward");
  std::vector<Subset> out;
  out.reserve(family.size());
  for (const auto& e : family.elements()) out.push_back(apply(e));
  return SetFamily(target->ground(), std::move(out));
}

SetFamily SpaceMap::pull_back(const SetFamily& family) const {
  require_same_ground(family.ground(), target->ground(), "SpaceMap::pull_back");
  std::vector<Subset> out;
  out.reserve(family.size());
  for (const auto& e : family.elements()) out.push_back(preimage(e));
  return SetFamily(source->ground(), std::move(out));
}

std::size_t SpaceMap::max_fiber() const {
  std::vector<std::size_t> cnt(target->ground()->size(), 0);
  for (auto v : table) ++cnt[v];
  return *std::max_element(cnt.begin(), cnt.end());
}

SpaceMap SpaceMap::identity(const SpacePtr& space) {
  std::vector<std::uint32_t> tbl(space->ground()->size());
  for (std::uint32_t i = 0; i < tbl.size(); ++i) tbl[i] = i;
  return SpaceMap(space, space, std::move(tbl));
}

SpaceMap compose(const SpaceMap& f, const SpaceMap& g) {
  require_same_ground(f.target->ground(), g.source->ground(), "compose");
  std::vector<std::uint32_t> tbl(f.table.size());
  for (std::uint32_t x = 0; x < tbl.size(); ++x) tbl[x] = g.table[f.table[x]];
  return SpaceMap(f.source, g.target, std::move(tbl));
}

BornologousCheck is_bornologous(const SpaceMap& f) {
  BornologousCheck check;
  for (const auto& block : f.source->maximal_bounded().elements()) {
    if (!f.target->is_bounded(f.apply(block))) {
      check.ok = false;
      check.counterexample = block;
      return check;
    }
  }
  check.ok = true;
  return check;
}

EmbeddingCheck is_coarse_embedding(const SpaceMap& f) {
  EmbeddingCheck check;
  for (const auto& block : f.target->maximal_bounded().elements()) {
    Subset pre = f.preimage(block);
    if (pre.count() >= 2 && !f.source->is_bounded(pre)) {
      check.ok = false;
      check.counterexample = block;
      return check;
    }
  }
  check.ok = true;
  return check;
}

SurjectivityCheck is_coarsely_surjective(const SpaceMap& f) {
  SurjectivityCheck check;
  Subset im = f.image();
  for (const auto& block : f.target->maximal_bounded().elements()) {
    if (!intersects(block, im)) {
      check.ok = false;
      check.missed = block;
      return check;
    }
  }
  check.ok = true;
  check.witness = f.target->maximal_bounded();
  return check;
}

ClosenessCheck are_close(const SpaceMap& f, const SpaceMap& g) {
  if (!same_ground(f.source->ground(), g.source->ground()) ||
      !same_ground(f.target->ground(), g.target->ground())) {
    throw GroundMismatchError("are_close requires maps with a common source and target");
  }
  ClosenessCheck check;
  for (std::uint32_t x = 0; x < f.table.size(); ++x) {
    if (f.target->component_of(f.table[x]) != f.target->component_of(g.table[x])) {
      check.ok = false;
      check.offender = x;
      return check;
    }
  }
  check.ok = true;
  check.witness = f.target->maximal_bounded();
  return check;
}

namespace {

// Deterministic section: for each y, the smallest-id point of the exact
// fiber when y is hit, otherwise the smallest-id x whose image shares y's
// maximal bounded set. Either choice lands f(x_y) in a bounded set with y,
// which is all the construction needs; preferring exact fibers makes the
// inverse of a bijection its exact inverse.
std::optional<SpaceMap> canonical_section(const SpaceMap& f) {
  const auto& tgt = *f.target;
  std::vector<std::uint32_t> by_fiber(tgt.ground()->size(), ~std::uint32_t(0));
  std::vector<std::uint32_t> by_component(tgt.component_count(), ~std::uint32_t(0));
  for (std::uint32_t x = 0; x < f.table.size(); ++x) {
    if (by_fiber[f.table[x]] == ~std::uint32_t(0)) by_fiber[f.table[x]] = x;
    std::uint32_t c = tgt.component_of(f.table[x]);
    if (by_component[c] == ~std::uint32_t(0)) by_component[c] = x;
  }
  std::vector<std::uint32_t> tbl(tgt.ground()->size());
  for (std::uint32_t y = 0; y < tbl.size(); ++y) {
    std::uint32_t x = by_fiber[y] != ~std::uint32_t(0) ? by_fiber[y]
                                                       : by_component[tgt.component_of(y)];
    if (x == ~std::uint32_t(0)) return std::nullopt;  // a component misses the image
    tbl[y] = x;
  }
  return SpaceMap(f.target, f.source, std::move(tbl));
}

}  // namespace

SpaceMap construct_coarse_inverse(const SpaceMap& f) {
  if (!is_bornologous(f).ok || !is_coarse_embedding(f).ok || !is_coarsely_surjective(f).ok) {
    throw PreconditionError(
        "construct_coarse_inverse requires a bornologous coarse embedding that is coarsely "
        "surjective");
  }
  auto g = canonical_section(f);
  if (!g) throw PreconditionError("construct_coarse_inverse: a target component misses the image");
  // Post checks; these hold whenever the preconditions do.
  if (!is_bornologous(*g).ok) throw std::logic_error("coarse inverse is not bornologous");
  if (!are_close(compose(*g, f), SpaceMap::identity(f.target)).ok) {
    throw std::logic_error("f o g is not close to the identity");
  }
  if (!are_close(compose(f, *g), SpaceMap::identity(f.source)).ok) {
    throw std::logic_error("g o f is not close to the identity");
  }
  return *g;
}

MapReport is_coarse_equivalence(const SpaceMap& f) {
  MapReport report;
  report.bornologous = is_bornologous(f);
  report.embedding = is_coarse_embedding(f);
  report.surjectivity = is_coarsely_surjective(f);

  // Route (a): exhibit an inverse up to closeness. The canonical section is
  // valid whenever any inverse is, so searching beyond it is unnecessary.
  bool route_a = false;
  std::optional<SpaceMap> inverse;
  std::optional<Scale> close_tgt, close_src;
  if (report.bornologous.ok) {
    if (auto g = canonical_section(f)) {
      auto fg = are_close(compose(*g, f), SpaceMap::identity(f.target));
      auto gf = are_close(compose(f, *g), SpaceMap::identity(f.source));
      bool g_born = is_bornologous(*g).ok;
      if (fg.ok && gf.ok && g_born) {
        route_a = true;
        inverse = std::move(*g);
        close_tgt = fg.witness;
        close_src = gf.witness;
      }
    }
  }

  // Route (b): embedding + coarse surjectivity (for a bornologous map).
  bool route_b = report.bornologous.ok && report.embedding.ok && report.surjectivity.ok;

  if (route_a != route_b) {
    throw std::logic_error("coarse equivalence routes disagree; this is a bug");
  }

  report.equivalence = route_a;
  if (route_a) {
    report.inverse = std::move(inverse);
    report.closeness_on_target = std::move(close_tgt);
    report.closeness_on_source = std::move(close_src);
  }
  return report;
}

}  // namespace lsskit
