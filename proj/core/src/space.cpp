#include "lsskit/space.hpp"

#include <algorithm>
#include <numeric>

namespace lsskit {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (a == kInfDist || b == kInfDist) return kInfDist;
  std::uint64_t s = a + b;
  return s < a ? kInfDist : s;
}

}  // namespace

InfMetric::InfMetric(GroundPtr ground, std::vector<std::vector<std::uint64_t>> dist)
    : ground_(std::move(ground)) {
  if (!ground_) throw InvariantError("metric requires a ground set");
  const std::size_t n = ground_->size();
  if (dist.size() != n) throw InvariantError("metric matrix has wrong number of rows");
  dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) throw InvariantError("metric matrix row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) dist_[i * n + j] = dist[i][j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_[i * n + i] != 0) throw InvariantError("metric has nonzero diagonal entry");
    for (std::size_t j = 0; j < n; ++j) {
      if (dist_[i * n + j] != dist_[j * n + i]) throw InvariantError("metric is not symmetric");
      if (i != j && dist_[i * n + j] == 0) throw InvariantError("metric vanishes off the diagonal");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (dist_[i * n + k] > sat_add(dist_[i * n + j], dist_[j * n + k])) {
          throw InvariantError("metric violates the triangle inequality");
        }
      }
}

std::uint64_t InfMetric::max_finite() const {
  std::uint64_t best = 0;
  const std::size_t n = ground_->size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t d = dist_[i * n + j];
      if (d != kInfDist) best = std::max(best, d);
    }
  return best;
}

std::uint64_t InfMetric::diameter(const Subset& a) const {
  require_same_ground(a.ground(), ground_, "InfMetric::diameter");
  std::uint64_t best = 0;
  auto ids = a.ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      std::uint64_t d = (*this)(ids[i], ids[j]);
      if (d == kInfDist) return kInfDist;
      best = std::max(best, d);
    }
  return best;
}

Scale ball_cover(const InfMetric& metric, std::uint64_t radius) {
  const auto& ground = metric.ground();
  std::vector<Subset> balls;
  balls.reserve(ground->size());
  for (std::uint32_t c = 0; c < ground->size(); ++c) {
    Bitset b(ground->size());
    for (std::uint32_t y = 0; y < ground->size(); ++y) {
      std::uint64_t d = metric(c, y);
      if (d != kInfDist && d <= radius) b.set(y);
    }
    balls.emplace_back(ground, std::move(b));
  }
  return Scale(ground, std::move(balls));
}

LssSpace::LssSpace(GroundPtr ground, std::vector<Scale> generators)
    : ground_(std::move(ground)),
      generators_(std::move(generators)),
      maximal_bounded_(singleton_cover(ground_)) {
  for (const auto& g : generators_) {
    require_same_ground(g.ground(), ground_, "LssSpace generator");
  }

  // Antichain fixpoint over maximal candidates: merging two overlapping
  // bounded sets is exactly a union-find over the points they touch.
  const std::size_t n = ground_->size();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (const auto& g : generators_) {
    for (const auto& e : g.elements()) {
      std::size_t head = e.bits().first();
      for (std::size_t i = e.bits().next(head); i != Bitset::npos; i = e.bits().next(i)) {
        unite(static_cast<std::uint32_t>(head), static_cast<std::uint32_t>(i));
      }
    }
  }

  component_of_.assign(n, 0);
  std::vector<std::uint32_t> root_to_comp(n, ~std::uint32_t(0));
  std::vector<Subset> blocks;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t r = find(v);
    if (root_to_comp[r] == ~std::uint32_t(0)) {
      root_to_comp[r] = static_cast<std::uint32_t>(blocks.size());
      blocks.push_back(Subset::empty(ground_));
    }
    component_of_[v] = root_to_comp[r];
  }
  std::vector<Bitset> masks(blocks.size(), Bitset(n));
  for (std::uint32_t v = 0; v < n; ++v) masks[component_of_[v]].set(v);
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] = Subset(ground_, masks[i]);
  maximal_bounded_ = Scale(ground_, std::move(blocks));
}

bool LssSpace::is_bounded(const Subset& a) const {
  require_same_ground(a.ground(), ground_, "LssSpace::is_bounded");
  if (a.is_empty()) return false;
  std::size_t head = a.bits().first();
  std::uint32_t comp = component_of_[head];
  for (std::size_t i = a.bits().next(head); i != Bitset::npos; i = a.bits().next(i)) {
    if (component_of_[i] != comp) return false;
  }
  return true;
}

LssSpace build_lss(GroundPtr ground, std::vector<Scale> generators) {
  return LssSpace(std::move(ground), std::move(generators));
}

SpacePtr make_space(GroundPtr ground, std::vector<Scale> generators) {
  return std::make_shared<const LssSpace>(std::move(ground), std::move(generators));
}

BoundednessReport is_uniformly_bounded(const SetFamily& family, const LssSpace& space) {
  require_same_ground(family.ground(), space.ground(), "is_uniformly_bounded");
  BoundednessReport report;
  report.dominated_by.reserve(family.size());
  for (std::uint32_t i = 0; i < family.size(); ++i) {
    const auto& e = family.element(i);
    if (e.is_empty()) {
      report.dominated_by.push_back(std::nullopt);
      continue;
    }
    if (e.count() >= 2 && !space.is_bounded(e)) {
      report.uniformly_bounded = false;
      report.offender = i;
      report.dominated_by.clear();
      return report;
    }
    report.dominated_by.push_back(space.component_of(static_cast<std::uint32_t>(e.bits().first())));
  }
  report.uniformly_bounded = true;
  return report;
}

std::vector<std::uint32_t> subspace_id_map(const Subset& y) { return y.ids(); }

LssSpace subspace(const LssSpace& space, const Subset& y) {
  require_same_ground(y.ground(), space.ground(), "subspace");
  if (y.is_empty()) throw PreconditionError("subspace of an empty subset");

  auto old_ids = y.ids();
  std::vector<std::string> labels;
  labels.reserve(old_ids.size());
  for (auto id : old_ids) labels.push_back(space.ground()->label(id));
  GroundPtr sub_ground = make_ground(std::move(labels));

  std::vector<std::uint32_t> new_of_old(space.ground()->size(), ~std::uint32_t(0));
  for (std::uint32_t i = 0; i < old_ids.size(); ++i) new_of_old[old_ids[i]] = i;

  auto trace = [&](const Subset& e) {
    Bitset b(sub_ground->size());
    for (std::size_t i = e.bits().first(); i != Bitset::npos; i = e.bits().next(i)) {
      if (y.contains(static_cast<std::uint32_t>(i))) b.set(new_of_old[i]);
    }
    return Subset(sub_ground, std::move(b));
  };

  auto traced_scale = [&](const SetFamily& g) {
    std::vector<Subset> elems;
    for (const auto& e : g.elements()) {
      Subset t = trace(e);
      if (!t.is_empty()) elems.push_back(std::move(t));
    }
    for (std::uint32_t i = 0; i < sub_ground->size(); ++i) elems.push_back(Subset::single(sub_ground, i));
    return Scale(sub_ground, std::move(elems));
  };

  std::vector<Scale> gens;
  gens.reserve(space.generators().size() + 1);
  for (const auto& g : space.generators()) gens.push_back(traced_scale(g));
  // Trace of the maximal bounded scale, so traces of parent-bounded sets
  // remain bounded even when no generator element realizes them directly.
  gens.push_back(traced_scale(space.maximal_bounded()));

  return LssSpace(sub_ground, std::move(gens));
}

LssSpace metric_lss(const InfMetric& metric) {
  std::uint64_t d = metric.max_finite();
  if (d == 0) d = 1;
  std::vector<Scale> gens;
  gens.reserve(static_cast<std::size_t>(d));
  for (std::uint64_t r = 1; r <= d; ++r) gens.push_back(ball_cover(metric, r));
  return LssSpace(metric.ground(), std::move(gens));
}

}  // namespace lsskit
