#include "lsskit/family.hpp"

#include <algorithm>
#include <set>

namespace lsskit {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw InvariantError("ground set must have at least one element");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw InvariantError("ground set labels must be pairwise distinct: duplicate '" + l + "'");
    }
  }
}

std::optional<std::uint32_t> GroundSet::find(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

GroundPtr make_ground(std::vector<std::string> labels) {
  return std::make_shared<const GroundSet>(std::move(labels));
}

bool same_ground(const GroundPtr& a, const GroundPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_ground(const GroundPtr& a, const GroundPtr& b, const char* what) {
  if (!same_ground(a, b)) {
    throw GroundMismatchError(std::string("ground set mismatch in ") + what);
  }
}

Subset::Subset(GroundPtr ground, Bitset bits) : ground_(std::move(ground)), bits_(std::move(bits)) {
  if (!ground_) throw InvariantError("subset requires a ground set");
  if (bits_.size() != ground_->size()) {
    throw InvariantError("subset bitmask width does not match its ground set");
  }
}

Subset::Subset(GroundPtr ground, const std::vector<std::uint32_t>& ids)
    : ground_(std::move(ground)), bits_(ground_ ? ground_->size() : 0) {
  if (!ground_) throw InvariantError("subset requires a ground set");
  for (auto id : ids) {
    if (id >= ground_->size()) {
      throw InvariantError("subset member id " + std::to_string(id) + " out of range");
    }
    bits_.set(id);
  }
}

Subset Subset::empty(GroundPtr ground) { return Subset(std::move(ground), std::vector<std::uint32_t>{}); }

Subset Subset::full(GroundPtr ground) {
  Bitset b(ground->size());
  for (std::size_t i = 0; i < ground->size(); ++i) b.set(i);
  return Subset(std::move(ground), std::move(b));
}

Subset Subset::single(GroundPtr ground, std::uint32_t id) {
  return Subset(std::move(ground), std::vector<std::uint32_t>{id});
}

std::vector<std::string> Subset::labels() const {
  std::vector<std::string> out;
  for (auto id : bits_.to_ids()) out.push_back(ground_->label(id));
  return out;
}

bool Subset::operator==(const Subset& o) const {
  return same_ground(ground_, o.ground_) && bits_ == o.bits_;
}

Subset set_union(const Subset& a, const Subset& b) {
  require_same_ground(a.ground(), b.ground(), "set_union");
  return Subset(a.ground(), a.bits() | b.bits());
}

Subset set_intersection(const Subset& a, const Subset& b) {
  require_same_ground(a.ground(), b.ground(), "set_intersection");
  return Subset(a.ground(), a.bits() & b.bits());
}

Subset set_difference(const Subset& a, const Subset& b) {
  require_same_ground(a.ground(), b.ground(), "set_difference");
  return Subset(a.ground(), difference(a.bits(), b.bits()));
}

bool is_subset(const Subset& a, const Subset& b) {
  require_same_ground(a.ground(), b.ground(), "is_subset");
  return a.bits().is_subset_of(b.bits());
}

bool intersects(const Subset& a, const Subset& b) {
  require_same_ground(a.ground(), b.ground(), "intersects");
  return a.bits().intersects(b.bits());
}

SetFamily::SetFamily(GroundPtr ground, std::vector<Subset> elements)
    : ground_(std::move(ground)), elements_(std::move(elements)) {
  if (!ground_) throw InvariantError("family requires a ground set");
  for (const auto& e : elements_) {
    require_same_ground(e.ground(), ground_, "SetFamily element");
  }
}

Subset SetFamily::support() const {
  Bitset acc(ground_->size());
  for (const auto& e : elements_) acc |= e.bits();
  return Subset(ground_, std::move(acc));
}

bool SetFamily::operator==(const SetFamily& o) const {
  if (!same_ground(ground_, o.ground_) || elements_.size() != o.elements_.size()) return false;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].bits() != o.elements_[i].bits()) return false;
  }
  return true;
}

Scale::Scale(SetFamily family) : SetFamily(std::move(family)) {
  for (std::size_t i = 0; i < size(); ++i) {
    if (element(i).is_empty()) {
      throw InvariantError("scale element " + std::to_string(i) + " is empty");
    }
  }
  if (support().count() != ground()->size()) {
    throw InvariantError("scale does not cover its ground set");
  }
}

Scale::Scale(GroundPtr ground, std::vector<Subset> elements)
    : Scale(SetFamily(std::move(ground), std::move(elements))) {}

Scale singleton_cover(const GroundPtr& ground) {
  std::vector<Subset> elems;
  elems.reserve(ground->size());
  for (std::uint32_t i = 0; i < ground->size(); ++i) elems.push_back(Subset::single(ground, i));
  return Scale(ground, std::move(elems));
}

bool is_singleton_cover(const SetFamily& family) {
  if (family.size() != family.ground()->size()) return false;
  for (std::uint32_t i = 0; i < family.size(); ++i) {
    const auto& e = family.element(i);
    if (e.count() != 1 || !e.contains(i)) return false;
  }
  return true;
}

bool is_trivial_cover(const SetFamily& family) {
  if (family.size() != family.ground()->size()) return false;
  std::set<std::uint32_t> covered;
  for (const auto& e : family.elements()) {
    if (e.count() != 1) return false;
    covered.insert(e.ids().front());
  }
  return covered.size() == family.ground()->size();
}

Subset star(const Subset& target, const SetFamily& family) {
  require_same_ground(target.ground(), family.ground(), "star");
  Bitset acc(target.ground()->size());
  for (const auto& e : family.elements()) {
    if (e.bits().intersects(target.bits())) acc |= e.bits();
  }
  return Subset(target.ground(), std::move(acc));
}

SetFamily star_family(const SetFamily& inner, const SetFamily& against) {
  require_same_ground(inner.ground(), against.ground(), "star_family");
  std::vector<Subset> out;
  out.reserve(inner.size());
  for (const auto& e : inner.elements()) out.push_back(star(e, against));
  return SetFamily(inner.ground(), std::move(out));
}

Subset point_star(std::uint32_t id, const SetFamily& family) {
  return star(Subset::single(family.ground(), id), family);
}

Scale iterated_star(const Scale& base, unsigned n) {
  SetFamily level = base;
  for (unsigned i = 0; i < n; ++i) {
    level = star_family(base, level);
  }
  return Scale(std::move(level));
}

std::vector<std::uint32_t> horizon(const Subset& target, const SetFamily& family) {
  require_same_ground(target.ground(), family.ground(), "horizon");
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < family.size(); ++i) {
    if (family.element(i).bits().intersects(target.bits())) out.push_back(i);
  }
  return out;
}

RefinesResult refines(const SetFamily& fine, const SetFamily& coarse) {
  require_same_ground(fine.ground(), coarse.ground(), "refines");
  RefinesResult result;
  result.assignment.reserve(fine.size());
  for (std::uint32_t i = 0; i < fine.size(); ++i) {
    bool placed = false;
    for (std::uint32_t j = 0; j < coarse.size(); ++j) {
      if (fine.element(i).bits().is_subset_of(coarse.element(j).bits())) {
        result.assignment.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) {
      result.refines = false;
      result.offender = i;
      result.assignment.clear();
      return result;
    }
  }
  result.refines = true;
  return result;
}

Scale trivial_extension(const SetFamily& family) {
  std::vector<Subset> out;
  for (const auto& e : family.elements()) {
    if (!e.is_empty()) out.push_back(e);
  }
  const auto& ground = family.ground();
  for (std::uint32_t i = 0; i < ground->size(); ++i) out.push_back(Subset::single(ground, i));
  return Scale(ground, std::move(out));
}

std::size_t multiplicity(const SetFamily& family) {
  std::size_t best = 0;
  for (std::uint32_t x = 0; x < family.ground()->size(); ++x) {
    std::size_t c = 0;
    for (const auto& e : family.elements()) {
      if (e.contains(x)) ++c;
    }
    best = std::max(best, c);
  }
  return best;
}

}  // namespace lsskit
