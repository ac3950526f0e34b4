#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace lsskit {

// Fixed-width dynamic bitset. Every set computed by the library goes through
// this type, so set algebra is exact and iteration order is always ascending.
class Bitset {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Bitset() = default;
  explicit Bitset(std::size_t bits) : nbits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// this \ o
  Bitset& and_not(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset difference(Bitset a, const Bitset& b) { return a.and_not(b); }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  /// Strict weak order: compares the ascending id sequences lexicographically,
  /// so {0,3} < {1,2}. Used wherever a canonical ordering of sets is needed.
  bool lex_less(const Bitset& o) const {
    std::size_t a = first(), b = o.first();
    while (a == b) {
      if (a == npos) return false;
      a = next(a);
      b = o.next(b);
    }
    if (a == npos) return true;   // proper prefix
    if (b == npos) return false;
    return a < b;
  }

  std::size_t first() const { return next_from(0); }

  /// First set bit strictly after `prev`, or npos.
  std::size_t next(std::size_t prev) const { return next_from(prev + 1); }

  std::vector<std::uint32_t> to_ids() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = first(); i != npos; i = next(i)) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }

 private:
  std::size_t next_from(std::size_t start) const {
    if (start >= nbits_) return npos;
    std::size_t wi = start >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t(0) << (start & 63));
    while (true) {
      if (w) {
        std::size_t bit = (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
        return bit < nbits_ ? bit : npos;
      }
      if (++wi >= words_.size()) return npos;
      w = words_[wi];
    }
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace lsskit
