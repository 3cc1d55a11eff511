#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

// Number of 64-bit words in a vertex mask; the vertex limit is 64 * words.
#ifndef DELTASYS_MASK_WORDS
#define DELTASYS_MASK_WORDS 2
#endif

namespace deltasys {

/// Fixed-width bit set. Bit i stands for vertex i + 1.
template <std::size_t Words>
class BasicMask {
public:
  static constexpr int capacity = static_cast<int>(Words * 64);

  constexpr BasicMask() = default;

  constexpr void set(int bit) noexcept { words_[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
  constexpr void reset(int bit) noexcept { words_[bit >> 6] &= ~(std::uint64_t{1} << (bit & 63)); }
  constexpr bool test(int bit) const noexcept { return (words_[bit >> 6] >> (bit & 63)) & 1U; }

  constexpr int count() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  constexpr bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  constexpr bool any() const noexcept { return !none(); }

  constexpr bool intersects(const BasicMask& o) const noexcept {
    for (std::size_t i = 0; i < Words; ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  /// this ⊆ o
  constexpr bool subset_of(const BasicMask& o) const noexcept {
    for (std::size_t i = 0; i < Words; ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  constexpr BasicMask& operator&=(const BasicMask& o) noexcept {
    for (std::size_t i = 0; i < Words; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  constexpr BasicMask& operator|=(const BasicMask& o) noexcept {
    for (std::size_t i = 0; i < Words; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  constexpr BasicMask& operator-=(const BasicMask& o) noexcept {
    for (std::size_t i = 0; i < Words; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend constexpr BasicMask operator&(BasicMask a, const BasicMask& b) noexcept { return a &= b; }
  friend constexpr BasicMask operator|(BasicMask a, const BasicMask& b) noexcept { return a |= b; }
  friend constexpr BasicMask operator-(BasicMask a, const BasicMask& b) noexcept { return a -= b; }

  friend constexpr bool operator==(const BasicMask&, const BasicMask&) = default;
  friend constexpr auto operator<=>(const BasicMask&, const BasicMask&) = default;

  /// Lowest set bit, or -1.
  constexpr int lowest() const noexcept {
    for (std::size_t i = 0; i < Words; ++i)
      if (words_[i]) return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
    return -1;
  }

  /// Calls f(bit) for every set bit in ascending order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::size_t i = 0; i < Words; ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<int>(i * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

private:
  std::array<std::uint64_t, Words> words_{};
};

using VertexMask = BasicMask<DELTASYS_MASK_WORDS>;

inline constexpr int kMaxVertices = VertexMask::capacity;

struct MaskHash {
  template <std::size_t W>
  std::size_t operator()(const BasicMask<W>& m) const noexcept { return m.hash(); }
};

} // namespace deltasys
