#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace deltasys {

/// Exact binomial coefficient; throws on 64-bit overflow.
inline std::uint64_t binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    const auto num = static_cast<std::uint64_t>(n - r + i);
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    const std::uint64_t reduced = result / g;
    const std::uint64_t den = static_cast<std::uint64_t>(i) / g;
    if (reduced > UINT64_MAX / num) throw ParameterError("binomial coefficient overflows 64 bits");
    result = reduced * num / den;
  }
  return result;
}

/// Calls f(indices) for every r-subset of {0..n-1}, in lexicographic order.
/// Stops early if f returns false.
template <class F>
void for_each_combination(int n, int r, F&& f) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if constexpr (std::is_same_v<decltype(f(std::span<const int>(idx))), bool>) {
      if (!f(std::span<const int>(idx))) return;
    } else {
      f(std::span<const int>(idx));
    }
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

/// Calls f(parts) for every composition of total into `parts` positive integers,
/// in lexicographic order.
template <class F>
void for_each_composition(int total, int parts, F&& f) {
  if (parts <= 0 || total < parts) return;
  std::vector<int> c(static_cast<std::size_t>(parts), 1);
  c.back() = total - parts + 1;
  while (true) {
    if constexpr (std::is_same_v<decltype(f(std::span<const int>(c))), bool>) {
      if (!f(std::span<const int>(c))) return;
    } else {
      f(std::span<const int>(c));
    }
    // rightmost position whose suffix can give up one unit
    int i = parts - 2;
    int suffix = c.back();
    while (i >= 0 && suffix < (parts - 1 - i) + 1) {
      suffix += c[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < parts - 1; ++j) c[static_cast<std::size_t>(j)] = 1;
    c.back() = suffix - 1 - (parts - 2 - i);
  }
}

/// Growable bit set over edge indices.
class EdgeBits {
public:
  EdgeBits() = default;
  explicit EdgeBits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  EdgeBits& operator&=(const EdgeBits& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  EdgeBits& operator-=(const EdgeBits& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend EdgeBits operator&(EdgeBits a, const EdgeBits& b) noexcept { return a &= b; }

  /// Clears every index <= i.
  void clear_through(std::size_t i) noexcept {
    const std::size_t w = i >> 6;
    for (std::size_t j = 0; j < w; ++j) words_[j] = 0;
    const unsigned bit = static_cast<unsigned>(i & 63);
    words_[w] &= bit == 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const EdgeBits&, const EdgeBits&) = default;

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace deltasys
