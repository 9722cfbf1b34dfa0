#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace geocross {

/// Growable bitset over edge indices; the detectors' working set type.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t size, bool filled = false) { resize(size, filled); }

  std::size_t size() const noexcept { return size_; }

  void resize(std::size_t size, bool filled = false) {
    const std::size_t old = size_;
    words_.resize((size + 63) / 64, 0);
    size_ = size;
    if (filled) {
      for (std::size_t i = old; i < size; ++i) set(i);
    }
    trim();
  }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const noexcept {
    for (auto w : words_) {
      if (w != 0) return true;
    }
    return false;
  }

  /// Number of common members, without materializing the intersection.
  std::size_t count_and(const EdgeSet& other) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  bool intersects(const EdgeSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  EdgeSet& operator&=(const EdgeSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) noexcept { return a &= b; }

  /// Index of the first member >= from, or size() if none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= size_) return size_;
    std::size_t w = from >> 6;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (bits != 0) return (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
      if (++w == words_.size()) return size_;
      bits = words_[w];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = next(0); i < size_; i = next(i + 1)) f(i);
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  void trim() noexcept {
    if (size_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

}  // namespace geocross
