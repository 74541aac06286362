#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace efrep {

// A finite set A of integers in [0, n_max], stored as a packed bit vector with
// bit k = chi_A(k).
class IntegerSet {
 public:
  IntegerSet() : IntegerSet(0) {}
  explicit IntegerSet(std::uint64_t n_max)
      : n_max_(n_max), words_(static_cast<std::size_t>(n_max / 64 + 1), 0) {}

  static IntegerSet from_elements(std::uint64_t n_max, std::span<const std::uint64_t> elements);
  // {0, 1, ..., n_max}
  static IntegerSet interval(std::uint64_t n_max);

  std::uint64_t n_max() const noexcept { return n_max_; }

  bool contains(std::uint64_t k) const noexcept {
    return k <= n_max_ && ((words_[k >> 6] >> (k & 63)) & 1u) != 0;
  }
  void insert(std::uint64_t k);
  void erase(std::uint64_t k);

  // Elements <= n_max, re-homed in a set with that bound (n_max may exceed
  // the current bound).
  IntegerSet truncated(std::uint64_t n_max) const;

  std::uint64_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  // Elements in increasing order.
  std::vector<std::uint64_t> elements() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(static_cast<std::uint64_t>(w) * 64 + static_cast<std::uint64_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

 private:
  std::uint64_t n_max_;
  std::vector<std::uint64_t> words_;
};

}  // namespace efrep
