#include "efrep/integer_set.hpp"

#include <algorithm>
#include <string>

#include "efrep/error.hpp"

namespace efrep {

IntegerSet IntegerSet::from_elements(std::uint64_t n_max,
                                     std::span<const std::uint64_t> elements) {
  IntegerSet s(n_max);
  for (auto k : elements) s.insert(k);
  return s;
}

IntegerSet IntegerSet::interval(std::uint64_t n_max) {
  IntegerSet s(n_max);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  const auto tail = (n_max + 1) & 63;
  if (tail != 0) s.words_.back() = (std::uint64_t{1} << tail) - 1;
  return s;
}

void IntegerSet::insert(std::uint64_t k) {
  if (k > n_max_) {
    throw RangeError("element " + std::to_string(k) + " exceeds n_max " + std::to_string(n_max_));
  }
  words_[k >> 6] |= std::uint64_t{1} << (k & 63);
}

void IntegerSet::erase(std::uint64_t k) {
  if (k > n_max_) return;
  words_[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
}

IntegerSet IntegerSet::truncated(std::uint64_t n_max) const {
  IntegerSet out(n_max);
  const auto n = std::min(out.words_.size(), words_.size());
  std::copy_n(words_.begin(), n, out.words_.begin());
  const auto tail = (n_max + 1) & 63;
  if (tail != 0) out.words_.back() &= (std::uint64_t{1} << tail) - 1;
  return out;
}

std::uint64_t IntegerSet::size() const noexcept {
  std::uint64_t n = 0;
  for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

std::vector<std::uint64_t> IntegerSet::elements() const {
  std::vector<std::uint64_t> out;
  out.reserve(size());
  for_each([&](std::uint64_t k) { out.push_back(k); });
  return out;
}

}  // namespace efrep
