#pragma once

#include <array>
#include <cstdint>

namespace efrep {

// SplitMix64 step: advances `state` by the golden-ratio increment and returns
// the mixed output.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for the independent stream number `index` derived from `seed`.
constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t s = seed ^ ((index + 1) * 0x9E3779B97F4A7C15ull);
  return splitmix64_next(s);
}

// xoshiro256** with its state filled by four SplitMix64 outputs of the seed.
//
//   uniform_below(m): rejection sampling on the top ceil(log2 m) bits
//   uniform_real():   53-bit mantissa draw in [0, 1)
class Xoshiro256 {
 public:
  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  static constexpr Xoshiro256 from_state(const std::array<std::uint64_t, 4>& state) noexcept {
    Xoshiro256 g(0);
    g.s_ = state;
    return g;
  }

  constexpr std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, m); m >= 1.
  constexpr std::uint64_t uniform_below(std::uint64_t m) noexcept {
    if (m <= 1) return 0;
    int bits = 64;
    while (bits > 1 && ((m - 1) >> (bits - 1)) == 0) --bits;
    for (;;) {
      const std::uint64_t x = next() >> (64 - bits);
      if (x < m) return x;
    }
  }

  constexpr double uniform_real() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  using result_type = std::uint64_t;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  constexpr result_type operator()() noexcept { return next(); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace efrep
