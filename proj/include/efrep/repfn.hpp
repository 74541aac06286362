#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "efrep/integer_set.hpp"

namespace efrep {

// R(n) = #{(a, a') in A x A : a + a' = n}, ordered pairs, for 0 <= n <= n_max.
//
// Truncation contract: R(n) only depends on elements <= n, so the profile of a
// truncated set agrees with that of any extension for every n <= n_max.
struct RepProfile {
  std::vector<std::uint64_t> R;

  std::uint64_t n_max() const noexcept { return R.empty() ? 0 : R.size() - 1; }
  friend bool operator==(const RepProfile&, const RepProfile&) = default;
};

// S(N) = sum_{n <= N} R(n).
struct CumulativeProfile {
  std::vector<std::uint64_t> S;

  std::uint64_t n_max() const noexcept { return S.empty() ? 0 : S.size() - 1; }
  friend bool operator==(const CumulativeProfile&, const CumulativeProfile&) = default;
};

enum class Engine { kNaive, kBitset, kFft };

// Largest n_max accepted by the fft engine.
inline constexpr std::uint64_t kFftMaxNMax = std::uint64_t{1} << 26;
// A rounded coefficient this far from its floating value trips the guard.
inline constexpr double kFftRoundingGuard = 0.25;

// Double loop over elements, O(|A|^2).
RepProfile repfn_naive(const IntegerSet& a);

// bitset: wordwise AND/popcount of A against the reversed window of A.
// fft: squares the 0/1 sequence with a real transform and rounds; throws
// ExactnessError when n_max > kFftMaxNMax or a coefficient fails the guard.
// `workers` > 1 splits the bitset sweep over threads; output is identical.
RepProfile repfn_fast(const IntegerSet& a, Engine engine, unsigned workers = 1);

// fft when allowed, falling back to bitset if the exactness guard trips.
RepProfile repfn_auto(const IntegerSet& a, unsigned workers = 1);

RepProfile repfn(const IntegerSet& a, Engine engine, unsigned workers = 1);

// Exact prefix sums; throws OverflowError rather than wrapping.
CumulativeProfile cumulative_rep(const RepProfile& r);

// CSV with header `n,R,S`.
void write_profile_csv(std::ostream& os, const RepProfile& r, const CumulativeProfile& s);

const char* engine_name(Engine e) noexcept;
Engine parse_engine(const std::string& name);

}  // namespace efrep
