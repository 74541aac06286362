#include "efrep/repfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <string>
#include <thread>

#include "efrep/error.hpp"
#include "fft.hpp"

namespace efrep {
namespace {

// Bit reversal of A inside [0, n_max]: bit j of the result is chi_A(n_max - j).
// One zero word of padding so 64-bit windows can always read word w + 1.
std::vector<std::uint64_t> reversed_bits(const IntegerSet& a) {
  const auto n_max = a.n_max();
  std::vector<std::uint64_t> rev(a.words().size() + 1, 0);
  a.for_each([&](std::uint64_t k) {
    const auto j = n_max - k;
    rev[j >> 6] |= std::uint64_t{1} << (j & 63);
  });
  return rev;
}

inline std::uint64_t window(const std::vector<std::uint64_t>& bits, std::uint64_t pos) noexcept {
  const auto w = static_cast<std::size_t>(pos >> 6);
  const auto o = static_cast<unsigned>(pos & 63);
  if (o == 0) return bits[w];
  return (bits[w] >> o) | (bits[w + 1] << (64 - o));
}

// R(n) = 2 * #{k < n/2 : k in A, n-k in A} + [n even and n/2 in A].
std::uint64_t bitset_count(const IntegerSet& a, const std::vector<std::uint64_t>& rev,
                           std::uint64_t n) {
  const auto words = a.words();
  const auto shift = a.n_max() - n;
  const std::uint64_t half = (n + 1) / 2;  // k in [0, half) has k < n - k
  std::uint64_t count = 0;
  const auto full_words = half >> 6;
  for (std::uint64_t w = 0; w < full_words; ++w) {
    count += static_cast<std::uint64_t>(
        std::popcount(words[w] & window(rev, shift + (w << 6))));
  }
  const auto tail = half & 63;
  if (tail != 0) {
    const auto mask = (std::uint64_t{1} << tail) - 1;
    count += static_cast<std::uint64_t>(
        std::popcount(words[full_words] & window(rev, shift + (full_words << 6)) & mask));
  }
  count *= 2;
  if ((n & 1) == 0 && a.contains(n / 2)) ++count;
  return count;
}

RepProfile repfn_bitset(const IntegerSet& a, unsigned workers) {
  const auto n_max = a.n_max();
  RepProfile out{std::vector<std::uint64_t>(n_max + 1, 0)};
  if (a.empty()) return out;
  const auto rev = reversed_bits(a);

  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::uint64_t n = 0; n <= n_max; ++n) out.R[n] = bitset_count(a, rev, n);
    return out;
  }
  // Strided partition keeps the O(n) per-index cost balanced.
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t n = t; n <= n_max; n += workers) out.R[n] = bitset_count(a, rev, n);
    });
  }
  pool.clear();
  return out;
}

RepProfile repfn_fft(const IntegerSet& a) {
  const auto n_max = a.n_max();
  if (n_max > kFftMaxNMax) {
    throw ExactnessError("fft engine limited to n_max <= 2^26, got " + std::to_string(n_max));
  }
  RepProfile out{std::vector<std::uint64_t>(n_max + 1, 0)};
  if (a.empty()) return out;
  std::vector<double> chi(n_max + 1, 0.0);
  a.for_each([&](std::uint64_t k) { chi[k] = 1.0; });
  const auto sq = detail::fft_self_convolve(chi, n_max + 1);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const double r = std::nearbyint(sq[n]);
    if (std::abs(r - sq[n]) >= kFftRoundingGuard || r < 0.0) {
      throw ExactnessError("fft coefficient " + std::to_string(n) + " = " +
                           std::to_string(sq[n]) + " is not within the rounding guard");
    }
    out.R[n] = static_cast<std::uint64_t>(r);
  }
  return out;
}

}  // namespace

RepProfile repfn_naive(const IntegerSet& a) {
  const auto n_max = a.n_max();
  RepProfile out{std::vector<std::uint64_t>(n_max + 1, 0)};
  const auto el = a.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = 0; j < el.size(); ++j) {
      const auto n = el[i] + el[j];
      if (n > n_max) break;
      ++out.R[n];
    }
  }
  return out;
}

RepProfile repfn_fast(const IntegerSet& a, Engine engine, unsigned workers) {
  switch (engine) {
    case Engine::kBitset:
      return repfn_bitset(a, workers);
    case Engine::kFft:
      return repfn_fft(a);
    case Engine::kNaive:
      return repfn_naive(a);
  }
  return repfn_naive(a);
}

RepProfile repfn_auto(const IntegerSet& a, unsigned workers) {
  if (a.n_max() <= kFftMaxNMax) {
    try {
      return repfn_fft(a);
    } catch (const ExactnessError&) {
    }
  }
  return repfn_bitset(a, workers);
}

RepProfile repfn(const IntegerSet& a, Engine engine, unsigned workers) {
  return repfn_fast(a, engine, workers);
}

CumulativeProfile cumulative_rep(const RepProfile& r) {
  CumulativeProfile out{std::vector<std::uint64_t>(r.R.size(), 0)};
  std::uint64_t acc = 0;
  for (std::size_t n = 0; n < r.R.size(); ++n) {
    if (__builtin_add_overflow(acc, r.R[n], &acc)) {
      throw OverflowError("cumulative representation count overflows 64 bits at n=" +
                          std::to_string(n));
    }
    out.S[n] = acc;
  }
  return out;
}

void write_profile_csv(std::ostream& os, const RepProfile& r, const CumulativeProfile& s) {
  os << "n,R,S\n";
  for (std::size_t n = 0; n < r.R.size(); ++n) {
    os << n << ',' << r.R[n] << ',' << s.S[n] << '\n';
  }
}

const char* engine_name(Engine e) noexcept {
  switch (e) {
    case Engine::kNaive:
      return "naive";
    case Engine::kBitset:
      return "bitset";
    case Engine::kFft:
      return "fft";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  if (name == "naive") return Engine::kNaive;
  if (name == "bitset") return Engine::kBitset;
  if (name == "fft") return Engine::kFft;
  throw ParameterError("unknown engine '" + name + "' (naive, bitset, fft)");
}

}  // namespace efrep
