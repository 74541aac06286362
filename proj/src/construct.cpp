#include "efrep/construct.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "efrep/error.hpp"
#include "efrep/rng.hpp"

namespace efrep {
namespace {

template <typename F>
void parallel_ranges(std::uint64_t count, unsigned workers, F&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    body(std::uint64_t{0}, count);
    return;
  }
  const std::uint64_t step = (count + workers - 1) / workers;
  std::vector<std::jthread> pool;
  for (std::uint64_t lo = 0; lo < count; lo += step) {
    pool.emplace_back([&body, lo, hi = std::min(count, lo + step)] { body(lo, hi); });
  }
}

void atomic_set_bit(std::span<std::uint64_t> words, std::uint64_t k) {
  std::atomic_ref<std::uint64_t>(words[k >> 6]).fetch_or(std::uint64_t{1} << (k & 63),
                                                         std::memory_order_relaxed);
}

}  // namespace

IntegerSet sample_block_set(const BlockSamplerParams& params, unsigned workers) {
  const auto [p, q, n_blocks, seed] = params;
  if (!(p > 0 && p < q)) {
    throw ParameterError("block sampler needs 0 < p < q, got p=" + std::to_string(p) +
                         " q=" + std::to_string(q));
  }
  if (n_blocks == 0) throw ParameterError("block sampler needs at least one block");
  if (n_blocks > (std::uint64_t{1} << 40) / q) throw CapacityError("block sampler range too large");

  IntegerSet out(n_blocks * q - 1);
  auto words = out.words();
  parallel_ranges(n_blocks, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> offsets(q);
    for (std::uint64_t b = lo; b < hi; ++b) {
      Xoshiro256 gen(sub_seed(seed, b));
      std::iota(offsets.begin(), offsets.end(), std::uint64_t{0});
      for (std::uint64_t j = 0; j < p; ++j) {
        const auto r = j + gen.uniform_below(q - j);
        std::swap(offsets[j], offsets[r]);
        atomic_set_bit(words, b * q + offsets[j]);
      }
    }
  });
  return out;
}

IntegerSet sample_bernoulli_set(const WeightSequence& w, std::uint64_t n_max, std::uint64_t seed,
                                unsigned workers) {
  if (!w.defined_up_to(n_max)) {
    throw RangeError("weights not defined up to " + std::to_string(n_max));
  }
  const auto b = w.values(n_max);
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    if (!(b[n] >= 0.0 && b[n] <= 1.0)) {
      throw ParameterError("weight b_" + std::to_string(n) + " outside [0, 1]");
    }
  }
  IntegerSet out(n_max);
  auto words = out.words();
  const auto chunks = n_max / kBernoulliChunk + 1;
  parallel_ranges(chunks, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t c = lo; c < hi; ++c) {
      Xoshiro256 gen(sub_seed(seed, c));
      const auto first = c * kBernoulliChunk;
      const auto last = std::min(n_max, first + kBernoulliChunk - 1);
      // Chunks are whole words, so plain stores do not race.
      for (std::uint64_t n = first; n <= last; ++n) {
        if (gen.uniform_real() < b[n]) words[n >> 6] |= std::uint64_t{1} << (n & 63);
      }
    }
  });
  return out;
}

DiagonalCounts block_diagonal_counts(const IntegerSet& a, std::uint64_t q, std::uint64_t N) {
  if (q == 0) throw ParameterError("block length q must be positive");
  if (N > a.n_max()) {
    throw RangeError("horizon N=" + std::to_string(N) + " beyond n_max " +
                     std::to_string(a.n_max()));
  }
  DiagonalCounts d;
  d.N = N;
  d.q = q;
  const auto B = N / q;

  // Elements <= N grouped by block; block_start[u] indexes into `el`.
  std::vector<std::uint64_t> el;
  a.for_each([&](std::uint64_t k) {
    if (k <= N) el.push_back(k);
  });
  std::vector<std::size_t> block_start(B + 2, el.size());
  {
    std::size_t i = 0;
    for (std::uint64_t u = 0; u <= B + 1; ++u) {
      while (i < el.size() && el[i] < u * q) ++i;
      block_start[u] = i;
    }
  }
  auto block_size = [&](std::uint64_t u) -> std::uint64_t {
    return block_start[u + 1] - block_start[u];
  };

  if (B >= 2) {
    // sum_{u+v <= B-2} c_u c_v = sum_u c_u * (c_0 + ... + c_{B-2-u})
    std::vector<std::uint64_t> prefix(B, 0);
    std::uint64_t acc = 0;
    for (std::uint64_t u = 0; u + 1 < B; ++u) {
      acc += block_size(u);
      prefix[u] = acc;
    }
    for (std::uint64_t u = 0; u + 2 <= B; ++u) d.interior += block_size(u) * prefix[B - 2 - u];
  }

  auto boundary = [&](std::uint64_t M) {
    std::uint64_t total = 0;
    for (std::uint64_t u = 0; u <= M; ++u) {
      const auto v = M - u;
      std::uint64_t y = 0;
      for (auto i = block_start[u]; i < block_start[u + 1]; ++i) {
        for (auto j = block_start[v]; j < block_start[v + 1]; ++j) {
          if (el[i] + el[j] <= N) ++y;
        }
      }
      d.max_y = std::max(d.max_y, y);
      total += y;
    }
    return total;
  };
  if (B >= 1) d.lower_diagonal = boundary(B - 1);
  d.upper_diagonal = boundary(B);

  // Independent count: for each a, the number of a' <= N - a, by a two-pointer sweep.
  std::size_t hi = el.size();
  for (std::size_t i = 0; i < el.size(); ++i) {
    while (hi > 0 && el[hi - 1] > N - el[i]) --hi;
    d.pair_count += hi;
  }

  if (d.parts_total() != d.pair_count) {
    throw std::logic_error("block decomposition does not reconstruct the cumulative count: " +
                           std::to_string(d.parts_total()) + " vs " +
                           std::to_string(d.pair_count));
  }
  return d;
}

std::vector<std::uint64_t> interior_diagonal_sums(const IntegerSet& a, std::uint64_t q,
                                                  std::uint64_t N) {
  if (q == 0) throw ParameterError("block length q must be positive");
  if (N > a.n_max()) throw RangeError("horizon beyond n_max");
  const auto B = N / q;
  if (B < 2) return {};
  std::vector<std::uint64_t> c(B - 1, 0);
  a.for_each([&](std::uint64_t k) {
    if (k / q < B - 1) ++c[k / q];
  });
  std::vector<std::uint64_t> diag(B - 1, 0);
  for (std::uint64_t M = 0; M + 2 <= B; ++M) {
    for (std::uint64_t u = 0; u <= M; ++u) diag[M] += c[u] * c[M - u];
  }
  return diag;
}

}  // namespace efrep
