#pragma once

#include <cstdint>
#include <vector>

#include "efrep/integer_set.hpp"
#include "efrep/weights.hpp"

namespace efrep {

struct BlockSamplerParams {
  std::uint64_t p = 1;
  std::uint64_t q = 2;
  std::uint64_t n_blocks = 1;
  std::uint64_t seed = 0;
};

// A = union of X_n, n < n_blocks, where X_n is a uniform p-subset of the block
// [nq, nq + q - 1]. Block n draws from its own generator seeded with
// sub_seed(seed, n) and picks its subset with a partial Fisher-Yates shuffle
// of the offsets 0..q-1: for j = 0..p-1 swap slot j with slot
// j + uniform_below(q - j). Output is independent of `workers`.
IntegerSet sample_block_set(const BlockSamplerParams& params, unsigned workers = 1);

// Indices per Bernoulli generator chunk; chunk c covers
// [c * kBernoulliChunk, (c + 1) * kBernoulliChunk) and uses sub_seed(seed, c).
inline constexpr std::uint64_t kBernoulliChunk = std::uint64_t{1} << 16;

// n in A independently with probability b_n: one uniform real per index in
// increasing order within each chunk, n included iff u < b_n.
IntegerSet sample_bernoulli_set(const WeightSequence& w, std::uint64_t n_max, std::uint64_t seed,
                                unsigned workers = 1);

// Block decomposition of sum_{n<=N} R_A(n) with blocks of length q.
// Y_{u,v} counts pairs (a, a') with a in block u, a' in block v, a + a' <= N.
// With B = floor(N / q), every pair on a diagonal u + v <= B - 2 has
// a + a' <= N and no pair on u + v > B does.
struct DiagonalCounts {
  std::uint64_t N = 0;
  std::uint64_t q = 1;
  std::uint64_t interior = 0;        // sum over u + v <= B - 2
  std::uint64_t lower_diagonal = 0;  // u + v = B - 1
  std::uint64_t upper_diagonal = 0;  // u + v = B
  std::uint64_t max_y = 0;           // largest single Y_{u,v} on the two boundary diagonals
  std::uint64_t pair_count = 0;      // #{(a, a') : a + a' <= N}, counted independently

  std::uint64_t parts_total() const noexcept { return interior + lower_diagonal + upper_diagonal; }
};

// Throws std::logic_error if the three parts do not add up to pair_count.
DiagonalCounts block_diagonal_counts(const IntegerSet& a, std::uint64_t q, std::uint64_t N);

// Interior diagonal sums sum_{m<=M} Y_{m, M-m} for M = 0..B-2, O(B^2).
std::vector<std::uint64_t> interior_diagonal_sums(const IntegerSet& a, std::uint64_t q,
                                                  std::uint64_t N);

}  // namespace efrep
