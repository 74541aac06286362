#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "efrep/construct.hpp"
#include "efrep/error.hpp"
#include "efrep/repfn.hpp"
#include "efrep/rng.hpp"
#include "efrep/set_io.hpp"
#include "stats_oracle.hpp"
#include "test_helpers.hpp"

using namespace efrep;

namespace {

std::string efset_bytes(const IntegerSet& a) {
  std::ostringstream os;
  write_set(os, a, SetFormat::kBinary);
  return os.str();
}

}  // namespace

TEST_CASE("splitmix64 and xoshiro256** reference outputs") {
  // Reference values of the published algorithms.
  std::uint64_t sm = 0;
  CHECK(splitmix64_next(sm) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64_next(sm) == 0x6E789E6AA1B965F4ull);

  auto x = Xoshiro256::from_state({1, 2, 3, 4});
  CHECK(x.next() == 11520);
  CHECK(x.next() == 0);
  CHECK(x.next() == 1509978240);
  CHECK(x.next() == 1215971899390074240ull);

  Xoshiro256 g(0);
  Xoshiro256 h(0);
  for (int i = 0; i < 10; ++i) CHECK(g.next() == h.next());
  for (int i = 0; i < 10000; ++i) {
    const double u = g.uniform_real();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(g.uniform_below(7) < 7);
  }
  CHECK(g.uniform_below(1) == 0);
}

TEST_CASE("uniform_below is unbiased") {
  Xoshiro256 g(12345);
  constexpr int kDraws = 60000;
  std::vector<int> counts(6, 0);
  for (int i = 0; i < kDraws; ++i) ++counts[g.uniform_below(6)];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - kDraws / 6.0) * (c - kDraws / 6.0) / (kDraws / 6.0);
  CHECK(test::chi_square_survival(chi2, 5) > 1e-3);
}

TEST_CASE("block sampler parameters") {
  CHECK_THROWS_AS(sample_block_set({1, 1, 10, 0}), ParameterError);
  CHECK_THROWS_AS(sample_block_set({3, 2, 10, 0}), ParameterError);
  CHECK_THROWS_AS(sample_block_set({0, 2, 10, 0}), ParameterError);
  CHECK_THROWS_AS(sample_block_set({1, 2, 0, 0}), ParameterError);
}

TEST_CASE("block sampler has exactly p elements per block") {
  for (std::uint64_t seed : {0ull, 1ull, 0xdeadbeefull}) {
    const auto a = sample_block_set({2, 5, 1000, seed});
    CHECK(a.n_max() == 4999);
    CHECK(a.size() == 2000);
    std::vector<int> per_block(1000, 0);
    a.for_each([&](std::uint64_t k) { ++per_block[k / 5]; });
    CHECK(std::all_of(per_block.begin(), per_block.end(), [](int c) { return c == 2; }));
  }
}

TEST_CASE("block sampler determinism") {
  const auto a = sample_block_set({1, 2, 5000, 77});
  const auto b = sample_block_set({1, 2, 5000, 77});
  const auto c = sample_block_set({1, 2, 5000, 77}, 4);
  CHECK(efset_bytes(a) == efset_bytes(b));
  CHECK(efset_bytes(a) == efset_bytes(c));
  CHECK(efset_bytes(a) != efset_bytes(sample_block_set({1, 2, 5000, 78})));
}

TEST_CASE("block subsets are uniform") {
  struct Case { std::uint64_t p, q; };
  for (auto [p, q] : {Case{1, 3}, Case{2, 5}, Case{3, 5}, Case{2, 4}}) {
    constexpr int kSeeds = 20000;
    std::map<std::uint64_t, int> freq;
    for (int s = 0; s < kSeeds; ++s) {
      // Block 1 of each sample, as a bit mask of offsets.
      const auto a = sample_block_set({p, q, 2, static_cast<std::uint64_t>(s)});
      std::uint64_t mask = 0;
      for (std::uint64_t j = 0; j < q; ++j) {
        if (a.contains(q + j)) mask |= std::uint64_t{1} << j;
      }
      ++freq[mask];
    }
    std::uint64_t subsets = 1;
    for (std::uint64_t i = 0; i < p; ++i) subsets = subsets * (q - i) / (i + 1);
    CHECK(freq.size() == subsets);  // every p-subset reached
    const double expected = static_cast<double>(kSeeds) / static_cast<double>(subsets);
    double chi2 = 0.0;
    for (auto [mask, n] : freq) chi2 += (n - expected) * (n - expected) / expected;
    CHECK(test::chi_square_survival(chi2, static_cast<int>(subsets) - 1) > 1e-3);
  }
}

TEST_CASE("block inclusion frequency is p/q") {
  constexpr int kSeeds = 10000;
  const std::uint64_t p = 2, q = 5;
  std::vector<int> hits(20, 0);
  for (int s = 0; s < kSeeds; ++s) {
    const auto a = sample_block_set({p, q, 4, static_cast<std::uint64_t>(s) + 1000});
    a.for_each([&](std::uint64_t k) { ++hits[k]; });
  }
  const double rate = static_cast<double>(p) / q;
  const double sigma = std::sqrt(rate * (1 - rate) / kSeeds);
  for (int k = 0; k < 20; ++k) CHECK(std::abs(hits[k] / double(kSeeds) - rate) < 5 * sigma);
}

TEST_CASE("bernoulli sampler extremes and determinism") {
  const auto full = sample_bernoulli_set(WeightSequence::constant(1.0), 10000, 3);
  CHECK(full == IntegerSet::interval(10000));
  CHECK(sample_bernoulli_set(WeightSequence::constant(0.0), 10000, 3).empty());

  const auto w = WeightSequence::central_binomial(0.8);
  const auto a = sample_bernoulli_set(w, 300000, 11);
  CHECK(a == sample_bernoulli_set(w, 300000, 11, 4));
  CHECK_THROWS_AS(sample_bernoulli_set(WeightSequence::table({0.5, 0.5}), 5, 0), RangeError);
}

TEST_CASE("bernoulli density concentration") {
  const std::uint64_t n_max = 1000000;
  // Exact binomial oracle: P(|X/n - 1/2| > 0.003) is negligible.
  const double tail = test::binomial_two_sided_tail(n_max + 1, 0.5, 0.003 * (n_max + 1));
  CHECK(tail < 1e-6);
  const auto w = WeightSequence::constant(0.25);
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = sample_bernoulli_set(w, n_max, seed);
    const double frac = static_cast<double>(a.size()) / static_cast<double>(n_max + 1);
    if (std::abs(frac - 0.5) <= 0.003) ++good;
  }
  CHECK(good >= 98);
}

TEST_CASE("block diagonal decomposition") {
  SUBCASE("block-sampled sets") {
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{1, 2}, {2, 5}, {3, 7}}) {
      const auto a = sample_block_set({p, q, 400, p * 100 + q});
      const std::uint64_t N = a.n_max() - 3;
      const auto d = block_diagonal_counts(a, q, N);
      const auto B = N / q;
      CHECK(d.interior == p * p * (B - 1) * B / 2);
      CHECK(d.max_y <= p * p);
      const auto s = cumulative_rep(repfn_naive(a));
      CHECK(d.parts_total() == s.S[N]);
      const auto diag = interior_diagonal_sums(a, q, N);
      for (std::uint64_t M = 0; M < diag.size(); ++M) REQUIRE(diag[M] == (M + 1) * p * p);
    }
  }
  SUBCASE("empty set") {
    const auto d = block_diagonal_counts(IntegerSet(100), 4, 90);
    CHECK(d.interior == 0);
    CHECK(d.lower_diagonal == 0);
    CHECK(d.upper_diagonal == 0);
    CHECK(d.pair_count == 0);
  }
  SUBCASE("arbitrary sets against repfn") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto a = test::random_set(40, 0.4, seed);
      const auto s = cumulative_rep(repfn_naive(a));
      for (std::uint64_t q : {1ul, 2ul, 3ul, 7ul}) {
        for (std::uint64_t N : {0ul, 1ul, 2ul, 5ul, 20ul, 40ul}) {
          REQUIRE(block_diagonal_counts(a, q, N).parts_total() == s.S[N]);
        }
      }
    }
  }
  CHECK_THROWS_AS(block_diagonal_counts(IntegerSet(10), 3, 11), RangeError);
}
