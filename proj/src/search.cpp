#include "efrep/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "efrep/error.hpp"
#include "efrep/numeric.hpp"
#include "efrep/repfn.hpp"
#include "efrep/weights.hpp"

namespace efrep {
namespace {

double term(const SearchProblem& prob, std::size_t n, std::uint64_t r, std::uint64_t s) {
  const double err = prob.objective == Objective::kPointwise
                         ? static_cast<double>(r) - prob.target[n]
                         : static_cast<double>(s) - prob.cum_target[n];
  return std::abs(err) / prob.norm[n];
}

class Dfs {
 public:
  explicit Dfs(const SearchProblem& prob)
      : prob_(prob), r_(prob.n_max + 1, 0), s_(prob.n_max + 1, 0), member_(prob.n_max + 1, 0) {}

  SearchResult run(double initial_bound) {
    best_ = initial_bound;
    visit(0, 0.0);
    SearchResult out;
    out.value = best_;
    out.nodes_visited = nodes_;
    out.witness = IntegerSet(prob_.n_max);
    for (std::size_t k = 0; k < best_member_.size(); ++k) {
      if (best_member_[k]) out.witness.insert(k);
    }
    return out;
  }

 private:
  // Before a witness exists, completions equal to the initial bound are
  // accepted; afterwards only strict improvements are.
  bool accept(double v) const { return have_witness_ ? v < best_ : v <= best_; }

  void visit(std::size_t m, double partial) {
    ++nodes_;
    if (m > prob_.n_max) {
      if (accept(partial)) {
        best_ = partial;
        best_member_ = member_;
        have_witness_ = true;
      }
      return;
    }
    for (int include = 0; include <= 1; ++include) {
      if (include) add(m);
      const auto s = (m == 0 ? 0 : s_[m - 1]) + r_[m];
      s_[m] = s;
      double next = partial;
      if (m >= prob_.n_start) next = std::max(next, term(prob_, m, r_[m], s));
      if (accept(next)) visit(m + 1, next);
      if (include) remove(m);
    }
  }

  void add(std::size_t m) {
    const auto n_max = prob_.n_max;
    for (std::size_t a = 0; a < m && a + m <= n_max; ++a) {
      if (member_[a]) r_[a + m] += 2;
    }
    if (2 * m <= n_max) r_[2 * m] += 1;
    member_[m] = 1;
  }

  void remove(std::size_t m) {
    const auto n_max = prob_.n_max;
    member_[m] = 0;
    for (std::size_t a = 0; a < m && a + m <= n_max; ++a) {
      if (member_[a]) r_[a + m] -= 2;
    }
    if (2 * m <= n_max) r_[2 * m] -= 1;
  }

  const SearchProblem& prob_;
  std::vector<std::uint64_t> r_;
  std::vector<std::uint64_t> s_;
  std::vector<char> member_;
  std::vector<char> best_member_;
  double best_ = std::numeric_limits<double>::infinity();
  bool have_witness_ = false;
  std::uint64_t nodes_ = 0;
};

// Pairs among decided elements summing to m, with m itself undecided:
// sum_{0 < k < m} chi(k) chi(m - k) via word popcounts.
class PrefixCounter {
 public:
  explicit PrefixCounter(std::size_t n_max)
      : n_max_(n_max), fwd_(n_max / 64 + 2, 0), rev_(n_max / 64 + 2, 0) {}

  void insert(std::size_t k) {
    fwd_[k >> 6] |= std::uint64_t{1} << (k & 63);
    const auto j = n_max_ - k;
    rev_[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  bool contains(std::size_t k) const { return (fwd_[k >> 6] >> (k & 63)) & 1u; }

  std::uint64_t pairs_summing_to(std::size_t m) const {
    const std::size_t half = (m + 1) / 2;
    const std::size_t shift = n_max_ - m;
    std::uint64_t count = 0;
    for (std::size_t w = 0; (w << 6) < half; ++w) {
      std::uint64_t x = fwd_[w] & window(shift + (w << 6));
      const auto remaining = half - (w << 6);
      if (remaining < 64) x &= (std::uint64_t{1} << remaining) - 1;
      count += static_cast<std::uint64_t>(std::popcount(x));
    }
    count *= 2;
    if (m % 2 == 0 && contains(m / 2) && m != 0) ++count;
    return count;
  }

 private:
  std::uint64_t window(std::size_t pos) const {
    const auto w = pos >> 6;
    const auto o = pos & 63;
    if (o == 0) return rev_[w];
    return (rev_[w] >> o) | (rev_[w + 1] << (64 - o));
  }

  std::size_t n_max_;
  std::vector<std::uint64_t> fwd_;
  std::vector<std::uint64_t> rev_;
};

}  // namespace

SearchProblem SearchProblem::make(std::vector<double> target, std::vector<double> norm,
                                  std::size_t n_start, Objective objective) {
  SearchProblem p;
  if (target.empty()) throw ParameterError("search target is empty");
  p.n_max = target.size() - 1;
  p.cum_target.resize(target.size());
  CompensatedSum s;
  for (std::size_t n = 0; n < target.size(); ++n) {
    s += target[n];
    p.cum_target[n] = s.value();
  }
  p.target = std::move(target);
  p.norm = std::move(norm);
  p.n_start = n_start;
  p.objective = objective;
  p.validate();
  return p;
}

void SearchProblem::validate() const {
  const auto size = n_max + 1;
  if (target.size() != size || cum_target.size() != size || norm.size() != size) {
    throw ParameterError("search arrays must cover 0..n_max");
  }
  if (n_start > n_max) throw ParameterError("n_start beyond n_max");
  for (std::size_t n = n_start; n <= n_max; ++n) {
    if (!(norm[n] > 0.0)) throw ParameterError("norm must be positive on the scored range");
  }
}

std::vector<double> parse_search_target(std::string_view spec, std::size_t n_max) {
  constexpr std::string_view linear = "constant-linear:c=";
  if (spec.substr(0, linear.size()) == linear) {
    const double c = std::stod(std::string(spec.substr(linear.size())));
    std::vector<double> t(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) t[n] = c * static_cast<double>(n);
    return t;
  }
  return convolution_target(WeightSequence::parse(spec), n_max);
}

std::vector<double> parse_search_norm(std::string_view spec, std::size_t n_max) {
  std::vector<double> nu(n_max + 1, 1.0);
  if (spec == "one") return nu;
  if (spec == "sqrt") {
    for (std::size_t n = 0; n <= n_max; ++n) {
      nu[n] = std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
    }
    return nu;
  }
  throw ParameterError("unknown norm '" + std::string(spec) + "' (sqrt, one)");
}

double evaluate_objective(const SearchProblem& prob, const IntegerSet& a) {
  IntegerSet head(prob.n_max);
  a.for_each([&](std::uint64_t k) {
    if (k <= prob.n_max) head.insert(k);
  });
  const auto r = repfn_naive(head);
  const auto s = cumulative_rep(r);
  double v = 0.0;
  for (std::size_t n = prob.n_start; n <= prob.n_max; ++n) {
    v = std::max(v, term(prob, n, r.R[n], s.S[n]));
  }
  return v;
}

SearchResult exhaustive_min_error(const SearchProblem& prob) {
  prob.validate();
  if (prob.n_max > kExhaustiveMaxNMax) {
    throw ParameterError("exhaustive search is limited to n_max <= " +
                         std::to_string(kExhaustiveMaxNMax) + "; use greedy_min_error");
  }
  // The greedy value bounds the optimum from above and seeds the pruning.
  const auto greedy = greedy_min_error(prob);
  auto out = Dfs(prob).run(greedy.value);
  return out;
}

SearchResult greedy_min_error(const SearchProblem& prob) {
  prob.validate();
  SearchResult out;
  out.witness = IntegerSet(prob.n_max);
  PrefixCounter counter(prob.n_max);
  std::uint64_t s_prev = 0;
  double partial = 0.0;
  for (std::size_t m = 0; m <= prob.n_max; ++m) {
    ++out.nodes_visited;
    const auto r_out = counter.pairs_summing_to(m);
    // Including m adds (0, m) and (m, 0), or the single pair (0, 0) at m = 0.
    const auto r_in = m == 0 ? std::uint64_t{1} : r_out + (counter.contains(0) ? 2 : 0);
    double p_out = partial, p_in = partial;
    if (m >= prob.n_start) {
      p_out = std::max(partial, term(prob, m, r_out, s_prev + r_out));
      p_in = std::max(partial, term(prob, m, r_in, s_prev + r_in));
    }
    if (p_in < p_out) {
      counter.insert(m);
      out.witness.insert(m);
      s_prev += r_in;
      partial = p_in;
    } else {
      s_prev += r_out;
      partial = p_out;
    }
  }
  out.value = partial;
  return out;
}

}  // namespace efrep
