#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "efrep/integer_set.hpp"

namespace efrep {

enum class Objective { kPointwise, kCumulative };

// Minimize over A subset of [0, n_max]
//   pointwise:  max_{n_start <= n <= n_max} |R_A(n) - T(n)| / nu(n)
//   cumulative: max_{n_start <= n <= n_max} |S_A(n) - CumT(n)| / nu(n)
// with R_A counting ordered pairs.
struct SearchProblem {
  std::size_t n_max = 0;
  std::vector<double> target;      // T(0..n_max)
  std::vector<double> cum_target;  // CumT(0..n_max)
  std::vector<double> norm;        // nu(0..n_max), > 0 on [n_start, n_max]
  std::size_t n_start = 1;
  Objective objective = Objective::kPointwise;

  // Fills cum_target with prefix sums of `target` and validates shapes.
  static SearchProblem make(std::vector<double> target, std::vector<double> norm,
                            std::size_t n_start, Objective objective);
  void validate() const;
};

// Target spec: `constant-linear:c=0.5` gives T(n) = c n; any weight spec
// (`constant:`, `cbinom:`, `table:`) gives its convolution target.
std::vector<double> parse_search_target(std::string_view spec, std::size_t n_max);

// Norm spec: `sqrt` gives sqrt(max(n, 1)); `one` gives 1.
std::vector<double> parse_search_norm(std::string_view spec, std::size_t n_max);

struct SearchResult {
  IntegerSet witness;
  double value = 0.0;
  std::uint64_t nodes_visited = 0;
};

inline constexpr std::size_t kExhaustiveMaxNMax = 26;

// Objective of a given set.
double evaluate_objective(const SearchProblem& prob, const IntegerSet& a);

// Exact global minimum by depth-first search over membership of 0, 1, ...,
// n_max (exclude before include). After deciding 0..m, R(n) is final for
// n <= m, so the partial maximum is a lower bound for every completion.
// Ties resolve to the lexicographically least membership string.
SearchResult exhaustive_min_error(const SearchProblem& prob);

// Decides 0, 1, ..., n_max in order, keeping the option with the smaller
// partial objective through m; ties exclude.
SearchResult greedy_min_error(const SearchProblem& prob);

}  // namespace efrep
