#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "efrep/repfn.hpp"
#include "efrep/weights.hpp"

namespace efrep {

// Errors of a representation profile against a target, natural log throughout.
//
//   e[n]        = R(n) - T(n)
//   E[N]        = sum_{n<=N} e[n]  (= S(N) - sum_{n<=N} T(n))
//   norm_pt[n]  = e[n] / sqrt(T(n) log n)   for n >= 2 and T(n) > 0
//   norm_cum[N] = E[N] / (sqrt(N) sqrt(log N)) for N >= 2
//
// Undefined normalized entries hold kUndefined (NaN), never 0 or infinity.
struct ErrorSeries {
  std::vector<double> e;
  std::vector<double> E;
  std::vector<double> norm_pt;
  std::vector<double> norm_cum;

  std::size_t n_max() const noexcept { return e.empty() ? 0 : e.size() - 1; }
  std::optional<double> pointwise_norm(std::size_t n) const;
  std::optional<double> cumulative_norm(std::size_t n) const;
};

ErrorSeries error_series(const RepProfile& r, const Target& target);
ErrorSeries error_series(const RepProfile& r, const WeightSequence& w);

// P(|eta - E eta| >= yD) <= exp(-2 y^2).
double hoeffding_tail(double y);

// P(|X - E X| >= eps E X) <= 2 exp(-min(eps^2/4, eps/2) E X).
double chernoff_tail(double eps, double ex);

enum class ErrorKind { kPointwise, kCumulative };

struct ViolationReport {
  std::vector<std::size_t> indices;  // increasing
  std::size_t count() const noexcept { return indices.size(); }
  std::optional<std::size_t> max_index;     // largest violating n
  std::optional<std::size_t> worst_index;   // n with the largest |norm|
  double worst_value = 0.0;                 // |norm| at worst_index
};

// Indices n >= n_start whose normalized error has |norm| >= threshold;
// undefined entries are skipped.
ViolationReport violation_scan(const ErrorSeries& series, double threshold, ErrorKind which,
                               std::size_t n_start);

// CSV with header `n,e,E,norm_pt,norm_cum`; undefined values are empty fields.
void write_error_csv(std::ostream& os, const ErrorSeries& s);

}  // namespace efrep
