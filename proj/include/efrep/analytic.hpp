#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "efrep/bounds.hpp"
#include "efrep/integer_set.hpp"
#include "efrep/weights.hpp"

namespace efrep {

// Truncated power sums at a radius 0 < r < 1.
struct RadialDiagnostics {
  double r = 0.0;
  double A_r = 0.0;         // sum_{a in A} r^a
  double f_r = 0.0;         // sum_n b_n r^n
  double b_lin = 0.0;       // sum_n b_n r^{2n}
  double b_sq = 0.0;        // sum_n b_n^2 r^{2n}
  double tail_bound = 0.0;  // r^{n_max+1} / (1 - r)
  double ratio = 0.0;       // A_r / f_r, NaN when f_r == 0
  bool reliable = false;    // tail_bound <= tol
};

// Sums run over 0..n_max(A) in increasing exponent order with compensated
// accumulation.
RadialDiagnostics radial_eval(const IntegerSet& a, const WeightSequence& w, double r, double tol);

struct IdentityCheck {
  double residual = 0.0;    // max_n |(R(n) - T(n)) - (E_n - E_{n-1})|
  double max_abs_E = 0.0;
  double tolerance = 0.0;   // 1e-9 * (1 + max_abs_E)
  bool holds() const noexcept { return residual <= tolerance; }
};

// Coefficientwise check of A^2(z) - f^2(z) = (1 - z) sum E_n z^n up to z^N.
// The left side uses R(n) - T(n) from the convolution target, the right side
// E_n = S(n) - CumT(n) from the cumulative target, so the two routes are
// computed independently.
IdentityCheck identity_check_eq7(const IntegerSet& a, const WeightSequence& w, std::size_t N);

// (sum_{k<=N} b_k^2)(sum_{k<=N} e_k^2) / (sum_{k<=N} b_k)^3, nullopt when the
// denominator vanishes. The ErrorSeries overload uses the cumulative errors.
std::optional<double> condition4_ratio(const WeightSequence& w, std::span<const double> e,
                                       std::size_t N);
std::optional<double> condition4_ratio(const WeightSequence& w, const ErrorSeries& e,
                                       std::size_t N);

// The ratio at each N in `horizons` (single pass over the sums).
std::vector<std::optional<double>> condition4_trajectory(const WeightSequence& w,
                                                         std::span<const double> e,
                                                         std::span<const std::size_t> horizons);

}  // namespace efrep
