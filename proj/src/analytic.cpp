#include "efrep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "efrep/error.hpp"
#include "efrep/numeric.hpp"
#include "efrep/repfn.hpp"

namespace efrep {

RadialDiagnostics radial_eval(const IntegerSet& a, const WeightSequence& w, double r, double tol) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("radius must lie in (0, 1)");
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  const auto n_max = a.n_max();
  const auto b = w.values(n_max);

  RadialDiagnostics d;
  d.r = r;
  CompensatedSum set_sum, f_sum, lin_sum, sq_sum;
  double rn = 1.0;   // r^n
  double r2n = 1.0;  // r^{2n}
  const double r2 = r * r;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    if (a.contains(n)) set_sum += rn;
    f_sum += b[n] * rn;
    lin_sum += b[n] * r2n;
    sq_sum += b[n] * b[n] * r2n;
    rn *= r;
    r2n *= r2;
  }
  d.A_r = set_sum.value();
  d.f_r = f_sum.value();
  d.b_lin = lin_sum.value();
  d.b_sq = sq_sum.value();
  d.tail_bound = rn / (1.0 - r);
  d.ratio = d.f_r > 0.0 ? d.A_r / d.f_r : kUndefined;
  d.reliable = d.tail_bound <= tol;
  return d;
}

IdentityCheck identity_check_eq7(const IntegerSet& a, const WeightSequence& w, std::size_t N) {
  if (N > a.n_max()) throw RangeError("N beyond n_max of the set");
  if (!w.defined_up_to(N)) throw RangeError("weights not defined up to N");

  // R(n) for n <= N only needs elements <= N.
  IntegerSet head(N);
  a.for_each([&](std::uint64_t k) {
    if (k <= N) head.insert(k);
  });
  const auto r = repfn_auto(head);
  const auto s = cumulative_rep(r);
  const auto target = make_target(w, N);
  const auto& t = target.pointwise;

  IdentityCheck out;
  double prev_E = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    const double E = static_cast<double>(s.S[n]) - target.cumulative[n];
    const double lhs = static_cast<double>(r.R[n]) - t[n];
    const double rhs = E - prev_E;
    out.residual = std::max(out.residual, std::abs(lhs - rhs));
    out.max_abs_E = std::max(out.max_abs_E, std::abs(E));
    prev_E = E;
  }
  out.tolerance = 1e-9 * (1.0 + out.max_abs_E);
  return out;
}

std::vector<std::optional<double>> condition4_trajectory(const WeightSequence& w,
                                                         std::span<const double> e,
                                                         std::span<const std::size_t> horizons) {
  std::vector<std::optional<double>> out(horizons.size());
  if (horizons.empty()) return out;
  const auto last = *std::max_element(horizons.begin(), horizons.end());
  if (last >= e.size()) throw RangeError("error sequence shorter than the requested horizon");
  const auto b = w.values(last);

  std::vector<double> ratio(last + 1);
  CompensatedSum sb, sb2, se2;
  for (std::size_t k = 0; k <= last; ++k) {
    sb += b[k];
    sb2 += b[k] * b[k];
    se2 += e[k] * e[k];
    const double den = sb.value();
    ratio[k] = den > 0.0 ? sb2.value() * se2.value() / (den * den * den) : kUndefined;
  }
  for (std::size_t i = 0; i < horizons.size(); ++i) out[i] = as_optional(ratio[horizons[i]]);
  return out;
}

std::optional<double> condition4_ratio(const WeightSequence& w, std::span<const double> e,
                                       std::size_t N) {
  const std::size_t h[] = {N};
  return condition4_trajectory(w, e, h).front();
}

std::optional<double> condition4_ratio(const WeightSequence& w, const ErrorSeries& e,
                                       std::size_t N) {
  return condition4_ratio(w, std::span<const double>(e.E), N);
}

}  // namespace efrep
