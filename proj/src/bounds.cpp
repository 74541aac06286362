#include "efrep/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "efrep/error.hpp"
#include "efrep/format.hpp"
#include "efrep/numeric.hpp"

namespace efrep {

std::optional<double> ErrorSeries::pointwise_norm(std::size_t n) const {
  return n < norm_pt.size() ? as_optional(norm_pt[n]) : std::nullopt;
}

std::optional<double> ErrorSeries::cumulative_norm(std::size_t n) const {
  return n < norm_cum.size() ? as_optional(norm_cum[n]) : std::nullopt;
}

ErrorSeries error_series(const RepProfile& r, const Target& target) {
  const auto size = r.R.size();
  if (target.pointwise.size() < size) {
    throw RangeError("target defined to " + std::to_string(target.n_max()) +
                     " but profile reaches " + std::to_string(r.n_max()));
  }
  ErrorSeries s;
  s.e.resize(size);
  s.E.resize(size);
  s.norm_pt.assign(size, kUndefined);
  s.norm_cum.assign(size, kUndefined);

  CompensatedSum acc;
  for (std::size_t n = 0; n < size; ++n) {
    const double t = target.pointwise[n];
    s.e[n] = static_cast<double>(r.R[n]) - t;
    acc += s.e[n];
    s.E[n] = acc.value();
    if (n >= 2) {
      const double log_n = std::log(static_cast<double>(n));
      if (t > 0.0) s.norm_pt[n] = s.e[n] / std::sqrt(t * log_n);
      s.norm_cum[n] = s.E[n] / (std::sqrt(static_cast<double>(n)) * std::sqrt(log_n));
    }
  }
  return s;
}

ErrorSeries error_series(const RepProfile& r, const WeightSequence& w) {
  return error_series(r, make_target(w, r.n_max()));
}

double hoeffding_tail(double y) {
  if (!(y >= 0.0)) throw ParameterError("hoeffding_tail needs y >= 0");
  return std::exp(-2.0 * y * y);
}

double chernoff_tail(double eps, double ex) {
  if (!(eps >= 0.0) || !(ex >= 0.0)) throw ParameterError("chernoff_tail needs eps, E(X) >= 0");
  return 2.0 * std::exp(-std::min(eps * eps / 4.0, eps / 2.0) * ex);
}

ViolationReport violation_scan(const ErrorSeries& series, double threshold, ErrorKind which,
                               std::size_t n_start) {
  if (n_start < 2) throw ParameterError("violation_scan needs n_start >= 2");
  if (!(threshold > 0.0)) throw ParameterError("violation threshold must be positive");
  const auto& norm = which == ErrorKind::kPointwise ? series.norm_pt : series.norm_cum;
  ViolationReport rep;
  for (std::size_t n = n_start; n < norm.size(); ++n) {
    if (!is_defined(norm[n])) continue;
    const double a = std::abs(norm[n]);
    if (a >= threshold) {
      rep.indices.push_back(n);
      rep.max_index = n;
      if (!rep.worst_index || a > rep.worst_value) {
        rep.worst_index = n;
        rep.worst_value = a;
      }
    }
  }
  return rep;
}

void write_error_csv(std::ostream& os, const ErrorSeries& s) {
  os << "n,e,E,norm_pt,norm_cum\n";
  for (std::size_t n = 0; n < s.e.size(); ++n) {
    os << n << ',' << format_real(s.e[n]) << ',' << format_real(s.E[n]) << ','
       << format_real(s.norm_pt[n]) << ',' << format_real(s.norm_cum[n]) << '\n';
  }
}

}  // namespace efrep
