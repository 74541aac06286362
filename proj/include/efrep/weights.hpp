#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace efrep {

enum class WeightKind { kConstant, kCentralBinomial, kTable };

// A weight sequence 0 <= b_n <= 1.
//
//   constant:        b_n = sqrt(c) for n >= 1, b_0 = sqrt(c) unless overridden
//   central-binomial b_n = sqrt(c) * C(2n, n) / 4^n, whose self-convolution is c
//   table:           explicit finite list
//
// Values are immutable after construction.
class WeightSequence {
 public:
  static WeightSequence constant(double c, std::optional<double> b0 = {});
  static WeightSequence central_binomial(double c);
  static WeightSequence table(std::vector<double> values);

  // Parses `constant:c=0.5[,b0=0.8]`, `cbinom:c=0.7`, `table:@path` (one real
  // per line) or `table:0.5,0.25,...`.
  static WeightSequence parse(std::string_view spec);

  WeightKind kind() const noexcept { return kind_; }
  double c() const noexcept { return c_; }
  // Largest defined index; SIZE_MAX for the unbounded families.
  std::size_t n_cap() const noexcept;
  bool defined_up_to(std::size_t n) const noexcept { return n <= n_cap(); }

  double at(std::size_t n) const;
  // b_0..b_{n_max}, computed in one pass.
  std::vector<double> values(std::size_t n_max) const;

  std::string describe() const;

 private:
  WeightSequence() = default;

  WeightKind kind_ = WeightKind::kConstant;
  double c_ = 0.0;
  double root_c_ = 0.0;
  double b0_ = 0.0;
  std::vector<double> table_;
};

inline double weight_at(const WeightSequence& w, std::size_t n) { return w.at(n); }

// T(n) = sum_{k<=n} b_k b_{n-k} for n = 0..n_max.
std::vector<double> convolution_target(const WeightSequence& w, std::size_t n_max);

// sum_{n<=N} T(n).
double cumulative_target(const WeightSequence& w, std::size_t N);

// Pointwise and cumulative targets over 0..n_max, the pair error series are
// measured against.
struct Target {
  std::vector<double> pointwise;
  std::vector<double> cumulative;

  std::size_t n_max() const noexcept { return pointwise.empty() ? 0 : pointwise.size() - 1; }
};

Target make_target(const WeightSequence& w, std::size_t n_max);

// Target built from an explicit pointwise array; the cumulative part is its
// compensated prefix sum.
Target make_target(std::vector<double> pointwise);

// Direct O(n^2) self-convolution of the first n_max+1 entries.
std::vector<double> direct_self_convolution(std::span<const double> b, std::size_t n_max);

}  // namespace efrep
