#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "efrep/repfn.hpp"
#include "efrep/weights.hpp"

namespace efrep {

enum class ExperimentKind { kBlock, kBernoulli };  // "thm3", "thm6"

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kBlock;
  std::uint64_t p = 1;
  std::uint64_t q = 2;
  std::string weights = "constant:c=0.5";
  std::uint64_t n_max = 1000;
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> thresholds;
  std::uint64_t n_start = 2;
  // Multiplies the quadratic coefficient of the block-set cumulative target
  // (1 = unperturbed); used for sensitivity controls.
  double quadratic_scale = 1.0;
  unsigned workers = 1;
  std::uint64_t memory_budget = std::uint64_t{1} << 30;  // bytes per worker
  std::string csv_path;
  std::string json_path;

  // Throws ParameterError on invalid fields.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

std::string kind_name(ExperimentKind k);
ExperimentKind parse_kind(const std::string& s);

// Estimated peak bytes for one trial.
std::uint64_t trial_memory_bytes(std::uint64_t n_max);

struct CheckpointValue {
  std::uint64_t N = 0;
  double E = 0.0;
  double norm_cum = 0.0;  // NaN when undefined
};

struct TrialResult {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<CheckpointValue> checkpoints;
  double max_abs_norm_pt = 0.0;  // over [n_start, n_max], undefined entries skipped
  std::vector<std::uint64_t> violations;  // per threshold
  std::vector<std::optional<std::uint64_t>> max_violation_index;
};

struct Quantiles {
  double min = 0.0, median = 0.0, p95 = 0.0, max = 0.0;
};

// Nearest-rank percentile (rank = ceil(p/100 * n)) on a copy of `values`.
double nearest_rank(std::vector<double> values, double percent);
Quantiles quantiles(const std::vector<double>& values);

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialResult> trials;  // sorted by trial index
  std::vector<Quantiles> abs_norm_cum;        // per checkpoint
  std::vector<Quantiles> violation_counts;    // per threshold
  std::vector<std::uint64_t> clean_trials;    // per threshold: trials with zero violations
};

// Target the block-set experiment measures against: constant weights
// c = p^2/q^2, quadratic coefficient scaled by `quadratic_scale`.
Target block_target(std::uint64_t p, std::uint64_t q, std::uint64_t n_max, double quadratic_scale);

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index);

// Runs trials with seeds base_seed + i across cfg.workers threads; the report
// does not depend on scheduling.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Long format `trial,checkpoint,metric,value`.
void write_experiment_csv(std::ostream& os, const ExperimentReport& rep);
nlohmann::json experiment_summary(const ExperimentReport& rep);

}  // namespace efrep
