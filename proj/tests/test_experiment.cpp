#include <doctest.h>

#include <cmath>
#include <sstream>

#include "efrep/error.hpp"
#include "efrep/experiment.hpp"

using namespace efrep;

namespace {

ExperimentConfig small_block_config() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kBlock;
  cfg.p = 1;
  cfg.q = 2;
  cfg.n_max = 20000;
  cfg.trials = 6;
  cfg.base_seed = 42;
  cfg.checkpoints = {100, 1000, 20000};
  cfg.thresholds = {1.0, 3.0};
  return cfg;
}

std::string csv_of(const ExperimentReport& rep) {
  std::ostringstream os;
  write_experiment_csv(os, rep);
  return os.str();
}

}  // namespace

TEST_CASE("nearest-rank percentiles") {
  const std::vector<double> v{5, 1, 4, 2, 3};
  CHECK(nearest_rank(v, 50) == 3);
  CHECK(nearest_rank(v, 95) == 5);
  CHECK(nearest_rank(v, 0) == 1);
  CHECK(nearest_rank(v, 100) == 5);
  CHECK(nearest_rank({1, 2, 3, 4}, 50) == 2);
  CHECK(std::isnan(nearest_rank({}, 50)));
}

TEST_CASE("forced full set has zero error") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kBernoulli;
  cfg.weights = "constant:c=1";
  cfg.n_max = 5000;
  cfg.trials = 3;
  cfg.checkpoints = {10, 5000};
  cfg.thresholds = {0.5};
  const auto rep = run_experiment(cfg);
  for (const auto& t : rep.trials) {
    for (const auto& c : t.checkpoints) CHECK(c.E == 0.0);
    CHECK(t.max_abs_norm_pt == 0.0);
    CHECK(t.violations[0] == 0);
  }
  CHECK(rep.clean_trials[0] == 3);
}

TEST_CASE("experiment output is independent of worker count") {
  auto cfg = small_block_config();
  const auto one = csv_of(run_experiment(cfg));
  cfg.workers = 4;
  const auto four = csv_of(run_experiment(cfg));
  CHECK(one == four);
  CHECK(one.rfind("trial,checkpoint,metric,value\n", 0) == 0);

  auto bern = small_block_config();
  bern.kind = ExperimentKind::kBernoulli;
  bern.weights = "cbinom:c=0.9";
  const auto b1 = csv_of(run_experiment(bern));
  bern.workers = 3;
  CHECK(b1 == csv_of(run_experiment(bern)));
}

TEST_CASE("trials use base_seed + i") {
  const auto cfg = small_block_config();
  const auto rep = run_experiment(cfg);
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    CHECK(rep.trials[i].seed == 42 + i);
    CHECK(rep.trials[i].trial == i);
  }
  const auto t3 = run_trial(cfg, 3);
  CHECK(t3.checkpoints[2].E == rep.trials[3].checkpoints[2].E);
}

TEST_CASE("block target perturbation") {
  const auto base = block_target(1, 2, 1000, 1.0);
  const auto pert = block_target(1, 2, 1000, 1.02);
  const double c = 0.25;
  for (std::size_t N : {1ul, 10ul, 1000ul}) {
    const double n = static_cast<double>(N);
    CHECK(base.cumulative[N] == doctest::Approx(c * (n + 1) * (n + 2) / 2));
    CHECK(pert.cumulative[N] - base.cumulative[N] == doctest::Approx(0.02 * 0.5 * c * n * n));
  }
}

TEST_CASE("config validation and capacity") {
  auto cfg = small_block_config();
  cfg.checkpoints = {1000, 100};
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = small_block_config();
  cfg.checkpoints = {30000};
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = small_block_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = small_block_config();
  cfg.p = 2;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = small_block_config();
  cfg.memory_budget = 1000;
  CHECK_THROWS_AS(cfg.validate(), CapacityError);

  // n_max = 10^7 fits in one GiB.
  CHECK(trial_memory_bytes(10000000) < (std::uint64_t{1} << 30));
}

TEST_CASE("config json") {
  const auto j = nlohmann::json::parse(R"({"kind": "thm6", "weights": "constant:c=0.5",
      "n_max": 1000, "trials": 4, "base_seed": 9, "checkpoints": [10, 100],
      "thresholds": [5, 8], "n_start": 100})");
  const auto cfg = config_from_json(j);
  CHECK(cfg.kind == ExperimentKind::kBernoulli);
  CHECK(cfg.n_max == 1000);
  CHECK(cfg.thresholds == std::vector<double>{5, 8});
  CHECK(config_from_json(config_to_json(cfg)).checkpoints == cfg.checkpoints);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_max": "many"})")), ParameterError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"kind": "thm9"})")), ParameterError);

  const auto summary = experiment_summary(run_experiment(small_block_config()));
  CHECK(summary["checkpoints"].size() == 3);
  CHECK(summary["thresholds"][1]["threshold"] == 3.0);
}
