#include "efrep/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "efrep/bounds.hpp"
#include "efrep/construct.hpp"
#include "efrep/error.hpp"
#include "efrep/format.hpp"
#include "efrep/numeric.hpp"
#include "fft.hpp"

namespace efrep {

std::string kind_name(ExperimentKind k) { return k == ExperimentKind::kBlock ? "thm3" : "thm6"; }

ExperimentKind parse_kind(const std::string& s) {
  if (s == "thm3" || s == "block") return ExperimentKind::kBlock;
  if (s == "thm6" || s == "bernoulli") return ExperimentKind::kBernoulli;
  throw ParameterError("unknown experiment kind '" + s + "' (thm3, thm6)");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (n_max < 2) throw ParameterError("n_max must be >= 2");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw ParameterError("checkpoints must be sorted");
  }
  if (!checkpoints.empty() && checkpoints.back() > n_max) {
    throw ParameterError("checkpoints must not exceed n_max");
  }
  for (double t : thresholds) {
    if (!(t > 0.0)) throw ParameterError("thresholds must be positive");
  }
  if (n_start < 2) throw ParameterError("n_start must be >= 2");
  if (workers < 1) throw ParameterError("workers must be >= 1");
  if (kind == ExperimentKind::kBlock) {
    if (!(p > 0 && p < q)) throw ParameterError("thm3 needs 0 < p < q");
    if (!(quadratic_scale > 0.0)) throw ParameterError("quadratic_scale must be positive");
  } else {
    (void)WeightSequence::parse(weights);
  }
  const auto need = trial_memory_bytes(n_max);
  if (need > memory_budget) {
    throw CapacityError("n_max=" + std::to_string(n_max) + " needs about " +
                        std::to_string(need) + " bytes per worker, budget is " +
                        std::to_string(memory_budget));
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("kind")) c.kind = parse_kind(j.at("kind").get<std::string>());
    c.p = j.value("p", c.p);
    c.q = j.value("q", c.q);
    c.weights = j.value("weights", c.weights);
    c.n_max = j.value("n_max", c.n_max);
    c.trials = j.value("trials", c.trials);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.checkpoints = j.value("checkpoints", c.checkpoints);
    c.thresholds = j.value("thresholds", c.thresholds);
    c.n_start = j.value("n_start", c.n_start);
    c.quadratic_scale = j.value("quadratic_scale", c.quadratic_scale);
    c.workers = j.value("workers", c.workers);
    c.memory_budget = j.value("memory_budget", c.memory_budget);
    c.csv_path = j.value("csv", c.csv_path);
    c.json_path = j.value("json", c.json_path);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad experiment config: ") + e.what());
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["kind"] = kind_name(c.kind);
  if (c.kind == ExperimentKind::kBlock) {
    j["p"] = c.p;
    j["q"] = c.q;
    j["quadratic_scale"] = c.quadratic_scale;
  } else {
    j["weights"] = c.weights;
  }
  j["n_max"] = c.n_max;
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["checkpoints"] = c.checkpoints;
  j["thresholds"] = c.thresholds;
  j["n_start"] = c.n_start;
  return j;
}

std::uint64_t trial_memory_bytes(std::uint64_t n_max) {
  const std::uint64_t n = n_max + 1;
  const std::uint64_t bits = n / 8 + 8;
  const std::uint64_t fft_len = detail::next_pow2(2 * n);
  // Transform phase: chi, in-place buffer, unrounded output, R.
  const std::uint64_t transform = bits + 8 * n + 8 * (fft_len + 2) + 8 * n + 8 * n;
  // Series phase: R, target (two arrays), four series arrays.
  const std::uint64_t series = bits + 8 * n + 16 * n + 32 * n;
  return std::max(transform, series);
}

double nearest_rank(std::vector<double> values, double percent) {
  if (values.empty()) return kUndefined;
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percent / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

Quantiles quantiles(const std::vector<double>& values) {
  Quantiles q;
  q.min = nearest_rank(values, 0.0);
  q.median = nearest_rank(values, 50.0);
  q.p95 = nearest_rank(values, 95.0);
  q.max = nearest_rank(values, 100.0);
  return q;
}

Target block_target(std::uint64_t p, std::uint64_t q, std::uint64_t n_max, double quadratic_scale) {
  const double c = static_cast<double>(p * p) / static_cast<double>(q * q);
  auto t = convolution_target(WeightSequence::constant(c), n_max);
  if (quadratic_scale != 1.0) {
    // sum_{n=1}^N (2n - 1) = N^2, so this adds (s - 1) * 0.5c * N^2 cumulatively.
    const double delta = (quadratic_scale - 1.0) * 0.5 * c;
    for (std::uint64_t n = 1; n <= n_max; ++n) t[n] += delta * static_cast<double>(2 * n - 1);
  }
  return make_target(std::move(t));
}

TrialResult run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index) {
  TrialResult res;
  res.trial = trial_index;
  res.seed = cfg.base_seed + trial_index;

  ErrorSeries series;
  {
    IntegerSet a;
    Target target;
    if (cfg.kind == ExperimentKind::kBlock) {
      const auto n_blocks = cfg.n_max / cfg.q + 1;
      a = sample_block_set({cfg.p, cfg.q, n_blocks, res.seed}).truncated(cfg.n_max);
      target = block_target(cfg.p, cfg.q, cfg.n_max, cfg.quadratic_scale);
    } else {
      const auto w = WeightSequence::parse(cfg.weights);
      a = sample_bernoulli_set(w, cfg.n_max, res.seed);
      target = make_target(w, cfg.n_max);
    }
    const auto r = repfn_auto(a);
    series = error_series(r, target);
  }

  for (auto N : cfg.checkpoints) {
    res.checkpoints.push_back({N, series.E[N], series.norm_cum[N]});
  }
  for (std::uint64_t n = cfg.n_start; n <= cfg.n_max; ++n) {
    const double v = series.norm_pt[n];
    if (is_defined(v)) res.max_abs_norm_pt = std::max(res.max_abs_norm_pt, std::abs(v));
  }
  const auto which =
      cfg.kind == ExperimentKind::kBlock ? ErrorKind::kCumulative : ErrorKind::kPointwise;
  for (double t : cfg.thresholds) {
    const auto v = violation_scan(series, t, which, cfg.n_start);
    res.violations.push_back(v.count());
    res.max_violation_index.push_back(v.max_index ? std::optional<std::uint64_t>(*v.max_index)
                                                  : std::nullopt);
  }
  return res;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.config = cfg;
  rep.trials.resize(cfg.trials);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= cfg.trials) return;
      rep.trials[i] = run_trial(cfg, i);
    }
  };
  if (cfg.workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < cfg.workers; ++t) pool.emplace_back(worker);
  }

  for (std::size_t c = 0; c < cfg.checkpoints.size(); ++c) {
    std::vector<double> v;
    for (const auto& t : rep.trials) {
      const double x = t.checkpoints[c].norm_cum;
      if (is_defined(x)) v.push_back(std::abs(x));
    }
    rep.abs_norm_cum.push_back(quantiles(v));
  }
  for (std::size_t k = 0; k < cfg.thresholds.size(); ++k) {
    std::vector<double> v;
    std::uint64_t clean = 0;
    for (const auto& t : rep.trials) {
      v.push_back(static_cast<double>(t.violations[k]));
      if (t.violations[k] == 0) ++clean;
    }
    rep.violation_counts.push_back(quantiles(v));
    rep.clean_trials.push_back(clean);
  }
  return rep;
}

void write_experiment_csv(std::ostream& os, const ExperimentReport& rep) {
  os << "trial,checkpoint,metric,value\n";
  for (const auto& t : rep.trials) {
    for (const auto& c : t.checkpoints) {
      os << t.trial << ',' << c.N << ",E," << format_real(c.E) << '\n';
      os << t.trial << ',' << c.N << ",norm_cum," << format_real(c.norm_cum) << '\n';
    }
    os << t.trial << ",,max_abs_norm_pt," << format_real(t.max_abs_norm_pt) << '\n';
    for (std::size_t k = 0; k < t.violations.size(); ++k) {
      const auto th = format_real(rep.config.thresholds[k]);
      os << t.trial << ",,violations@" << th << ',' << t.violations[k] << '\n';
      os << t.trial << ",,max_violation_index@" << th << ',';
      if (t.max_violation_index[k]) os << *t.max_violation_index[k];
      os << '\n';
    }
  }
}

nlohmann::json experiment_summary(const ExperimentReport& rep) {
  auto quant = [](const Quantiles& q) {
    return nlohmann::json{{"min", q.min}, {"median", q.median}, {"p95", q.p95}, {"max", q.max}};
  };
  nlohmann::json j;
  j["config"] = config_to_json(rep.config);
  auto& cps = j["checkpoints"] = nlohmann::json::array();
  for (std::size_t c = 0; c < rep.abs_norm_cum.size(); ++c) {
    cps.push_back({{"N", rep.config.checkpoints[c]}, {"abs_norm_cum", quant(rep.abs_norm_cum[c])}});
  }
  auto& th = j["thresholds"] = nlohmann::json::array();
  for (std::size_t k = 0; k < rep.violation_counts.size(); ++k) {
    th.push_back({{"threshold", rep.config.thresholds[k]},
                  {"violations", quant(rep.violation_counts[k])},
                  {"clean_trials", rep.clean_trials[k]}});
  }
  std::vector<double> max_pt;
  for (const auto& t : rep.trials) max_pt.push_back(t.max_abs_norm_pt);
  j["max_abs_norm_pt"] = quant(quantiles(max_pt));
  return j;
}

}  // namespace efrep
