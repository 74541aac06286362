// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "efrep/analytic.hpp"
#include "efrep/bounds.hpp"
#include "efrep/construct.hpp"
#include "efrep/experiment.hpp"
#include "efrep/repfn.hpp"
#include "efrep/search.hpp"
#include "efrep/weights.hpp"
#include "test_helpers.hpp"

using namespace efrep;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(const char* id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %-3s %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome engine_equivalence() {
  const auto t0 = Clock::now();
  const double densities[] = {0.01, 0.1, 0.5, 1.0};
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    const auto a = test::random_set(4096, densities[i % 4], 5000 + i);
    const auto naive = repfn_naive(a);
    if (repfn_fast(a, Engine::kBitset) != naive || repfn_fast(a, Engine::kFft) != naive) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60.0,
          std::to_string(mismatches) + " mismatches over 100 sets, " + fmt("%.2f s (limit 60)", secs)};
}

Outcome cumulative_law() {
  std::string detail;
  bool ok = true;
  for (std::uint64_t N : {10ul, 1000ul, 10000ul}) {
    const auto s = cumulative_rep(repfn_fast(IntegerSet::interval(N), Engine::kFft)).S[N];
    const double n = static_cast<double>(N);
    const double law = 0.5 * n * n + 1.5 * n + 1.0;
    ok = ok && static_cast<double>(s) == law;
    detail += "S(" + std::to_string(N) + ")=" + std::to_string(s) + " ";
  }
  return {ok, detail + "(all equal 0.5N^2+1.5N+1)"};
}

Outcome closed_form_convolution() {
  const auto t = convolution_target(WeightSequence::central_binomial(0.7), 10000);
  double worst = 0.0;
  for (double x : t) worst = std::max(worst, std::abs(x - 0.7));
  return {worst <= 1e-9, fmt("max |T(n)-0.7| = %.3g (limit 1e-9)", worst)};
}

double median_of(std::vector<double> v) { return nearest_rank(std::move(v), 50.0); }

Outcome block_signature() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kBlock;
  cfg.p = 1;
  cfg.q = 2;
  cfg.n_max = 1000000;
  cfg.trials = 50;
  cfg.base_seed = 20240501;
  cfg.checkpoints = {1000, 10000, 100000, 1000000};
  const auto rep = run_experiment(cfg);

  std::vector<double> ratios, m_top;
  for (const auto& t : rep.trials) {
    const double m4 = std::abs(t.checkpoints[1].norm_cum);
    const double m6 = std::abs(t.checkpoints[3].norm_cum);
    ratios.push_back(m6 / std::max(m4, 0.05));
    m_top.push_back(m6);
  }
  const double med_ratio = median_of(ratios);
  const double med_m6 = median_of(m_top);

  // Control: quadratic coefficient 0.51 p^2/q^2 instead of 0.5 p^2/q^2.
  cfg.quadratic_scale = 1.02;
  const auto ctl = run_experiment(cfg);
  std::vector<double> m_ctl;
  for (const auto& t : ctl.trials) m_ctl.push_back(std::abs(t.checkpoints[3].norm_cum));
  const double med_ctl = median_of(m_ctl);

  const double secs = seconds_since(t0);
  std::string detail = fmt("(a) median m(1e6)/max(m(1e4),0.05) = %.3f (limit 2.5); ", med_ratio) +
                       fmt("(b) control median m(1e6) = %.4g", med_ctl) +
                       fmt(" vs %.4g unperturbed; median m at checkpoints:", med_m6);
  for (std::size_t c = 0; c < rep.abs_norm_cum.size(); ++c) {
    detail += " " + fmt("%.3f", rep.abs_norm_cum[c].median);
  }
  return {med_ratio <= 2.5 && med_ctl > 10.0 * med_m6 && secs < 600.0, detail};
}

Outcome bernoulli_signature() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kBernoulli;
  cfg.weights = "constant:c=0.5";
  cfg.n_max = 1000000;
  cfg.trials = 50;
  cfg.base_seed = 20240601;
  cfg.n_start = 100;
  cfg.thresholds = {8.0, 5.0};
  const auto rep = run_experiment(cfg);
  const double secs = seconds_since(t0);

  std::vector<double> worst;
  for (const auto& t : rep.trials) worst.push_back(t.max_abs_norm_pt);
  std::ostringstream detail;
  detail << rep.clean_trials[0] << "/50 trials clean at threshold 8 (need 48); threshold 5 violation counts: min "
         << rep.violation_counts[1].min << ", median " << rep.violation_counts[1].median << ", max "
         << rep.violation_counts[1].max << " (" << rep.clean_trials[1] << "/50 clean)"
         << fmt("; median max|norm_pt| %.3f", median_of(worst));
  return {rep.clean_trials[0] >= 48 && secs < 600.0, detail.str()};
}

Outcome tail_calculators() {
  const double h = hoeffding_tail(std::sqrt(std::log(100.0)));
  const double c = chernoff_tail(2.0, 1.0);
  const double rel_h = std::abs(h - 1e-4) / 1e-4;
  const double rel_c = std::abs(c - 2.0 * std::exp(-1.0)) / (2.0 * std::exp(-1.0));
  return {rel_h <= 1e-12 && rel_c <= 1e-12,
          fmt("hoeffding rel err %.2g, ", rel_h) + fmt("chernoff rel err %.2g (limit 1e-12)", rel_c)};
}

Outcome identity_eq7() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_ratio = 0.0;
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    const auto a = test::random_set(512, u(rng), 9000 + i);
    WeightSequence w = WeightSequence::constant(u(rng));
    switch (i % 3) {
      case 1:
        w = WeightSequence::central_binomial(std::max(u(rng), 1e-3));
        break;
      case 2: {
        std::vector<double> b(513);
        for (auto& x : b) x = u(rng);
        w = WeightSequence::table(b);
        break;
      }
      default:
        break;
    }
    const auto chk = identity_check_eq7(a, w, 512);
    ok = ok && chk.holds();
    worst_ratio = std::max(worst_ratio, chk.residual / chk.tolerance);
  }
  return {ok, fmt("worst residual / (1e-9 (1+max|E|)) = %.3g over 20 pairs", worst_ratio)};
}

Outcome search_correctness() {
  const std::size_t n_max = 16;
  std::vector<double> t(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) t[n] = 0.5 * static_cast<double>(n);
  const auto prob =
      SearchProblem::make(t, parse_search_norm("sqrt", n_max), 1, Objective::kPointwise);
  const auto got = exhaustive_min_error(prob);

  // Unpruned oracle over all 2^17 membership strings in lexicographic order.
  double best = INFINITY;
  std::uint64_t best_code = 0;
  for (std::uint64_t code = 0; code < (1u << 17); ++code) {
    std::vector<std::uint64_t> r(n_max + 1, 0);
    for (std::uint64_t x = 0; x <= n_max; ++x) {
      if (!((code >> (n_max - x)) & 1)) continue;
      for (std::uint64_t y = 0; x + y <= n_max; ++y) {
        if ((code >> (n_max - y)) & 1) ++r[x + y];
      }
    }
    double v = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      v = std::max(v, std::abs(static_cast<double>(r[n]) - t[n]) / std::sqrt(static_cast<double>(n)));
    }
    if (v < best) {
      best = v;
      best_code = code;
    }
  }
  std::uint64_t got_code = 0;
  got.witness.for_each([&](std::uint64_t k) { got_code |= std::uint64_t{1} << (n_max - k); });
  return {got.value == best && got_code == best_code && got.value > 0.0,
          fmt("value %.6g", got.value) + fmt(" vs oracle %.6g", best) +
              (got_code == best_code ? ", witness identical" : ", witness differs") + ", " +
              std::to_string(got.nodes_visited) + " nodes"};
}

Outcome block_reconstruction() {
  std::mt19937_64 rng(4242);
  int exact = 0;
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t q = 2 + rng() % 6;  // 2..7
    const std::uint64_t p = 1 + rng() % (q - 1);
    const std::uint64_t n_blocks = 100000 / q + 1;
    const auto a = sample_block_set({p, q, n_blocks, rng()});
    const std::uint64_t N = a.n_max() - rng() % 50;
    const auto d = block_diagonal_counts(a, q, N);
    const auto s = cumulative_rep(repfn_auto(a.truncated(N)));
    const auto B = N / q;
    if (d.parts_total() == s.S[N] && d.interior == p * p * (B - 1) * B / 2 && d.max_y <= p * p) ++exact;
  }
  return {exact == 20, std::to_string(exact) + "/20 sets reconstruct sum R exactly"};
}

Outcome performance_floor() {
  const auto a = sample_block_set({1, 2, 500001, 1}).truncated(1000000);
  auto t0 = Clock::now();
  const auto r_fft = repfn_fast(a, Engine::kFft);
  const double t_fft = seconds_since(t0);
  t0 = Clock::now();
  const auto r_bitset = repfn_fast(a, Engine::kBitset);
  const double t_bitset = seconds_since(t0);
  const double t_repfn = std::max(t_fft, t_bitset);

  t0 = Clock::now();
  const auto big = sample_block_set({1, 2, 5000000, 2});  // 10^7 integers
  const double t_block = seconds_since(t0);

  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kBlock;
  cfg.n_max = 100000;
  cfg.trials = 16;
  cfg.base_seed = 5;
  cfg.checkpoints = {1000, 100000};
  cfg.thresholds = {1.0};
  std::ostringstream one, eight;
  write_experiment_csv(one, run_experiment(cfg));
  cfg.workers = 8;
  write_experiment_csv(eight, run_experiment(cfg));
  const bool same = one.str() == eight.str();

  return {t_repfn < 10.0 && t_block < 5.0 && same && big.n_max() == 9999999 && r_fft == r_bitset,
          fmt("repfn 1e6: fft %.2f s, ", t_fft) + fmt("bitset %.2f s (limit 10); ", t_bitset) +
              fmt("block sampling over [0,1e7): %.2f s (limit 5); ", t_block) +
              (same ? "CSV identical under 1 and 8 workers" : "CSV DIFFERS across worker counts")};
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run("1", "engine equivalence", engine_equivalence);
  run("2", "exact cumulative law", cumulative_law);
  run("3", "closed-form convolution", closed_form_convolution);
  run("4", "block set error signature", block_signature);
  run("5", "bernoulli set signature", bernoulli_signature);
  run("6", "tail calculators", tail_calculators);
  run("7", "generating-function identity", identity_eq7);
  run("8", "search correctness", search_correctness);
  run("9", "block decomposition", block_reconstruction);
  run("10", "performance and determinism", performance_floor);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
