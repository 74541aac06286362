// Command line front end: construct, repfn, errors, bounds, analytic, search,
// experiment. Exit codes: 0 ok, 2 parameter, 3 format, 4 capacity.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "efrep/analytic.hpp"
#include "efrep/bounds.hpp"
#include "efrep/construct.hpp"
#include "efrep/error.hpp"
#include "efrep/experiment.hpp"
#include "efrep/format.hpp"
#include "efrep/repfn.hpp"
#include "efrep/search.hpp"
#include "efrep/set_io.hpp"
#include "efrep/weights.hpp"

using namespace efrep;

namespace {

// Writes to `path`, or stdout when empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw FormatError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

IntegerSet load_set(const std::string& path, std::optional<std::uint64_t> n_max) {
  auto a = read_set(path);
  if (n_max) a = a.truncated(*n_max);
  return a;
}

void print_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive representation functions: exact counts, random constructions, error bounds"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "Sample a random set (EFSET1 output)");
  construct->require_subcommand(1);
  BlockSamplerParams block;
  std::string out_path;
  unsigned workers = 1;
  auto* c_block = construct->add_subcommand("block", "p uniform elements from every length-q block");
  c_block->add_option("--p", block.p)->required();
  c_block->add_option("--q", block.q)->required();
  c_block->add_option("--blocks", block.n_blocks)->required();
  c_block->add_option("--seed", block.seed)->required();
  c_block->add_option("--out", out_path)->required();
  c_block->add_option("--workers", workers);

  std::string weights_spec;
  std::uint64_t n_max = 0;
  std::uint64_t seed = 0;
  auto* c_bern = construct->add_subcommand("bernoulli", "Include n with probability b_n");
  c_bern->add_option("--weights", weights_spec)->required();
  c_bern->add_option("--n-max", n_max)->required();
  c_bern->add_option("--seed", seed)->required();
  c_bern->add_option("--out", out_path)->required();
  c_bern->add_option("--workers", workers);
  std::string set_format = "efset1";
  c_block->add_option("--format", set_format, "efset1 or text");
  c_bern->add_option("--format", set_format, "efset1 or text");

  // repfn
  std::string set_path, engine = "auto";
  std::optional<std::uint64_t> opt_n_max;
  auto* repfn_cmd = app.add_subcommand("repfn", "R(n) and S(N) as CSV n,R,S");
  repfn_cmd->add_option("--set", set_path)->required();
  repfn_cmd->add_option("--engine", engine, "auto, naive, bitset or fft");
  repfn_cmd->add_option("--n-max", opt_n_max, "truncate the set first");
  repfn_cmd->add_option("--workers", workers);
  repfn_cmd->add_option("--out", out_path);

  // errors
  auto* errors_cmd = app.add_subcommand("errors", "Error series as CSV n,e,E,norm_pt,norm_cum");
  errors_cmd->add_option("--set", set_path)->required();
  errors_cmd->add_option("--weights", weights_spec)->required();
  errors_cmd->add_option("--n-max", opt_n_max);
  errors_cmd->add_option("--out", out_path);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Tail calculators and violation scans");
  bounds_cmd->require_subcommand(1);
  double y = 0.0, eps = 0.0, ex = 0.0, threshold = 8.0;
  auto* b_hoeff = bounds_cmd->add_subcommand("hoeffding", "exp(-2 y^2)");
  b_hoeff->add_option("--y", y)->required();
  auto* b_chern = bounds_cmd->add_subcommand("chernoff", "2 exp(-min(eps^2/4, eps/2) E)");
  b_chern->add_option("--eps", eps)->required();
  b_chern->add_option("--ex", ex)->required();
  std::string which = "pointwise";
  std::uint64_t n_start = 2;
  auto* b_scan = bounds_cmd->add_subcommand("scan", "Indices whose normalized error reaches the threshold");
  b_scan->add_option("--set", set_path)->required();
  b_scan->add_option("--weights", weights_spec)->required();
  b_scan->add_option("--threshold", threshold);
  b_scan->add_option("--which", which, "pointwise or cumulative");
  b_scan->add_option("--n-start", n_start);
  b_scan->add_option("--n-max", opt_n_max);

  // analytic
  auto* analytic_cmd = app.add_subcommand("analytic", "Generating-function diagnostics");
  analytic_cmd->require_subcommand(1);
  std::vector<double> radii;
  double tol = 1e-12;
  auto* a_radial = analytic_cmd->add_subcommand("radial", "A(r), f(r) and power sums");
  a_radial->add_option("--set", set_path)->required();
  a_radial->add_option("--weights", weights_spec)->required();
  a_radial->add_option("--r", radii)->required()->delimiter(',');
  a_radial->add_option("--tol", tol);
  a_radial->add_option("--out", out_path);
  auto* a_eq7 = analytic_cmd->add_subcommand("eq7", "Check A^2 - f^2 = (1 - z) sum E_n z^n");
  a_eq7->add_option("--set", set_path)->required();
  a_eq7->add_option("--weights", weights_spec)->required();
  a_eq7->add_option("--n-max", n_max)->required();
  std::vector<std::size_t> horizons;
  auto* a_cond4 = analytic_cmd->add_subcommand("cond4", "(sum b^2)(sum E^2)/(sum b)^3 trajectory");
  a_cond4->add_option("--set", set_path)->required();
  a_cond4->add_option("--weights", weights_spec)->required();
  a_cond4->add_option("--horizons", horizons)->required()->delimiter(',');
  a_cond4->add_option("--out", out_path);

  // search
  auto* search_cmd = app.add_subcommand("search", "Minimize the worst normalized error over subsets");
  search_cmd->require_subcommand(1);
  std::string target_spec = "constant-linear:c=0.5", norm_spec = "sqrt", objective = "pointwise";
  std::uint64_t search_n_max = 16, search_n_start = 1;
  auto* s_exh = search_cmd->add_subcommand("exhaustive", "Exact branch and bound (n_max <= 26)");
  auto* s_greedy = search_cmd->add_subcommand("greedy", "Greedy membership decisions");
  for (auto* s : {s_exh, s_greedy}) {
    s->add_option("--n-max", search_n_max);
    s->add_option("--target", target_spec);
    s->add_option("--norm", norm_spec, "sqrt or one");
    s->add_option("--n-start", search_n_start);
    s->add_option("--objective", objective, "pointwise or cumulative");
  }

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Multi-seed trials of the random constructions");
  std::string config_path, kind;
  ExperimentConfig cfg_flags;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> thresholds;
  exp_cmd->add_option("--config", config_path, "JSON config; flags override its fields");
  auto* o_kind = exp_cmd->add_option("--kind", kind, "thm3 or thm6");
  auto* o_p = exp_cmd->add_option("--p", cfg_flags.p);
  auto* o_q = exp_cmd->add_option("--q", cfg_flags.q);
  auto* o_w = exp_cmd->add_option("--weights", cfg_flags.weights);
  auto* o_n = exp_cmd->add_option("--n-max", cfg_flags.n_max);
  auto* o_t = exp_cmd->add_option("--trials", cfg_flags.trials);
  auto* o_s = exp_cmd->add_option("--base-seed", cfg_flags.base_seed);
  auto* o_cp = exp_cmd->add_option("--checkpoints", checkpoints)->delimiter(',');
  auto* o_th = exp_cmd->add_option("--thresholds", thresholds)->delimiter(',');
  auto* o_ns = exp_cmd->add_option("--n-start", cfg_flags.n_start);
  auto* o_qs = exp_cmd->add_option("--quadratic-scale", cfg_flags.quadratic_scale);
  auto* o_wk = exp_cmd->add_option("--workers", cfg_flags.workers);
  auto* o_mb = exp_cmd->add_option("--memory-budget", cfg_flags.memory_budget, "bytes per worker");
  auto* o_csv = exp_cmd->add_option("--csv", cfg_flags.csv_path);
  auto* o_json = exp_cmd->add_option("--json", cfg_flags.json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::kParameter);
  }

  try {
    if (construct->parsed()) {
      IntegerSet a = c_block->parsed()
                         ? sample_block_set(block, workers)
                         : sample_bernoulli_set(WeightSequence::parse(weights_spec), n_max, seed, workers);
      write_set(out_path, a, parse_set_format(set_format));
      std::cerr << "wrote " << a.size() << " elements, n_max=" << a.n_max() << " to " << out_path << '\n';
    } else if (repfn_cmd->parsed()) {
      const auto a = load_set(set_path, opt_n_max);
      const auto r = engine == "auto" ? repfn_auto(a, workers) : repfn_fast(a, parse_engine(engine), workers);
      Output out(out_path);
      write_profile_csv(out.stream(), r, cumulative_rep(r));
    } else if (errors_cmd->parsed()) {
      const auto a = load_set(set_path, opt_n_max);
      const auto s = error_series(repfn_auto(a), WeightSequence::parse(weights_spec));
      Output out(out_path);
      write_error_csv(out.stream(), s);
    } else if (bounds_cmd->parsed()) {
      if (b_hoeff->parsed()) {
        std::cout << format_real(hoeffding_tail(y)) << '\n';
      } else if (b_chern->parsed()) {
        std::cout << format_real(chernoff_tail(eps, ex)) << '\n';
      } else {
        const auto a = load_set(set_path, opt_n_max);
        const auto s = error_series(repfn_auto(a), WeightSequence::parse(weights_spec));
        ErrorKind kind_e;
        if (which == "pointwise") {
          kind_e = ErrorKind::kPointwise;
        } else if (which == "cumulative") {
          kind_e = ErrorKind::kCumulative;
        } else {
          throw ParameterError("--which must be pointwise or cumulative");
        }
        const auto rep = violation_scan(s, threshold, kind_e, n_start);
        nlohmann::json j{{"threshold", threshold}, {"which", which}, {"n_start", n_start},
                         {"count", rep.count()}, {"indices", rep.indices}};
        j["max_index"] = rep.max_index ? nlohmann::json(*rep.max_index) : nlohmann::json();
        j["worst_index"] = rep.worst_index ? nlohmann::json(*rep.worst_index) : nlohmann::json();
        j["worst_value"] = rep.worst_index ? nlohmann::json(rep.worst_value) : nlohmann::json();
        print_json(std::cout, j);
      }
    } else if (analytic_cmd->parsed()) {
      const auto a = read_set(set_path);
      const auto w = WeightSequence::parse(weights_spec);
      if (a_radial->parsed()) {
        Output out(out_path);
        auto& os = out.stream();
        os << "r,A_r,f_r,b_lin,b_sq,tail_bound,ratio,reliable\n";
        for (double r : radii) {
          const auto d = radial_eval(a, w, r, tol);
          os << format_real(d.r) << ',' << format_real(d.A_r) << ',' << format_real(d.f_r) << ','
             << format_real(d.b_lin) << ',' << format_real(d.b_sq) << ','
             << format_real(d.tail_bound) << ',' << format_real(d.ratio) << ','
             << (d.reliable ? 1 : 0) << '\n';
        }
      } else if (a_eq7->parsed()) {
        const auto c = identity_check_eq7(a, w, n_max);
        print_json(std::cout, {{"residual", c.residual}, {"max_abs_E", c.max_abs_E},
                               {"tolerance", c.tolerance}, {"holds", c.holds()}});
        if (!c.holds()) return 1;
      } else {
        const auto last = *std::max_element(horizons.begin(), horizons.end());
        const auto s = error_series(repfn_auto(a.truncated(last)), w);
        const auto traj = condition4_trajectory(w, s.E, horizons);
        Output out(out_path);
        out.stream() << "N,ratio\n";
        for (std::size_t i = 0; i < horizons.size(); ++i) {
          out.stream() << horizons[i] << ',' << (traj[i] ? format_real(*traj[i]) : "") << '\n';
        }
      }
    } else if (search_cmd->parsed()) {
      Objective obj;
      if (objective == "pointwise") {
        obj = Objective::kPointwise;
      } else if (objective == "cumulative") {
        obj = Objective::kCumulative;
      } else {
        throw ParameterError("--objective must be pointwise or cumulative");
      }
      const auto prob = SearchProblem::make(parse_search_target(target_spec, search_n_max),
                                            parse_search_norm(norm_spec, search_n_max),
                                            search_n_start, obj);
      const auto res = s_exh->parsed() ? exhaustive_min_error(prob) : greedy_min_error(prob);
      print_json(std::cout, {{"value", res.value},
                             {"witness", res.witness.elements()},
                             {"nodes_visited", res.nodes_visited}});
    } else if (exp_cmd->parsed()) {
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw FormatError("cannot open config '" + config_path + "'");
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw FormatError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = config_from_json(j);
      }
      if (o_kind->count()) cfg.kind = parse_kind(kind);
      if (o_p->count()) cfg.p = cfg_flags.p;
      if (o_q->count()) cfg.q = cfg_flags.q;
      if (o_w->count()) cfg.weights = cfg_flags.weights;
      if (o_n->count()) cfg.n_max = cfg_flags.n_max;
      if (o_t->count()) cfg.trials = cfg_flags.trials;
      if (o_s->count()) cfg.base_seed = cfg_flags.base_seed;
      if (o_cp->count()) cfg.checkpoints = checkpoints;
      if (o_th->count()) cfg.thresholds = thresholds;
      if (o_ns->count()) cfg.n_start = cfg_flags.n_start;
      if (o_qs->count()) cfg.quadratic_scale = cfg_flags.quadratic_scale;
      if (o_wk->count()) cfg.workers = cfg_flags.workers;
      if (o_mb->count()) cfg.memory_budget = cfg_flags.memory_budget;
      if (o_csv->count()) cfg.csv_path = cfg_flags.csv_path;
      if (o_json->count()) cfg.json_path = cfg_flags.json_path;

      const auto rep = run_experiment(cfg);
      if (!cfg.csv_path.empty()) {
        Output out(cfg.csv_path);
        write_experiment_csv(out.stream(), rep);
      }
      const auto summary = experiment_summary(rep);
      if (!cfg.json_path.empty()) {
        Output out(cfg.json_path);
        print_json(out.stream(), summary);
      } else {
        print_json(std::cout, summary);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kParameter);
  }
  return 0;
}
