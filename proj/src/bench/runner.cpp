// SPDX-License-Identifier: MIT
#include "gpband/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "gpband/baselines.hpp"
#include "gpband/bench/svg.hpp"
#include "gpband/contextual_bandit.hpp"
#include "gpband/toys.hpp"
#include "gpband/tree_bandit.hpp"
#include "gpband/zoom_bandit.hpp"

namespace gpband::bench {
namespace {

namespace fs = std::filesystem;

Box make_box(const EnvSpec& e) { return Box(e.lower, e.upper); }

std::unique_ptr<Environment> make_environment(const ExperimentConfig& cfg, std::uint64_t seed) {
  const EnvSpec& e = cfg.env;
  if (e.kind == "grid_gp")
    return std::make_unique<GridGPEnv>(build_kernel(e.kernel), make_box(e), e.grid_res, e.sigma,
                                       seed);
  if (e.kind == "toy1") {
    Toy1Params p;
    p.delta = e.delta;
    return std::make_unique<ToyEnv1>(seed, p);
  }
  if (e.kind == "toy2") {
    Toy2Params p;
    p.delta = e.delta;
    p.budget = e.toy_budget;
    return std::make_unique<ToyEnv2>(seed, p);
  }
  throw std::invalid_argument("config error at \"environment.kind\": \"" + e.kind +
                              "\" is not usable with algorithm \"" + cfg.algorithm + "\"");
}

Kernel require_kernel(const ExperimentConfig& cfg) {
  if (cfg.env.kernel.family.empty())
    throw std::invalid_argument(
        "config error at \"environment.kernel\": required by algorithm \"" + cfg.algorithm +
        "\"");
  return build_kernel(cfg.env.kernel);
}

RunTrace toy2_trace(ToyEnv2& env, std::size_t n) {
  const auto res = toy2_oracle_strategy(env, n);
  RunTrace trace;
  double best_y = -std::numeric_limits<double>::infinity();
  Point best_x;
  for (std::size_t i = 0; i < res.xs.size(); ++i) {
    TraceRow row;
    row.t = i + 1;
    row.n_e = i + 1;
    row.x = {res.xs[i]};
    row.y = res.ys[i];
    row.support = 1;
    trace.rows.push_back(std::move(row));
    if (res.ys[i] > best_y) {
      best_y = res.ys[i];
      best_x = {res.xs[i]};
    }
    trace.recommendations.push_back(best_x);
  }
  finalize_trace(trace, env);
  return trace;
}

}  // namespace

std::size_t worker_count() {
  if (const char* env = std::getenv("GPBENCH_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 32) return std::size_t(v);
    return 1;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return std::min<std::size_t>(std::max<std::size_t>(hc, 1), 32);
}

SeedRunOutput execute_single(const ExperimentConfig& cfg, std::uint64_t seed) {
  SeedRunOutput out;
  out.seed = seed;
  out.meta["config_hash"] = config_hash(cfg);
  out.meta["seed"] = std::to_string(seed);
  out.meta["algorithm"] = cfg.algorithm;
  out.meta["theory_scale"] = format_double(cfg.theory_scale);

  if (cfg.algorithm == "contextual") {
    if (cfg.env.kind != "contextual_gp")
      throw std::invalid_argument(
          "config error at \"environment.kind\": algorithm \"contextual\" needs "
          "\"contextual_gp\"");
    const std::size_t dc = cfg.env.context_dims;
    Box ctx(std::vector<double>(cfg.env.lower.begin(), cfg.env.lower.begin() + std::ptrdiff_t(dc)),
            std::vector<double>(cfg.env.upper.begin(), cfg.env.upper.begin() + std::ptrdiff_t(dc)));
    Box act(std::vector<double>(cfg.env.lower.begin() + std::ptrdiff_t(dc), cfg.env.lower.end()),
            std::vector<double>(cfg.env.upper.begin() + std::ptrdiff_t(dc), cfg.env.upper.end()));
    Kernel kernel = require_kernel(cfg);
    ContextualGPEnv env(kernel, ctx, act, cfg.env.grid_res, cfg.env.sigma, seed);
    ContextualBanditOptions opt;
    opt.u = cfg.u;
    opt.theory_scale = cfg.theory_scale;
    auto res = run_contextual_bandit(env, kernel, cfg.budget, opt);
    out.trace = std::move(res.trace);
    out.dims = cfg.env.lower.size();
    out.meta["best_value_mode"] = "grid";
    out.meta["beta"] = format_double(res.beta);
    out.meta["best_value"] = format_double(out.trace.best_value);
    return out;
  }

  auto env = make_environment(cfg, seed);
  out.dims = env->domain().dims();
  out.meta["best_value_mode"] = env->best_is_exact() ? "exact" : "grid";

  if (cfg.algorithm == "tree") {
    Kernel kernel = require_kernel(cfg);
    TreeBanditOptions opt;
    opt.n_split = cfg.n_split;
    opt.u = cfg.u;
    opt.theory_scale = cfg.theory_scale;
    auto res = cfg.n0 > 0 ? run_tree_bandit_anytime(*env, kernel, cfg.budget, cfg.n0, opt)
                          : run_tree_bandit(*env, kernel, cfg.budget, opt);
    out.trace = std::move(res.trace);
    out.meta["beta"] = format_double(res.beta);
    out.meta["h_max"] = std::to_string(res.h_max);
  } else if (cfg.algorithm == "zoom") {
    Kernel kernel = require_kernel(cfg);
    ZoomBanditOptions opt;
    opt.u = cfg.u;
    opt.theory_scale = cfg.theory_scale;
    auto res = cfg.n0 > 0 ? run_zoom_bandit_anytime(*env, kernel, cfg.budget, cfg.n0, opt)
                          : run_zoom_bandit(*env, kernel, cfg.budget, opt);
    out.trace = std::move(res.trace);
    out.meta["beta"] = format_double(res.beta);
  } else if (cfg.algorithm == "gp_ucb") {
    Kernel kernel = require_kernel(cfg);
    auto res = run_gp_ucb(*env, kernel, cfg.budget, cfg.baseline_grid_res, cfg.u);
    out.trace = std::move(res.trace);
    out.meta["beta"] = format_double(res.beta);
    out.meta["grid_size"] = std::to_string(res.grid_size);
  } else if (cfg.algorithm == "random") {
    out.trace = run_random_search(*env, cfg.budget, derive_seed(seed, 3));
  } else if (cfg.algorithm == "toy2_oracle") {
    auto* toy = dynamic_cast<ToyEnv2*>(env.get());
    if (!toy)
      throw std::invalid_argument(
          "config error at \"environment.kind\": algorithm \"toy2_oracle\" needs \"toy2\"");
    out.trace = toy2_trace(*toy, cfg.budget);
  } else {
    throw std::invalid_argument("config error at \"algorithm\": unknown \"" + cfg.algorithm +
                                "\"");
  }
  out.meta["best_value"] = format_double(out.trace.best_value);
  return out;
}

std::vector<SeedRunOutput> execute_config(const ExperimentConfig& cfg) {
  std::vector<SeedRunOutput> results(cfg.seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::size_t workers = std::min(worker_count(), cfg.seeds.size());
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.seeds.size()) return;
      try {
        results[i] = execute_single(cfg, cfg.seeds[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutcome outcome;
  fs::create_directories(cfg.output);
  const auto results = execute_config(cfg);
  std::vector<RunTrace> traces;
  for (const auto& r : results) {
    const std::string path =
        (fs::path(cfg.output) / (cfg.algorithm + "_seed" + std::to_string(r.seed) + ".csv"))
            .string();
    write_trace_csv(path, r.trace, r.dims, r.meta);
    outcome.csv_paths.push_back(path);
    traces.push_back(r.trace);
  }
  outcome.stats = summarize(traces, default_checkpoints(cfg.budget));
  std::map<std::string, std::string> meta;
  meta["config_hash"] = config_hash(cfg);
  meta["algorithm"] = cfg.algorithm;
  outcome.summary_path = (fs::path(cfg.output) / "summary.json").string();
  write_summary_json(outcome.summary_path, outcome.stats, cfg.seeds, traces, meta);
  return outcome;
}

void compare_outputs(const std::vector<ExperimentConfig>& cfgs, const std::string& svg_path,
                     std::ostream& table_out, std::ostream& diag) {
  struct Entry {
    std::string label;
    std::vector<std::vector<TraceRow>> seeds;  // rows per seed
    std::size_t len = 0;
  };
  std::vector<Entry> entries;
  std::size_t common = std::size_t(-1);
  for (const auto& cfg : cfgs) {
    Entry e;
    e.label = cfg.algorithm + ":" + config_hash(cfg).substr(0, 8);
    for (const auto seed : cfg.seeds) {
      const std::string path =
          (fs::path(cfg.output) / (cfg.algorithm + "_seed" + std::to_string(seed) + ".csv"))
              .string();
      if (!fs::exists(path))
        throw std::runtime_error("compare: missing trace file \"" + path +
                                 "\" (run the config first)");
      auto tf = read_trace_csv(path);
      e.seeds.push_back(std::move(tf.rows));
    }
    e.len = e.seeds.front().size();
    for (const auto& s : e.seeds) e.len = std::min(e.len, s.size());
    common = std::min(common, e.len);
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw std::invalid_argument("compare: no configs given");
  bool mismatch = false;
  for (const auto& e : entries) mismatch |= e.len != common;
  if (mismatch)
    diag << "warning: budgets differ across configs; aligning to common prefix n=" << common
         << "\n";

  table_out << "algorithm          ";
  const auto cps = default_checkpoints(common);
  for (const auto cp : cps) table_out << "  R@" << cp << "  S@" << cp;
  table_out << "\n";
  std::vector<PlotSeries> series;
  for (const auto& e : entries) {
    table_out << e.label;
    for (std::size_t pad = e.label.size(); pad < 19; ++pad) table_out << ' ';
    for (const auto cp : cps) {
      std::vector<double> cum, simple;
      for (const auto& s : e.seeds) {
        cum.push_back(s[cp - 1].cum_regret);
        simple.push_back(s[cp - 1].simple_regret);
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "  %.4g  %.4g", median(cum), median(simple));
      table_out << buf;
    }
    table_out << "\n";
    PlotSeries ps;
    ps.name = e.label;
    for (std::size_t ne = 1; ne <= common; ++ne) {
      std::vector<double> cum;
      for (const auto& s : e.seeds) cum.push_back(s[ne - 1].cum_regret);
      ps.xs.push_back(double(ne));
      ps.ys.push_back(median(cum));
    }
    series.push_back(std::move(ps));
  }
  if (!svg_path.empty())
    write_line_svg(svg_path, "Median cumulative regret", "evaluations", "cumulative regret",
                   series);
}

}  // namespace gpband::bench
