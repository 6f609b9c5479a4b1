// SPDX-License-Identifier: MIT
// Command-line harness: run experiment configs, compare outputs, print the
// toy information-gain table, and run the invariant battery.
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpband/bench/runner.hpp"
#include "gpband/bench/validate.hpp"
#include "gpband/toys.hpp"

namespace {

int cmd_run(const std::vector<std::string>& paths) {
  for (const auto& path : paths) {
    const auto cfg = gpband::bench::load_config_file(path);
    std::cout << path << ": algorithm=" << cfg.algorithm
              << " hash=" << gpband::bench::config_hash(cfg) << " seeds=" << cfg.seeds.size()
              << "\n";
    const auto outcome = gpband::bench::run_experiment(cfg);
    for (const auto& p : outcome.csv_paths) std::cout << "  wrote " << p << "\n";
    std::cout << "  wrote " << outcome.summary_path << "\n";
    std::printf("  %6s %14s %14s\n", "n", "median R_n", "median S_n");
    for (const auto& cp : outcome.stats.checkpoints)
      std::printf("  %6zu %14.6g %14.6g\n", cp.n, cp.cum_median, cp.simple_median);
    std::printf("  simple-regret log-log slope: %.4f\n", outcome.stats.simple_slope);
    std::printf("  total wall: %.3f s\n", double(outcome.stats.total_wall_ns) * 1e-9);
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& paths, const std::string& svg) {
  std::vector<gpband::bench::ExperimentConfig> cfgs;
  cfgs.reserve(paths.size());
  for (const auto& path : paths) cfgs.push_back(gpband::bench::load_config_file(path));
  gpband::bench::compare_outputs(cfgs, svg, std::cout, std::cerr);
  return 0;
}

int cmd_toy_gamma(double delta, double sigma, std::vector<std::size_t> ns) {
  if (ns.empty()) ns = {10, 25, 50, 100, 200};
  const auto rows = gpband::toy1_gamma_report(delta, sigma, ns);
  std::printf("delta=%-8g sigma=%-8g\n", delta, sigma);
  std::printf("%6s %16s %16s %16s\n", "n", "closed_form", "series", "computed");
  for (const auto& r : rows)
    std::printf("%6zu %16.9g %16.9g %16.9g\n", r.n, r.closed_form, r.series, r.computed);
  return 0;
}

int cmd_validate(bool fast) {
  const auto results = gpband::bench::run_validation(fast);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    passed += r.pass ? 1 : 0;
  }
  std::cout << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-process bandit benchmark harness"};
  app.require_subcommand(1);

  std::vector<std::string> run_paths;
  auto* run = app.add_subcommand("run", "Run experiment configs; write per-seed CSV + summary");
  run->add_option("configs", run_paths, "JSON config files")
      ->required()
      ->check(CLI::ExistingFile);

  std::vector<std::string> cmp_paths;
  std::string svg_path;
  auto* cmp = app.add_subcommand("compare", "Tabulate previously produced outputs side by side");
  cmp->add_option("configs", cmp_paths, "JSON config files whose outputs to compare")
      ->required()
      ->check(CLI::ExistingFile);
  cmp->add_option("--plot", svg_path, "write a median cumulative-regret SVG to this path");

  double delta = 0.05, sigma = 1.0;
  std::vector<std::size_t> ns;
  auto* gamma = app.add_subcommand("toy-gamma", "Information-gain table for the series process");
  gamma->add_option("--delta", delta, "failure probability delta")->check(CLI::PositiveNumber);
  gamma->add_option("--sigma", sigma, "observation noise sigma")->check(CLI::PositiveNumber);
  gamma->add_option("--n", ns, "budgets to report (default 10 25 50 100 200)");

  bool fast = false;
  auto* val = app.add_subcommand("validate", "Run the invariant battery");
  val->add_flag("--fast", fast, "structural checks only, skip the statistical suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_paths);
    if (*cmp) return cmd_compare(cmp_paths, svg_path);
    if (*gamma) return cmd_toy_gamma(delta, sigma, ns);
    if (*val) return cmd_validate(fast);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
