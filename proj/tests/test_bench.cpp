// SPDX-License-Identifier: MIT
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gpband/bench/runner.hpp"

using namespace gpband;
using namespace gpband::bench;

namespace {

std::filesystem::path scratch_dir() {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  auto dir = std::filesystem::temp_directory_path() /
             ("gpband_test_" + std::to_string(stamp));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig toy1_random_config(const std::string& outdir) {
  ExperimentConfig cfg;
  cfg.algorithm = "random";
  cfg.budget = 4;
  cfg.seeds = {1, 2};
  cfg.env.kind = "toy1";
  cfg.env.kernel.family.clear();
  cfg.env.lower = {0.0};
  cfg.env.upper = {1.0};
  cfg.output = outdir;
  return cfg;
}

}  // namespace

TEST_CASE("config serialization is a fixed point with a stable hash") {
  const std::string text = R"({
    "algorithm": "tree",
    "budget": 12,
    "seeds": [4, 2],
    "theory_scale": 0.25,
    "environment": {
      "kind": "grid_gp",
      "grid_res": 64,
      "sigma": 0.1,
      "lower": [0.0],
      "upper": [1.0],
      "kernel": {"family": "matern52", "dims": 1, "lengthscale": 0.3, "variance": 1.0}
    },
    "output": "out/demo"
  })";
  const ExperimentConfig cfg = parse_config(text);
  CHECK(cfg.algorithm == "tree");
  CHECK(cfg.budget == 12);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{4, 2});
  const std::string canon = dump_config(cfg);
  CHECK(dump_config(parse_config(canon)) == canon);
  const std::string hash = config_hash(cfg);
  CHECK(hash.size() == 16);
  CHECK(hash.find_first_not_of("0123456789abcdef") == std::string::npos);
  ExperimentConfig other = cfg;
  other.budget = 13;
  CHECK(config_hash(other) != hash);
}

TEST_CASE("config errors name the offending key") {
  const char* missing = R"({"budget": 5})";
  CHECK_THROWS_WITH_AS(parse_config(missing), doctest::Contains("algorithm"),
                       std::invalid_argument);
  const char* unknown = R"({"algorithm": "random", "budget": 5, "seeds": [1],
    "environment": {"kind": "toy1", "lower": [0], "upper": [1]}, "turbo": true})";
  CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("turbo"),
                       std::invalid_argument);
  const char* bad_family = R"({"algorithm": "tree", "budget": 5, "seeds": [1],
    "environment": {"kind": "grid_gp", "lower": [0], "upper": [1],
                    "kernel": {"family": "cubic", "dims": 1}}})";
  CHECK_THROWS_WITH_AS(parse_config(bad_family), doctest::Contains("cubic"),
                       std::invalid_argument);
}

TEST_CASE("kernel specs build composite kernels with the right arity") {
  KernelSpec spec;
  spec.family = "product";
  KernelSpec a;
  a.family = "se";
  a.dims = 1;
  KernelSpec b;
  b.family = "matern32";
  b.dims = 1;
  b.offset = 1;
  spec.parts = {a, b};
  CHECK(build_kernel(spec).input_dims() == 2);
}

TEST_CASE("trace csv round-trips nasty doubles bitwise") {
  const auto dir = scratch_dir();
  RunTrace trace;
  for (std::uint64_t i = 1; i <= 3; ++i) {
    TraceRow row;
    row.t = i;
    row.n_e = i;
    row.x = {std::nextafter(0.1, 1.0), -1e-17};
    row.y = i == 2 ? 1e300 : -0.25;
    row.delta = 1.0 / 3.0;
    row.cum_regret = double(i) / 3.0;
    row.simple_regret = 5e-324;
    row.support = 7;
    row.wall_ns = 123456789 + i;
    trace.rows.push_back(row);
  }
  const std::string path = (dir / "trace.csv").string();
  write_trace_csv(path, trace, 2, {{"seed", "9"}, {"config_hash", "deadbeef"}});
  const TraceFile tf = read_trace_csv(path);
  CHECK(tf.meta.at("seed") == "9");
  CHECK(tf.meta.at("config_hash") == "deadbeef");
  REQUIRE(tf.dims == 2);
  REQUIRE(tf.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(tf.rows[i].x == trace.rows[i].x);
    CHECK(tf.rows[i].y == trace.rows[i].y);
    CHECK(tf.rows[i].delta == trace.rows[i].delta);
    CHECK(tf.rows[i].cum_regret == trace.rows[i].cum_regret);
    CHECK(tf.rows[i].simple_regret == trace.rows[i].simple_regret);
    CHECK(tf.rows[i].support == trace.rows[i].support);
    CHECK(tf.rows[i].wall_ns == trace.rows[i].wall_ns);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("trace csv errors carry the file and line number") {
  const auto dir = scratch_dir();
  RunTrace trace;
  TraceRow row;
  row.t = 1;
  row.n_e = 1;
  row.x = {0.5};
  trace.rows.push_back(row);
  const std::string path = (dir / "broken.csv").string();
  write_trace_csv(path, trace, 1, {{"seed", "1"}});
  {
    std::ofstream app(path, std::ios::app);
    app << "not,enough,cells\n";
  }
  // schema + one meta line + column header + one row puts the garbage at line 5.
  CHECK_THROWS_WITH_AS(read_trace_csv(path), doctest::Contains((path + ":5").c_str()),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(read_trace_csv((dir / "absent.csv").string()),
                       doctest::Contains("absent.csv"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("median and iqr use linear interpolation between order statistics") {
  CHECK(median({5.0}) == 5.0);
  CHECK(median({1.0, 3.0}) == 2.0);
  CHECK(median({100.0, 1.0, 2.0}) == 2.0);
  CHECK(iqr({0.0, 1.0, 2.0, 3.0}) == 1.5);
  CHECK(iqr({1.0, 2.0, 3.0, 4.0, 5.0}) == 2.0);
  CHECK(default_checkpoints(200) == std::vector<std::size_t>{50, 100, 150, 200});
  CHECK(default_checkpoints(5) == std::vector<std::size_t>{1, 2, 3, 5});
  CHECK(default_checkpoints(1) == std::vector<std::size_t>{1});
}

TEST_CASE("summaries align traces to the shortest run and fit log-log slopes") {
  std::vector<RunTrace> traces(3);
  for (std::size_t s = 0; s < 3; ++s) {
    const std::size_t len = s == 2 ? 10 : 8;
    for (std::size_t i = 1; i <= len; ++i) {
      TraceRow row;
      row.n_e = i;
      row.cum_regret = double(s + 1) * double(i);
      row.simple_regret = 1.0 / double(i);
      traces[s].rows.push_back(row);
    }
  }
  const SummaryStats st = summarize(traces, default_checkpoints(8));
  CHECK(st.budget == 8);
  CHECK(st.seed_count == 3);
  REQUIRE(st.checkpoints.size() == 4);
  CHECK(st.checkpoints[1].n == 4);
  CHECK(st.checkpoints[1].cum_median == 8.0);
  CHECK(st.checkpoints[1].cum_iqr == 4.0);
  CHECK(st.checkpoints[1].simple_median == 0.25);
  CHECK(st.simple_slope == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("worker count honours the environment override") {
  setenv("GPBENCH_WORKERS", "1", 1);
  CHECK(worker_count() == 1);
  setenv("GPBENCH_WORKERS", "7", 1);
  CHECK(worker_count() == 7);
  setenv("GPBENCH_WORKERS", "0", 1);
  CHECK(worker_count() == 1);
  unsetenv("GPBENCH_WORKERS");
  CHECK(worker_count() >= 1);
}

TEST_CASE("single-seed execution is deterministic and carries metadata") {
  const ExperimentConfig cfg = toy1_random_config("unused");
  const SeedRunOutput a = execute_single(cfg, 1);
  const SeedRunOutput b = execute_single(cfg, 1);
  REQUIRE(a.trace.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.trace.rows[i].x == b.trace.rows[i].x);
    CHECK(a.trace.rows[i].y == b.trace.rows[i].y);
    CHECK(a.trace.rows[i].delta >= 0.0);
  }
  CHECK(a.meta.at("config_hash") == config_hash(cfg));
  CHECK(a.meta.at("algorithm") == "random");
  CHECK(a.dims == 1);
}

TEST_CASE("the descent reference algorithm only accepts its own environment") {
  ExperimentConfig cfg;
  cfg.algorithm = "toy2_oracle";
  cfg.budget = 5;
  cfg.seeds = {1};
  cfg.env.kind = "toy2";
  cfg.env.lower = {0.0};
  cfg.env.upper = {1.0};
  const SeedRunOutput out = execute_single(cfg, 1);
  REQUIRE(out.trace.rows.size() == 5);
  CHECK(out.trace.rows[0].x == Point{0.5});
  CHECK(out.trace.rows[0].delta >= 0.0);
  cfg.env.kind = "toy1";
  CHECK_THROWS_WITH_AS(execute_single(cfg, 1), doctest::Contains("toy2_oracle"),
                       std::invalid_argument);
}

TEST_CASE("contextual configs run end to end through the dispatcher") {
  ExperimentConfig cfg;
  cfg.algorithm = "contextual";
  cfg.budget = 3;
  cfg.seeds = {1};
  cfg.env.kind = "contextual_gp";
  cfg.env.context_dims = 1;
  cfg.env.grid_res = 8;
  cfg.env.sigma = 0.1;
  cfg.env.lower = {0.0, 0.0};
  cfg.env.upper = {1.0, 1.0};
  cfg.env.kernel.family = "product";
  KernelSpec a;
  a.family = "se";
  a.dims = 1;
  KernelSpec b;
  b.family = "matern32";
  b.dims = 1;
  b.offset = 1;
  cfg.env.kernel.parts = {a, b};
  const SeedRunOutput out = execute_single(cfg, 1);
  REQUIRE(out.trace.rows.size() == 3);
  CHECK(out.dims == 2);
  CHECK(out.meta.count("beta") == 1);
}

TEST_CASE("experiments write per-seed traces plus a summary, reproducibly") {
  const auto dir = scratch_dir();
  setenv("GPBENCH_WORKERS", "2", 1);
  const ExperimentConfig cfg = toy1_random_config((dir / "out").string());
  const ExperimentOutcome first = run_experiment(cfg);
  REQUIRE(first.csv_paths.size() == 2);
  for (const auto& p : first.csv_paths) CHECK(std::filesystem::exists(p));
  CHECK(std::filesystem::exists(first.summary_path));
  CHECK(slurp(first.summary_path).find(config_hash(cfg)) != std::string::npos);
  std::vector<std::string> bytes;
  for (const auto& p : first.csv_paths) bytes.push_back(slurp(p));
  const ExperimentOutcome second = run_experiment(cfg);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    // wall_ns varies run to run; compare everything before that column.
    const std::string x = bytes[i], y = slurp(second.csv_paths[i]);
    std::istringstream xs(x), ys(y);
    std::string xl, yl;
    while (std::getline(xs, xl) && std::getline(ys, yl)) {
      if (!xl.empty() && xl[0] != '#') {
        xl = xl.substr(0, xl.rfind(','));
        yl = yl.substr(0, yl.rfind(','));
      }
      CHECK(xl == yl);
    }
  }
  unsetenv("GPBENCH_WORKERS");
  std::filesystem::remove_all(dir);
}

TEST_CASE("comparison aligns budgets, plots medians, and names missing files") {
  const auto dir = scratch_dir();
  ExperimentConfig ca = toy1_random_config((dir / "a").string());
  ExperimentConfig cb;
  cb.algorithm = "toy2_oracle";
  cb.budget = 6;
  cb.seeds = {1};
  cb.env.kind = "toy2";
  cb.env.lower = {0.0};
  cb.env.upper = {1.0};
  cb.output = (dir / "b").string();
  run_experiment(ca);
  run_experiment(cb);
  std::ostringstream table, diag;
  const std::string svg = (dir / "plot.svg").string();
  compare_outputs({ca, cb}, svg, table, diag);
  CHECK(table.str().find("random:") != std::string::npos);
  CHECK(table.str().find("toy2_oracle:") != std::string::npos);
  CHECK(diag.str().find("common prefix") != std::string::npos);
  CHECK(slurp(svg).rfind("<?xml", 0) == 0);

  ExperimentConfig cc = toy1_random_config((dir / "never_ran").string());
  std::ostringstream t2, d2;
  CHECK_THROWS_WITH_AS(compare_outputs({cc}, "", t2, d2), doctest::Contains("missing trace"),
                       std::runtime_error);
  std::filesystem::remove_all(dir);
}
