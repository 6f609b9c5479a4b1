// SPDX-License-Identifier: MIT
#include "gpband/bench/validate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "gpband/baselines.hpp"
#include "gpband/bench/config.hpp"
#include "gpband/bench/csv.hpp"
#include "gpband/bench/svg.hpp"
#include "gpband/confidence.hpp"
#include "gpband/contextual_bandit.hpp"
#include "gpband/covering.hpp"
#include "gpband/env.hpp"
#include "gpband/sampler.hpp"
#include "gpband/toys.hpp"
#include "gpband/tree_bandit.hpp"
#include "gpband/zoom_bandit.hpp"

namespace gpband::bench {
namespace {

template <class... Args>
std::string msg(Args&&... parts) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << parts);
  return os.str();
}

[[noreturn]] void fail(const std::string& m) { throw std::runtime_error(m); }

void require(bool ok, const std::string& m) {
  if (!ok) fail(m);
}

std::vector<std::pair<std::string, Kernel>> kernel_zoo(std::size_t dims) {
  return {
      {"se", Kernel::squared_exp(dims, 0.6, 1.2)},
      {"matern12", Kernel::matern12(dims, 0.8, 0.9)},
      {"matern32", Kernel::matern32(dims, 0.5, 1.1)},
      {"matern52", Kernel::matern52(dims, 0.7, 1.0)},
      {"rq", Kernel::rational_quadratic(dims, 0.6, 1.0, 1.0, 2.0)},
      {"triangle", Kernel::triangle(dims, 0.9, 1.0)},
  };
}

Point random_point(Rng& rng, std::size_t dims) {
  Point p(dims);
  for (auto& c : p) c = draw_uniform(rng, 0.0, 1.0);
  return p;
}

/// Dense GP predictor solved from scratch with an LDLT factorization; shares
/// no state or code path with Posterior's incremental Cholesky.
PosteriorStats dense_predict(const Kernel& k, double noise_var, const std::vector<Point>& xs,
                             const std::vector<double>& ys, const Point& q) {
  const Eigen::Index t = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd K(t, t);
  Eigen::VectorXd y(t), kq(t);
  for (Eigen::Index i = 0; i < t; ++i) {
    const auto& xi = xs[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < t; ++j) K(i, j) = k(xi, xs[static_cast<std::size_t>(j)]);
    K(i, i) += noise_var > 0.0 ? noise_var : 1e-10 * k(xi, xi);
    y(i) = ys[static_cast<std::size_t>(i)];
    kq(i) = k(xi, q);
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
  PosteriorStats s;
  s.mean = kq.dot(ldlt.solve(y));
  s.sd = std::sqrt(std::max(0.0, k(q, q) - kq.dot(ldlt.solve(kq))));
  return s;
}

bool rows_equal(const std::vector<TraceRow>& a, const std::vector<TraceRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const TraceRow& r = a[i];
    const TraceRow& s = b[i];
    if (r.t != s.t || r.n_e != s.n_e || r.x != s.x || r.y != s.y || r.delta != s.delta ||
        r.cum_regret != s.cum_regret || r.simple_regret != s.simple_regret ||
        r.support != s.support)
      return false;
  }
  return true;
}

std::filesystem::path scratch_dir() {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  auto p = std::filesystem::temp_directory_path() / ("gpband-validate-" + std::to_string(stamp));
  std::filesystem::create_directories(p);
  return p;
}

std::vector<NodeId> nodes_at_depth(const Partition& part, unsigned depth) {
  std::vector<NodeId> level{Partition::root()};
  for (unsigned h = 0; h < depth; ++h) {
    std::vector<NodeId> next;
    next.reserve(level.size() * part.n_split());
    for (const auto& id : level)
      for (unsigned s = 1; s <= part.n_split(); ++s) next.push_back(part.child(id, s));
    level = std::move(next);
  }
  return level;
}

std::string check_confidence_constants() {
  const Envelope lip{1.0, 1.0, std::numeric_limits<double>::infinity()};
  const ChainingConstants cc = make_chaining_constants(lip, 1);
  require(std::abs(cc.alpha1 - 0.99150067075675427) <= 1e-12,
          msg("alpha1 drifted: ", cc.alpha1));
  require(std::abs(cc.alpha2 - 2.6945075054715014) <= 1e-12, msg("alpha2 drifted: ", cc.alpha2));

  const auto cfg = make_confidence_config(lip, 1, 3, 100, 2.0, 0.1);
  const double beta = beta_n(cfg, BetaMode::TightOddN, 10);
  require(std::abs(beta - 5.9341840259958789) <= 1e-12, msg("beta(u=2,n=100) drifted: ", beta));

  const auto cfg_a1 = make_confidence_config(lip, 1, 2, 1000, 2.0, 0.1);
  require(max_depth(cfg_a1) == 10, msg("max depth at alpha=1: ", max_depth(cfg_a1)));
  const auto cfg_a2 = make_confidence_config(Envelope{1.0, 0.5, 1.0}, 1, 2, 1000, 2.0, 0.1);
  require(max_depth(cfg_a2) == 30, msg("max depth at alpha=1/2: ", max_depth(cfg_a2)));

  require(covering_number_unit(0.1, 2) == 25, "covering number (r=0.1, D=2) is not 25");
  require(packing_number_unit(0.3, 1) == 4 && packing_number_unit(0.3, 2) == 16,
          "packing numbers (r=0.3) are not 4 / 16");

  const auto cfg_noiseless = make_confidence_config(lip, 1, 3, 100, 2.0, 0.0);
  require(q_h(cfg_noiseless, beta, 3) == 1, "noiseless repeat budget must be 1");

  const auto cfg_small = make_confidence_config(lip, 1, 3, 50, 2.0, 0.1);
  const auto cfg_large = make_confidence_config(lip, 1, 3, 5000, 2.0, 0.1);
  for (unsigned h = 0; h <= 4; ++h)
    require(v_h(cfg_small, h) == v_h(cfg_large, h), "V_h must not depend on the budget n");
  return "series constants, beta, depths, covering/packing and V_h all match frozen values";
}

std::string check_partition_geometry() {
  const Partition p1(unit_box(1), 3);
  const double expect[3] = {1.0 / 6.0, 0.5, 5.0 / 6.0};
  for (unsigned s = 1; s <= 3; ++s) {
    const Point c = p1.center(p1.child(Partition::root(), s));
    require(std::abs(c[0] - expect[s - 1]) <= 1e-15,
            msg("depth-1 center ", s, " is ", c[0], ", expected ", expect[s - 1]));
  }

  const auto cells1 = nodes_at_depth(p1, 2);
  std::vector<Box> boxes;
  for (const auto& id : cells1) boxes.push_back(p1.cell(id));
  std::sort(boxes.begin(), boxes.end(),
            [](const Box& a, const Box& b) { return a.lower[0] < b.lower[0]; });
  require(boxes.front().lower[0] == 0.0 && boxes.back().upper[0] == 1.0,
          "depth-2 cells do not span [0,1]");
  for (std::size_t i = 0; i + 1 < boxes.size(); ++i)
    require(boxes[i].upper[0] == boxes[i + 1].lower[0],
            "adjacent depth-2 cells do not share boundaries exactly");

  const Partition p2(unit_box(2), 3);
  const auto cells2 = nodes_at_depth(p2, 2);
  require(cells2.size() == 9, "2-D ternary partition must have 9 depth-2 nodes");
  Rng rng = make_rng(101);
  std::vector<Point> probes;
  for (int i = 0; i < 200; ++i) probes.push_back(random_point(rng, 2));
  probes.push_back({1.0 / 3.0, 0.5});
  probes.push_back({0.0, 0.0});
  probes.push_back({1.0, 1.0});
  const Box outer = unit_box(2);
  for (const auto& p : probes) {
    int hits = 0;
    for (const auto& id : cells2)
      if (p2.cell(id).contains_tiling(p, outer)) ++hits;
    require(hits == 1, msg("point (", p[0], ", ", p[1], ") lies in ", hits, " depth-2 cells"));
  }

  Rng idrng = make_rng(7);
  NodeId id = Partition::root();
  for (int step = 0; step < 12; ++step) {
    const unsigned slot = 1 + unsigned(idrng() % 3);
    const NodeId ch = p2.child(id, slot);
    require(p2.parent(ch) == id, "parent(child(id)) != id");
    id = ch;
  }
  return "centers, exact tiling and parent/child addressing verified";
}

std::string check_posterior_dense_oracle() {
  Rng rng = make_rng(20250815);
  const double sigmas[3] = {0.0, 0.1, 1.0};
  double worst = 0.0;
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t dims = 1 + std::size_t(rep % 2);
    const auto zoo = kernel_zoo(dims);
    const Kernel& k = zoo[std::size_t(rep) % zoo.size()].second;
    const double sigma = sigmas[rep % 3];
    // Noiseless interpolation is only well-conditioned for few, spread-out
    // points; with noise the system has an eigenvalue floor and any t works.
    const std::size_t t =
        sigma == 0.0 ? 1 + std::size_t(rep) % 4 : 1 + std::size_t(rep) % 25;
    std::vector<Point> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < t; ++i) {
      Point x = random_point(rng, dims);
      if (sigma == 0.0)
        for (auto& c : x) c = (double(i) + 0.35 + 0.3 * draw_uniform(rng, 0.0, 1.0)) / double(t);
      xs.push_back(std::move(x));
      ys.push_back(draw_normal(rng));
    }
    if (sigma > 0.0 && t >= 3) xs.back() = xs.front();  // exact repeat
    Posterior post(k, sigma * sigma);
    for (std::size_t i = 0; i < t; ++i) post.update(xs[i], ys[i]);
    std::vector<Point> queries{xs[0]};
    for (int q = 0; q < 3; ++q) queries.push_back(random_point(rng, dims));
    for (const auto& q : queries) {
      const PosteriorStats a = post.query(q);
      const PosteriorStats b = dense_predict(k, sigma * sigma, xs, ys, q);
      worst = std::max({worst, std::abs(a.mean - b.mean), std::abs(a.sd - b.sd)});
    }
  }
  require(worst <= 1e-8, msg("incremental posterior deviates from dense solve by ", worst));
  return msg("40 random configurations, max |deviation| = ", worst);
}

std::string check_envelope_bounds() {
  Rng rng = make_rng(31337);
  double tightest = std::numeric_limits<double>::infinity();
  for (std::size_t dims : {std::size_t(1), std::size_t(2)}) {
    auto zoo = kernel_zoo(dims);
    if (dims == 2)
      zoo.emplace_back("product", Kernel::product(Kernel::squared_exp(1, 0.5, 1.0),
                                                  Kernel::matern32(1, 0.5, 1.0, 1)));
    for (const auto& [name, k] : zoo) {
      const Envelope env = k.envelope();
      for (int rep = 0; rep < 200; ++rep) {
        const Point x = random_point(rng, dims);
        const double cap = std::min(1.0, env.delta);
        const double r = draw_uniform(rng, 1e-4, cap);
        Point y = x;
        for (auto& c : y) c = std::clamp(c + draw_uniform(rng, -r, r), 0.0, 1.0);
        const double d0 = linf_dist(x, y);
        if (d0 == 0.0) continue;
        const double lhs = k.induced_dist(x, y);
        const double rhs = env.g(d0);
        require(lhs <= rhs + 1e-10,
                msg(name, ": induced distance ", lhs, " exceeds envelope ", rhs, " at r=", d0));
        tightest = std::min(tightest, rhs - lhs);
      }
    }
  }
  return msg("g(r) dominates the induced metric on all families; smallest slack ", tightest);
}

std::string check_covering_examples() {
  const auto spanning = covering_check(unit_box(1), {{{0.5}, 1.0}}, 1e-3);
  require(spanning.covered, "one radius-1 ball at 0.5 must cover [0,1]");

  const auto empty = covering_check(unit_box(1), {}, 1e-3);
  require(!empty.covered, "empty ball set must be uncovered");
  require(empty.witness == Point{0.5}, "empty-set witness must be the region center");

  const auto pair = covering_check(unit_box(1), {{{0.25}, 0.25}, {{0.75}, 0.2}}, 1e-4);
  require(!pair.covered, "B(0.25,0.25) and B(0.75,0.2) must not cover [0,1]");
  require(pair.witness[0] >= 0.95 && pair.witness[0] <= 1.0,
          msg("witness ", pair.witness[0], " outside the uncovered top segment [0.95,1]"));

  std::vector<BallSpec> quad;
  for (double cx : {0.25, 0.75})
    for (double cy : {0.25, 0.75}) quad.push_back({{cx, cy}, 0.25});
  require(covering_check(unit_box(2), quad, 1e-3).covered,
          "four radius-0.25 balls must tile the unit square");
  quad[3].radius = 0.24;
  require(!covering_check(unit_box(2), quad, 1e-3).covered,
          "shrinking one corner ball must break the square covering");

  require(point_covered({0.5}, {{{0.25}, 0.25}}), "0.5 lies on the closed ball boundary");
  require(!point_covered({0.51}, {{{0.25}, 0.25}}), "0.51 lies outside B(0.25,0.25)");
  return "spanning, empty, two-interval and square-tiling cases all behave";
}

std::string check_config_roundtrip() {
  const std::string text = R"({
    "algorithm": "contextual",
    "budget": 25,
    "seeds": [3, 1, 2],
    "u": 2.5,
    "theory_scale": 0.5,
    "environment": {
      "kind": "contextual_gp",
      "context_dims": 1,
      "grid_res": 32,
      "sigma": 0.05,
      "lower": [0.0, -1.0],
      "upper": [1.0, 2.0],
      "kernel": {
        "family": "product",
        "parts": [
          {"family": "se", "dims": 1, "lengthscale": 0.5},
          {"family": "matern32", "dims": 1, "offset": 1, "lengthscale": 0.25, "variance": 1.5}
        ]
      }
    },
    "output": "scratch"
  })";
  const ExperimentConfig c = parse_config(text);
  require(c.algorithm == "contextual" && c.budget == 25 && c.seeds.size() == 3,
          "parsed fields do not match the source text");
  const std::string d1 = dump_config(c);
  const std::string d2 = dump_config(parse_config(d1));
  require(d1 == d2, "canonical dump is not a fixed point of parse∘dump");
  const std::string h = config_hash(c);
  require(h.size() == 16 && h.find_first_not_of("0123456789abcdef") == std::string::npos,
          msg("config hash is not 16 lowercase hex digits: ", h));
  require(h == config_hash(parse_config(d1)), "hash changed across a round trip");
  require(build_kernel(c.env.kernel).input_dims() == 2,
          "product kernel must read both joint coordinates");

  bool named = false;
  try {
    parse_config(R"({"algorithm":"tree","budget":5,"bogus_knob":1,
                     "environment":{"kind":"toy1"}})");
  } catch (const std::invalid_argument& e) {
    named = std::string(e.what()).find("bogus_knob") != std::string::npos;
  }
  require(named, "unknown-key error must name the offending key");

  bool missing = false;
  try {
    parse_config(R"({"budget":5,"environment":{"kind":"toy1"}})");
  } catch (const std::invalid_argument& e) {
    missing = std::string(e.what()).find("algorithm") != std::string::npos;
  }
  require(missing, "missing-key error must name the absent key");
  return "parse/dump fixed point, stable hash, and named key errors";
}

std::string check_csv_roundtrip() {
  RunTrace tr;
  for (int i = 1; i <= 3; ++i) {
    TraceRow r;
    r.t = std::uint64_t(i) * 2;
    r.n_e = std::uint64_t(i);
    r.x = {0.1 + 0.2 * i, -1e-17 * i};
    r.y = std::nextafter(1.0 * i, 2.0 * i);
    r.delta = 1.0 / 3.0 + i;
    r.cum_regret = 4.0 / 7.0 * i;
    r.simple_regret = 1e300 / std::pow(10.0, i);
    r.support = std::uint64_t(3 * i);
    r.wall_ns = 123456789ull * std::uint64_t(i);
    tr.rows.push_back(r);
    tr.recommendations.push_back(r.x);
  }
  tr.final_recommendation = tr.recommendations.back();
  const auto dir = scratch_dir();
  const std::string path = (dir / "roundtrip.csv").string();
  write_trace_csv(path, tr, 2, {{"seed", "7"}, {"config_hash", "0123456789abcdef"}});
  const TraceFile f = read_trace_csv(path);
  std::filesystem::remove_all(dir);
  require(f.dims == 2, msg("round-tripped dims = ", f.dims));
  require(f.meta.at("seed") == "7" && f.meta.at("config_hash") == "0123456789abcdef",
          "metadata lines did not survive the round trip");
  require(f.rows.size() == 3, "row count changed");
  for (std::size_t i = 0; i < 3; ++i) {
    const TraceRow& a = tr.rows[i];
    const TraceRow& b = f.rows[i];
    require(a.t == b.t && a.n_e == b.n_e && a.x == b.x && a.y == b.y && a.delta == b.delta &&
                a.cum_regret == b.cum_regret && a.simple_regret == b.simple_regret &&
                a.support == b.support && a.wall_ns == b.wall_ns,
            msg("row ", i, " is not bit-identical after the round trip"));
  }
  return "3 rows with denormal-adjacent doubles reproduced bit-exactly";
}

std::string check_svg_output() {
  const auto dir = scratch_dir();
  const std::string path = (dir / "plot.svg").string();
  write_line_svg(path, "demo", "x", "y",
                 {{"first", {1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}},
                  {"second", {1.0, 2.0, 3.0}, {1.0, 4.0, 9.0}}});
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string body = buf.str();
  std::filesystem::remove_all(dir);
  require(body.rfind("<?xml", 0) == 0, "SVG must start with an XML declaration");
  require(body.find("<polyline") != std::string::npos, "SVG must contain polylines");
  require(body.find("</svg>") != std::string::npos, "SVG must be closed");
  return "two-series plot emitted and well formed";
}

TreeBanditResult tree_run(std::uint64_t seed, std::size_t n) {
  GridGPEnv env(Kernel::matern32(1, 0.4, 1.0), unit_box(1), 128, 0.1, seed);
  TreeBanditOptions opt;
  opt.theory_scale = 0.2;
  return run_tree_bandit(env, Kernel::matern32(1, 0.4, 1.0), n, opt);
}

std::string check_tree_structure() {
  const std::size_t n = 20;
  const TreeBanditResult a = tree_run(11, n);
  const TreeBanditResult b = tree_run(11, n);
  require(rows_equal(a.trace.rows, b.trace.rows) &&
              a.trace.recommendations == b.trace.recommendations,
          "two runs with the same seed differ");
  require(a.trace.rows.size() == n, msg("expected ", n, " rows, got ", a.trace.rows.size()));
  for (std::size_t i = 0; i < n; ++i) {
    require(a.trace.rows[i].n_e == i + 1, "evaluation counter is not dense");
    if (i > 0)
      require(a.trace.rows[i].t > a.trace.rows[i - 1].t, "step counter must increase");
    require(a.trace.rows[i].delta >= 0.0 && a.trace.rows[i].simple_regret >= 0.0,
            "regret entries must be nonnegative");
  }
  double cum = 0.0;
  for (const auto& r : a.trace.rows) {
    cum += r.delta;
    require(r.cum_regret == cum, "cumulative regret is not the exact prefix sum");
  }
  require(a.row_depths.size() == n && a.trace.recommendations.size() == n,
          "per-row side arrays have the wrong length");
  require(a.v_table.size() == a.h_max + 1, "V table must cover depths 0..h_max");
  const std::size_t leaf_cap = 2 * a.h_max * n + 1;
  require(a.leaves.size() <= leaf_cap,
          msg("leaf count ", a.leaves.size(), " exceeds (N-1)*h_max*n+1 = ", leaf_cap));
  require(a.events.eval_budget_respected, "a leaf exceeded its repeat budget q_h + 1");
  return msg(n, " evaluations, ", a.leaves.size(), " leaves (cap ", leaf_cap, "), h_max ",
             a.h_max);
}

std::string check_tree_anytime() {
  auto run = [] {
    GridGPEnv env(Kernel::matern32(1, 0.4, 1.0), unit_box(1), 128, 0.1, 13);
    TreeBanditOptions opt;
    opt.theory_scale = 0.2;
    return run_tree_bandit_anytime(env, Kernel::matern32(1, 0.4, 1.0), 12, 3, opt);
  };
  const TreeBanditResult a = run();
  const TreeBanditResult b = run();
  require(rows_equal(a.trace.rows, b.trace.rows), "doubling-trick runs are not deterministic");
  require(a.trace.rows.size() == 12, msg("expected 12 rows, got ", a.trace.rows.size()));
  for (std::size_t i = 0; i < a.trace.rows.size(); ++i)
    require(a.trace.rows[i].n_e == i + 1, "phase boundaries must not drop or repeat evaluations");
  return "phases 3+6+3 produce a dense, deterministic trace";
}

ZoomBanditResult zoom_run(std::uint64_t seed, std::size_t n, bool verify) {
  GridGPEnv env(Kernel::matern32(1, 0.4, 1.0), unit_box(1), 128, 0.1, seed);
  ZoomBanditOptions opt;
  opt.verify_cover_each_round = verify;
  return run_zoom_bandit(env, Kernel::matern32(1, 0.4, 1.0), n, opt);
}

std::string check_zoom_structure() {
  const std::size_t n = 20;
  const ZoomBanditResult a = zoom_run(17, n, true);
  const ZoomBanditResult b = zoom_run(17, n, true);
  require(rows_equal(a.trace.rows, b.trace.rows), "two runs with the same seed differ");
  require(a.trace.rows.size() == n, msg("expected ", n, " rows, got ", a.trace.rows.size()));
  require(a.events.cover_always_held, "covering check failed during a round");
  require(a.events.repeat_budget_respected, "a point exceeded its per-level repeat budget");
  require(a.row_levels.size() == n, "per-row level array has the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    require(a.trace.rows[i].n_e == i + 1, "evaluation counter is not dense");

  for (std::size_t i = 0; i < a.active.size(); ++i) {
    for (std::size_t j = i + 1; j < a.active.size(); ++j) {
      const double d = linf_dist(a.active[i].z, a.active[j].z);
      require(d > a.r_min / 2.0 * (1.0 - 1e-12),
              msg("active points ", i, " and ", j, " are ", d, " apart, below r_min/2 = ",
                  a.r_min / 2.0));
      if (a.active[i].level == a.active[j].level) {
        const double rk = std::ldexp(1.0, -int(a.active[i].level));
        require(d > rk * (1.0 - 1e-12),
                msg("same-level points ", i, " and ", j, " are ", d,
                    " apart, not separated by their radius ", rk));
      }
    }
  }
  // Separation is only guaranteed down to r_min / 2 (radii halve once after
  // the shrink gate last fires), so that is the packing radius.
  const std::uint64_t cap = packing_number_unit(a.r_min / 2.0, 1);
  require(a.active.size() <= cap,
          msg("active set size ", a.active.size(), " exceeds the packing number ", cap));
  return msg(n, " evaluations, ", a.active.size(), " active points (packing cap ", cap,
             "), r_min ", a.r_min);
}

std::string check_contextual_structure() {
  const Kernel joint = Kernel::product(Kernel::squared_exp(1, 0.5, 1.0),
                                       Kernel::matern32(1, 0.5, 1.0, 1));
  auto run = [&joint] {
    ContextualGPEnv env(joint, unit_box(1), unit_box(1), 32, 0.1, 5);
    ContextualBanditOptions opt;
    opt.check_candidates = true;
    return run_contextual_bandit(env, joint, 10, opt);
  };
  const ContextualBanditResult a = run();
  const ContextualBanditResult b = run();
  require(rows_equal(a.trace.rows, b.trace.rows), "two runs with the same seed differ");
  require(a.trace.rows.size() == 10, msg("expected 10 rows, got ", a.trace.rows.size()));
  require(a.row_contexts.size() == 10 && a.row_depths.size() == 10,
          "per-row side arrays have the wrong length");
  require(a.events.candidate_property_held,
          "a recorded parent candidate exceeded its confidence budget");
  require(a.leaf_count == a.leaves.size(), "leaf count does not match the exported cells");
  for (const auto& r : a.trace.rows)
    require(r.x.size() == 2, "evaluated points must live in the joint space");

  // For any context, the action slices of the leaves whose context slice
  // contains it must tile the action axis exactly.
  ContextualGPEnv env(joint, unit_box(1), unit_box(1), 32, 0.1, 5);
  for (std::size_t ci : {std::size_t(0), std::size_t(13), std::size_t(31)}) {
    const double zc = env.context_grid()[ci][0];
    std::vector<std::pair<double, double>> slices;
    for (const auto& leaf : a.leaves) {
      const double lo = leaf.cell.lower[0], hi = leaf.cell.upper[0];
      const bool inside = zc >= lo && zc <= hi && !(zc == hi && hi != 1.0);
      if (inside) slices.emplace_back(leaf.cell.lower[1], leaf.cell.upper[1]);
    }
    require(!slices.empty(), "no leaf is relevant for a grid context");
    std::sort(slices.begin(), slices.end());
    require(slices.front().first == 0.0 && slices.back().second == 1.0,
            "relevant action slices do not span the action axis");
    for (std::size_t i = 0; i + 1 < slices.size(); ++i)
      require(slices[i].second == slices[i + 1].first,
              msg("action slices leave a gap or overlap at ", slices[i].second));
  }
  return msg("10 contexts served, ", a.leaf_count,
             " leaves, action slices tile exactly for sampled contexts");
}

std::string check_gp_ucb_baseline() {
  const Kernel k = Kernel::matern32(1, 0.4, 1.0);
  auto run = [&k] {
    GridGPEnv env(k, unit_box(1), 128, 0.1, 3);
    return run_gp_ucb(env, k, 5, 64);
  };
  const GpUcbResult a = run();
  const GpUcbResult b = run();
  require(rows_equal(a.trace.rows, b.trace.rows), "two runs with the same seed differ");
  require(a.trace.rows.size() == 5 && a.grid_size == 64, "row count or grid size wrong");
  const Point first = make_grid(unit_box(1), 64)[0];
  require(a.trace.rows[0].x == first,
          "with a flat prior the first pick must be the first grid point");
  const double beta_expect = std::sqrt(2.0 * (2.0 + std::log(2.0 * 5.0 * 64.0)));
  require(std::abs(a.beta - beta_expect) <= 1e-12,
          msg("beta ", a.beta, " does not match the |grid| union bound ", beta_expect));

  bool rejected = false;
  try {
    GridGPEnv env(k, unit_box(1), 128, 0.1, 3);
    run_gp_ucb(env, k, 5, 5000);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  require(rejected, "a 5000-point grid exceeds the posterior budget and must be rejected");

  require(gp_ucb_theoretical_grid(100, 6) > 1e24,
          "theoretical per-round grid at t=100, D=6 must exceed 1e24");
  return "first pick, beta, oversize rejection and theoretical grid size verified";
}

std::string check_random_baseline() {
  auto run = [](double sigma) {
    GridGPEnv env(Kernel::matern32(1, 0.4, 1.0), unit_box(1), 128, sigma, 5);
    return run_random_search(env, 15, 9);
  };
  const RunTrace a = run(0.1);
  const RunTrace b = run(0.1);
  require(rows_equal(a.rows, b.rows), "two runs with the same seed differ");
  require(a.rows.size() == 15, msg("expected 15 rows, got ", a.rows.size()));

  const RunTrace c = run(0.0);
  for (std::size_t i = 1; i < c.rows.size(); ++i)
    require(c.rows[i].simple_regret <= c.rows[i - 1].simple_regret,
            "noiseless running-best recommendation must have non-increasing simple regret");
  return "deterministic, and the noiseless running best never regresses";
}

std::string check_toy_gamma_order() {
  const auto rows = toy1_gamma_report(0.05, 1.0, {10, 50});
  require(rows.size() == 2 && rows[0].n == 10 && rows[1].n == 50, "report rows mismatch");
  for (const auto& r : rows) {
    require(std::isfinite(r.closed_form) && std::isfinite(r.series) && std::isfinite(r.computed),
            "report contains non-finite entries");
    require(r.closed_form <= r.series + 1e-9,
            msg("closed form ", r.closed_form, " exceeds the series ", r.series, " at n=", r.n));
    require(r.series <= r.computed + 1e-9,
            msg("series ", r.series, " exceeds the computed gain ", r.computed, " at n=", r.n));
  }
  return "closed form <= series <= computed information gain at n=10, 50";
}

std::string check_toy2_strategy() {
  ToyEnv2 env_a(3);
  const Toy2StrategyResult a = toy2_oracle_strategy(env_a, 6);
  ToyEnv2 env_b(3);
  const Toy2StrategyResult b = toy2_oracle_strategy(env_b, 6);
  require(a.xs == b.xs && a.ys == b.ys, "two runs with the same seed differ");
  require(a.xs.size() == 6 && a.regret_curve.size() == 6, "trace arrays have the wrong length");
  for (std::size_t i = 1; i < a.regret_curve.size(); ++i)
    require(a.regret_curve[i] >= a.regret_curve[i - 1] - 1e-12,
            "regret curve must be nondecreasing");
  require(std::abs(a.cum_regret - a.regret_curve.back()) <= 1e-12,
          "total regret must equal the last curve entry");
  return msg("6-step descent deterministic, final regret ", a.cum_regret);
}

std::string check_posterior_ball_bound() {
  // Part 1: m repeats of the same point shrink sd to sigma/sqrt(m).
  for (const std::size_t dims : {std::size_t(1)}) {
    for (const auto& [name, k] : kernel_zoo(dims)) {
      for (const double sigma : {0.3, 1.0}) {
        Posterior post(k, sigma * sigma);
        Rng rng = make_rng(99);
        const Point x{0.37};
        for (int m = 1; m <= 50; ++m) {
          post.update(x, draw_normal(rng));
          const double sd = post.query(x).sd;
          const double bound = sigma / std::sqrt(double(m));
          require(sd <= bound + 1e-10,
                  msg(name, " sigma=", sigma, ": sd after ", m, " repeats is ", sd,
                      " > sigma/sqrt(m) = ", bound));
        }
      }
    }
  }

  // Part 2: n observations within sup distance r of x give
  // sd(x) <= sigma/sqrt(n) + g(r).
  Rng rng = make_rng(424242);
  const double sigmas[3] = {0.1, 0.5, 1.0};
  int checked = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t dims = 1 + std::size_t(rep % 2);
    const auto zoo = kernel_zoo(dims);
    const Kernel& k = zoo[std::size_t(rep) % zoo.size()].second;
    const Envelope env = k.envelope();
    const double sigma = sigmas[rep % 3];
    const Point x = random_point(rng, dims);
    const double r = draw_uniform(rng, 0.03, std::min(0.4, env.delta));
    Posterior post(k, sigma * sigma);
    std::size_t inside = 0;
    const std::size_t t = 5 + std::size_t(rep % 20);
    for (std::size_t i = 0; i < t; ++i) {
      Point p;
      if (i == 0 || rng() % 5 < 3) {
        p = x;
        for (auto& c : p) c = std::clamp(c + draw_uniform(rng, -r, r), 0.0, 1.0);
      } else {
        p = random_point(rng, dims);
      }
      if (linf_dist(p, x) <= r) ++inside;
      post.update(p, draw_normal(rng));
    }
    require(inside >= 1, "construction must place at least one observation in the ball");
    const double sd = post.query(x).sd;
    const double bound = sigma / std::sqrt(double(inside)) + env.g(r);
    require(sd <= bound + 1e-10,
            msg("ball bound violated: sd ", sd, " > ", bound, " with ", inside,
                " in-ball points, r=", r));
    ++checked;
  }
  return msg("repeat bound exact for m<=50 on all families; ball bound held on ", checked,
             " random configurations");
}

std::string check_width_coverage() {
  const Kernel k = Kernel::matern32(1, 0.4, 1.0);
  const std::size_t res = 512;
  const auto grid = make_grid(unit_box(1), res);
  const GridSampler sampler(k, grid);
  const auto cfg_v = make_confidence_config(k.envelope(), 1, 3, res, 2.0, 0.1);
  const auto cfg_w = make_confidence_config(k.envelope(), 1, 2, res, 2.0, 0.1);
  const Partition part(unit_box(1), 3);
  const double step = double(res - 1);

  Rng rng = make_rng(555);
  int bad = 0;
  for (int fn = 0; fn < 100; ++fn) {
    const std::vector<double> f = sampler.draw(rng);
    bool viol = false;
    for (unsigned h = 0; h <= 5 && !viol; ++h) {
      const double cap = v_h(cfg_v, h);
      for (const auto& id : nodes_at_depth(part, h)) {
        const Box c = part.cell(id);
        const auto ci = std::size_t(std::lround(part.center(id)[0] * step));
        const auto lo = std::size_t(std::ceil(c.lower[0] * step - 1e-9));
        const auto hi = std::min(res - 1, std::size_t(std::floor(c.upper[0] * step + 1e-9)));
        for (std::size_t i = lo; i <= hi; ++i)
          if (f[i] - f[ci] > cap + 1e-12) {
            viol = true;
            break;
          }
        if (viol) break;
      }
    }
    for (unsigned lvl = 1; lvl <= 6 && !viol; ++lvl) {
      const double cap = w_cap(cfg_w, lvl);
      const double radius = std::ldexp(1.0, -int(lvl));
      const auto m = std::size_t(1) << (lvl - 1);
      for (std::size_t j = 0; j < m; ++j) {
        const double cz = (double(j) + 0.5) / double(m);
        const auto ci = std::size_t(std::lround(cz * step));
        const auto lo = std::size_t(std::ceil(std::max(0.0, cz - radius) * step - 1e-9));
        const auto hi =
            std::min(res - 1, std::size_t(std::floor(std::min(1.0, cz + radius) * step + 1e-9)));
        for (std::size_t i = lo; i <= hi; ++i)
          if (f[i] - f[ci] > cap + 1e-12) {
            viol = true;
            break;
          }
        if (viol) break;
      }
    }
    bad += viol ? 1 : 0;
  }
  const int cap = int(std::floor((std::exp(-2.0) + 0.06) * 100.0));
  require(bad <= cap, msg(bad, " of 100 sampled functions broke a width bound; cap ", cap));
  return msg(bad, " of 100 sampled functions exceeded V_h or W(r_k) (allowed ", cap,
             "); cell centres snapped to the sample grid");
}

std::string check_toy1_ensemble() {
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    ToyEnv1 env(seed);
    const Toy1OneShot r = toy1_one_shot(env);
    if (r.events_held && !r.success)
      fail(msg("seed ", seed, ": the good events held but identification failed"));
    successes += r.success ? 1 : 0;
  }
  require(successes >= 231,
          msg("one-shot success on ", successes, "/300 seeds, below 1 - 3*delta - 0.08"));

  for (const double sigma : {ToyEnv1::default_sigma(0.05), 1.0}) {
    const auto rows = toy1_gamma_report(0.05, sigma, {200});
    const auto& r = rows[0];
    require(r.closed_form <= r.series + 1e-9 && r.series <= r.computed + 1e-9,
            msg("gamma ordering broken at n=200, sigma=", sigma));
    const double rate = std::min(
        0.5, 1.0 / (16.0 * sigma * sigma *
                    std::log(M_PI * M_PI * 200.0 * 200.0 / (3.0 * 0.05))));
    require(r.computed / 200.0 >= 0.4 * rate,
            msg("computed gain per step ", r.computed / 200.0, " below 0.4*rate = ", 0.4 * rate,
                " at sigma=", sigma));
  }
  return msg("one-shot success on ", successes, "/300 seeds; gamma rate bound holds at n=200");
}

std::string check_toy2_ensemble() {
  const std::size_t n = 8;
  const double bound = 2.0 * std::log(double(n)) + 0.1;
  int held = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    ToyEnv2 env(seed);
    const Toy2StrategyResult r = toy2_oracle_strategy(env, n);
    if (r.e4_held && r.e5_held) {
      ++held;
      require(r.cum_regret <= bound,
              msg("seed ", seed, ": regret ", r.cum_regret, " exceeds 2 log n + 0.1 = ", bound,
                  " despite the events holding"));
    }
  }
  require(held >= 246,
          msg("events held on ", held, "/300 seeds, below 1 - 2*delta - 0.08"));
  return msg("events held on ", held, "/300 seeds; regret <= ", bound, " on every one of them");
}

std::string check_zoom_covering_deep() {
  {
    GridGPEnv env(Kernel::matern32(1, 0.4, 1.0), unit_box(1), 256, 0.1, 21);
    ZoomBanditOptions opt;
    opt.verify_cover_each_round = true;
    const ZoomBanditResult r = run_zoom_bandit(env, Kernel::matern32(1, 0.4, 1.0), 60, opt);
    require(r.events.cover_always_held, "D=1 covering failed during a round");
    require(r.trace.rows.size() == 60, "D=1 run did not spend its budget");
  }
  {
    GridGPEnv env(Kernel::matern32(2, 0.5, 1.0), unit_box(2), 48, 0.1, 22);
    ZoomBanditOptions opt;
    opt.verify_cover_each_round = true;
    const ZoomBanditResult r = run_zoom_bandit(env, Kernel::matern32(2, 0.5, 1.0), 60, opt);
    require(r.events.cover_always_held, "D=2 covering failed during a round");
    require(r.trace.rows.size() == 60, "D=2 run did not spend its budget");
  }
  return "exhaustive covering held after every round at D=1 and D=2, n=60";
}

std::string check_tree_beta_events() {
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GridGPEnv env(Kernel::matern32(1, 0.4, 1.0), unit_box(1), 256, 0.1, seed);
    TreeBanditOptions opt;
    opt.check_events = true;
    const TreeBanditResult r = run_tree_bandit(env, Kernel::matern32(1, 0.4, 1.0), 40, opt);
    failures += r.events.beta_event_held ? 0 : 1;
  }
  require(failures <= 8,
          msg("beta confidence event failed on ", failures, "/30 runs, above e^-2 + 0.15"));
  return msg("beta confidence event failed on ", failures, "/30 runs (allowed 8)");
}

}  // namespace

std::vector<CheckResult> run_validation(bool fast) {
  std::vector<CheckResult> out;
  const auto add = [&out](const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();
      r.pass = true;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };

  add("confidence_constants", check_confidence_constants);
  add("partition_geometry", check_partition_geometry);
  add("posterior_dense_oracle", check_posterior_dense_oracle);
  add("envelope_bounds", check_envelope_bounds);
  add("covering_examples", check_covering_examples);
  add("config_roundtrip", check_config_roundtrip);
  add("csv_roundtrip", check_csv_roundtrip);
  add("svg_output", check_svg_output);
  add("tree_structure", check_tree_structure);
  add("tree_anytime", check_tree_anytime);
  add("zoom_structure", check_zoom_structure);
  add("contextual_structure", check_contextual_structure);
  add("gp_ucb_baseline", check_gp_ucb_baseline);
  add("random_baseline", check_random_baseline);
  add("toy_gamma_order", check_toy_gamma_order);
  add("toy2_strategy", check_toy2_strategy);
  if (!fast) {
    add("posterior_ball_bound", check_posterior_ball_bound);
    add("width_coverage", check_width_coverage);
    add("toy1_ensemble", check_toy1_ensemble);
    add("toy2_ensemble", check_toy2_ensemble);
    add("zoom_covering_deep", check_zoom_covering_deep);
    add("tree_beta_events", check_tree_beta_events);
  }
  return out;
}

}  // namespace gpband::bench
