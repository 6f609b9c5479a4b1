// SPDX-License-Identifier: MIT
#include "gpband/tree_bandit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace gpband {
namespace {

struct Leaf {
  NodeId id;
  Point center;         // user coordinates
  Point parent_center;  // empty for the root
  double mu = 0.0, sd = 0.0;
  double parent_mu = 0.0, parent_sd = 0.0;
  std::uint64_t evals = 0;
};

class TreeEngine {
 public:
  TreeEngine(Environment& env, const Kernel& kernel, const TreeBanditOptions& opt)
      : env_(env),
        opt_(opt),
        part_(env.domain(), opt.n_split),
        post_(kernel, env.noise_sigma() * env.noise_sigma()) {
    if (opt.n_split < 3 || opt.n_split % 2 == 0)
      throw std::invalid_argument("tree bandit needs an odd split factor >= 3");
    Leaf root;
    root.id = Partition::root();
    root.center = part_.center_user(root.id);
    auto s = post_.query(root.center);
    root.mu = s.mean;
    root.sd = s.sd;
    leaves_.push_back(std::move(root));
    rec_point_ = leaves_[0].center;
  }

  void set_phase(std::size_t phase_n) {
    const Envelope genv = post_.kernel().envelope().rescaled(part_.scale());
    cfg_ = make_confidence_config(genv, part_.dims(), part_.n_split(), phase_n, opt_.u,
                                  env_.noise_sigma(), opt_.theory_scale);
    h_max_ = max_depth(cfg_);
    beta_ = beta_n(cfg_, opt_.beta_mode, h_max_);
    v_.assign(h_max_ + 1, 0.0);
    for (unsigned h = 0; h <= h_max_; ++h) v_[h] = v_h(cfg_, h);
  }

  // Runs until `eval_target` total evaluations have been made.
  void run_until(std::size_t eval_target, TreeBanditResult& out,
                 std::chrono::steady_clock::time_point start) {
    while (n_e_ < eval_target) {
      if (++out.steps > opt_.step_guard)
        throw std::runtime_error("tree bandit exceeded its step guard; selection loop is stuck");
      const std::size_t sel = select();
      Leaf& leaf = leaves_[sel];
      const unsigned h = leaf.id.depth;
      if (opt_.check_events) {
        const double f = env_.true_value(leaf.center);
        if (std::abs(f - leaf.mu) > beta_ * leaf.sd) out.events.beta_event_held = false;
      }
      if (beta_ * leaf.sd <= v_[h] && h < h_max_) {
        refine(sel);
        ++out.refinements;
        continue;
      }
      const double y = env_.query(leaf.center);
      post_.update(leaf.center, y);
      leaf.evals += 1;
      n_e_ += 1;
      if (h < h_max_) {
        out.events.max_evals_below_cap = std::max(out.events.max_evals_below_cap, leaf.evals);
        if (leaf.evals > q_h(cfg_, beta_, h) + 1) out.events.eval_budget_respected = false;
      }
      refresh_all();
      TraceRow row;
      row.t = out.steps;
      row.n_e = n_e_;
      row.x = leaf.center;
      row.y = y;
      row.support = leaves_.size();
      row.wall_ns =
          std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count());
      out.trace.rows.push_back(std::move(row));
      out.trace.recommendations.push_back(rec_point_);
      out.row_depths.push_back(h);
    }
  }

  void export_leaves(TreeBanditResult& out) const {
    out.leaves.clear();
    for (const auto& l : leaves_) out.leaves.push_back({l.id, l.center, l.evals});
  }

  unsigned h_max() const { return h_max_; }
  double beta() const { return beta_; }
  const std::vector<double>& v_table() const { return v_; }
  const Point& rec_point() const { return rec_point_; }

 private:
  std::size_t select() const {
    std::size_t best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      const double idx = index_of(leaves_[i]);
      if (idx > best_index) {
        best = i;
        best_index = idx;
        continue;
      }
      if (idx == best_index) {
        const NodeId a = leaves_[i].id, b = leaves_[best].id;
        if (a.depth > b.depth || (a.depth == b.depth && a.index < b.index)) best = i;
      }
    }
    return best;
  }

  double index_of(const Leaf& l) const {
    const unsigned h = l.id.depth;
    double ucb = l.mu + beta_ * l.sd;
    if (!l.parent_center.empty())
      ucb = std::min(ucb, l.parent_mu + beta_ * l.parent_sd + v_[h - 1]);
    return ucb + v_[h];
  }

  void refine(std::size_t sel) {
    const Leaf parent = leaves_[sel];
    leaves_.erase(leaves_.begin() + std::ptrdiff_t(sel));
    std::vector<Point> centers;
    centers.reserve(part_.n_split());
    std::vector<Leaf> kids(part_.n_split());
    for (unsigned j = 1; j <= part_.n_split(); ++j) {
      Leaf& kid = kids[j - 1];
      kid.id = part_.child(parent.id, j);
      kid.center = part_.center_user(kid.id);
      kid.parent_center = parent.center;
      kid.parent_mu = parent.mu;
      kid.parent_sd = parent.sd;
      centers.push_back(kid.center);
    }
    const auto stats = post_.query_many(centers);
    for (unsigned j = 0; j < part_.n_split(); ++j) {
      kids[j].mu = stats[j].mean;
      kids[j].sd = stats[j].sd;
      leaves_.push_back(std::move(kids[j]));
    }
    if (parent.id.depth >= rec_depth_ || rec_depth_ == 0) {
      rec_depth_ = parent.id.depth + 1;  // children now tile the expanded cell
      rec_point_ = parent.center;
    }
  }

  void refresh_all() {
    std::vector<Point> pts;
    std::map<Point, std::size_t> seen;
    auto intern = [&](const Point& p) {
      auto it = seen.find(p);
      if (it != seen.end()) return it->second;
      const std::size_t i = pts.size();
      pts.push_back(p);
      seen.emplace(p, i);
      return i;
    };
    struct Slots {
      std::size_t own, parent;
    };
    std::vector<Slots> slots(leaves_.size());
    constexpr std::size_t kNone = std::size_t(-1);
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      slots[i].own = intern(leaves_[i].center);
      slots[i].parent = leaves_[i].parent_center.empty() ? kNone : intern(leaves_[i].parent_center);
    }
    const auto stats = post_.query_many(pts);
    for (std::size_t i = 0; i < leaves_.size(); ++i) {
      leaves_[i].mu = stats[slots[i].own].mean;
      leaves_[i].sd = stats[slots[i].own].sd;
      if (slots[i].parent != kNone) {
        leaves_[i].parent_mu = stats[slots[i].parent].mean;
        leaves_[i].parent_sd = stats[slots[i].parent].sd;
      }
    }
  }

  Environment& env_;
  TreeBanditOptions opt_;
  Partition part_;
  Posterior post_;
  std::vector<Leaf> leaves_;
  ConfidenceConfig cfg_{};
  unsigned h_max_ = 0;
  double beta_ = 0.0;
  std::vector<double> v_;
  std::size_t n_e_ = 0;
  Point rec_point_;
  unsigned rec_depth_ = 0;  // depth of the cell the recommendation tiles
};

void finish(TreeEngine& engine, TreeBanditResult& out, Environment& env,
            std::chrono::steady_clock::time_point start) {
  out.trace.total_wall_ns =
      std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count());
  engine.export_leaves(out);
  out.h_max = engine.h_max();
  out.beta = engine.beta();
  out.v_table = engine.v_table();
  finalize_trace(out.trace, env);
  if (out.trace.rows.empty()) out.trace.final_recommendation = engine.rec_point();
  for (std::size_t i = 0; i < out.trace.rows.size(); ++i) {
    const double width = out.v_table[out.row_depths[i]];
    if (width > 0.0)
      out.events.max_delta_over_width =
          std::max(out.events.max_delta_over_width, out.trace.rows[i].delta / width);
  }
}

}  // namespace

TreeBanditResult run_tree_bandit(Environment& env, const Kernel& kernel, std::size_t n,
                                 const TreeBanditOptions& opt) {
  TreeBanditResult out;
  TreeEngine engine(env, kernel, opt);
  engine.set_phase(std::max<std::size_t>(n, 2));
  const auto start = std::chrono::steady_clock::now();
  engine.run_until(n, out, start);
  finish(engine, out, env, start);
  return out;
}

TreeBanditResult run_tree_bandit_anytime(Environment& env, const Kernel& kernel, std::size_t n,
                                         std::size_t n0, const TreeBanditOptions& opt) {
  if (n0 < 1) throw std::invalid_argument("anytime runs need a positive initial budget");
  TreeBanditResult out;
  TreeEngine engine(env, kernel, opt);
  const auto start = std::chrono::steady_clock::now();
  std::size_t done = 0;
  std::size_t phase = n0;
  while (done < n) {
    engine.set_phase(std::max<std::size_t>(phase, 2));
    const std::size_t target = std::min(n, done + phase);
    engine.run_until(target, out, start);
    done = target;
    phase *= 2;
  }
  if (done == 0) engine.set_phase(std::max<std::size_t>(n0, 2));
  finish(engine, out, env, start);
  return out;
}

}  // namespace gpband
