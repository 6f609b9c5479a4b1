// SPDX-License-Identifier: MIT
#include "gpband/contextual_bandit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace gpband {
namespace {

struct CLeaf {
  NodeId id;
  Box cell;  // normalized coordinates over the joint box
};

using NodeKey = std::pair<unsigned, std::uint64_t>;
NodeKey key_of(NodeId id) { return {id.depth, id.index}; }

class ContextualEngine {
 public:
  ContextualEngine(ContextualGPEnv& env, const Kernel& joint_kernel,
                   const ContextualBanditOptions& opt, std::size_t n_contexts)
      : env_(env),
        opt_(opt),
        part_(env.joint_box(), 2),
        post_(joint_kernel, env.noise_sigma() * env.noise_sigma()) {
    const Envelope genv = joint_kernel.envelope().rescaled(part_.scale());
    cfg_ = make_confidence_config(genv, part_.dims(), 2, std::max<std::size_t>(n_contexts, 2),
                                  opt.u, env.noise_sigma(), opt.theory_scale);
    h_max_ = max_depth(cfg_);
    beta_ = beta_n(cfg_, opt.beta_mode, h_max_);
    v_.assign(h_max_ + 1, 0.0);
    g_.assign(h_max_ + 1, 0.0);
    for (unsigned h = 0; h <= h_max_; ++h) {
      v_[h] = v_h(cfg_, h);
      g_[h] = cfg_.env.g(cfg_.v1 * std::pow(cfg_.rho, double(h)));
    }
    leaves_.push_back({Partition::root(), part_.cell(Partition::root())});
  }

  void serve(const Point& context, ContextualBanditResult& out,
             std::chrono::steady_clock::time_point start) {
    const Point zc = normalized_context(context);
    std::uint64_t inner = 0;
    for (;;) {
      if (++out.steps > opt_.step_guard)
        throw std::runtime_error("contextual bandit exceeded its step guard");
      if (++inner > std::uint64_t(h_max_ + 1) * (leaves_.size() + 1))
        throw std::runtime_error(
            "contextual bandit inner loop exceeded its refinement bound; selection is stuck");
      const auto relevant = relevant_leaves(zc);
      if (relevant.empty())
        throw std::runtime_error("contextual bandit found no leaf for a context; tiling broken");
      const std::size_t sel = select(relevant, context);
      const CLeaf leaf = leaves_[sel];
      const unsigned h = leaf.id.depth;
      const Point rep = representative(leaf, context);
      const auto own = stats_at(rep);
      if (beta_ * own.sd <= v_[h] + beta_ * g_[h] && h < h_max_) {
        candidates_.emplace(key_of(leaf.id), rep);
        leaves_.erase(leaves_.begin() + std::ptrdiff_t(sel));
        for (unsigned j = 1; j <= 2; ++j) {
          const NodeId kid = part_.child(leaf.id, j);
          leaves_.push_back({kid, part_.cell(kid)});
        }
        ++out.refinements;
        continue;
      }
      const std::size_t dc = env_.context_box().dims();
      const Point action(rep.begin() + std::ptrdiff_t(dc), rep.end());
      const double y = env_.query(context, action);
      post_.update(rep, y);
      round_cache_.clear();
      n_rounds_ += 1;
      TraceRow row;
      row.t = out.steps;
      row.n_e = n_rounds_;
      row.x = rep;
      row.y = y;
      row.support = leaves_.size();
      row.wall_ns =
          std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count());
      out.trace.rows.push_back(std::move(row));
      out.trace.recommendations.push_back(rep);
      out.row_depths.push_back(h);
      out.row_contexts.push_back(context);
      if (opt_.check_candidates && !verify_candidates()) out.events.candidate_property_held = false;
      return;
    }
  }

  std::size_t leaf_count() const { return leaves_.size(); }
  std::vector<ContextualLeafInfo> export_leaves() const {
    std::vector<ContextualLeafInfo> out;
    out.reserve(leaves_.size());
    for (const auto& l : leaves_) out.push_back({l.id, l.cell});
    return out;
  }
  unsigned h_max() const { return h_max_; }
  double beta() const { return beta_; }
  const std::vector<double>& v_table() const { return v_; }
  const std::vector<double>& g_table() const { return g_; }

 private:
  Point normalized_context(const Point& context) const {
    const Box& cb = env_.context_box();
    Point z(cb.dims());
    for (std::size_t a = 0; a < cb.dims(); ++a)
      z[a] = std::clamp((context[a] - cb.lower[a]) / cb.side(a), 0.0, 1.0);
    return z;
  }

  bool slice_contains(const Box& cell, const Point& zc) const {
    for (std::size_t a = 0; a < zc.size(); ++a) {
      const double lo = cell.lower[a], hi = cell.upper[a];
      if (zc[a] < lo) return false;
      if (zc[a] > hi) return false;
      if (zc[a] == hi && hi != 1.0) return false;  // half-open except the top face
    }
    return true;
  }

  std::vector<std::size_t> relevant_leaves(const Point& zc) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < leaves_.size(); ++i)
      if (slice_contains(leaves_[i].cell, zc)) out.push_back(i);
    return out;
  }

  Point representative(const CLeaf& leaf, const Point& context) const {
    const Point center = part_.center_user(leaf.id);
    Point rep = context;
    rep.insert(rep.end(), center.begin() + std::ptrdiff_t(context.size()), center.end());
    return rep;
  }

  PosteriorStats stats_at(const Point& x) {
    auto it = round_cache_.find(x);
    if (it != round_cache_.end()) return it->second;
    const auto s = post_.query(x);
    round_cache_.emplace(x, s);
    return s;
  }

  std::size_t select(const std::vector<std::size_t>& relevant, const Point& context) {
    std::size_t best = relevant.front();
    double best_index = -std::numeric_limits<double>::infinity();
    for (const std::size_t i : relevant) {
      const CLeaf& leaf = leaves_[i];
      const unsigned h = leaf.id.depth;
      const auto own = stats_at(representative(leaf, context));
      double ucb = own.mean + beta_ * own.sd;
      if (h > 0) {
        const auto pit = candidates_.find(key_of(part_.parent(leaf.id)));
        if (pit == candidates_.end())
          throw std::runtime_error("contextual bandit is missing a recorded candidate point");
        const auto ps = stats_at(pit->second);
        ucb = std::min(ucb, ps.mean + beta_ * ps.sd + v_[h - 1]);
      }
      const double idx = ucb + v_[h];
      if (idx > best_index) {
        best = i;
        best_index = idx;
        continue;
      }
      if (idx == best_index) {
        const NodeId a = leaf.id, b = leaves_[best].id;
        if (a.depth > b.depth || (a.depth == b.depth && a.index < b.index)) best = i;
      }
    }
    return best;
  }

  bool verify_candidates() {
    if (candidates_.empty()) return true;
    std::vector<Point> xs;
    std::vector<unsigned> depths;
    for (const auto& [key, x] : candidates_) {
      xs.push_back(x);
      depths.push_back(key.first);
    }
    const auto stats = post_.query_many(xs);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (beta_ * stats[i].sd > v_[depths[i]] + beta_ * g_[depths[i]] + 1e-12) return false;
    return true;
  }

  ContextualGPEnv& env_;
  ContextualBanditOptions opt_;
  Partition part_;
  Posterior post_;
  ConfidenceConfig cfg_{};
  unsigned h_max_ = 0;
  double beta_ = 0.0;
  std::vector<double> v_, g_;
  std::vector<CLeaf> leaves_;
  std::map<NodeKey, Point> candidates_;
  std::map<Point, PosteriorStats> round_cache_;
  std::size_t n_rounds_ = 0;
};

}  // namespace

ContextualBanditResult run_contextual_bandit(ContextualGPEnv& env, const Kernel& joint_kernel,
                                             std::size_t n_contexts,
                                             const ContextualBanditOptions& opt) {
  ContextualBanditResult out;
  ContextualEngine engine(env, joint_kernel, opt, n_contexts);
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t r = 0; r < n_contexts; ++r) {
    const Point context = env.next_context();
    engine.serve(context, out, start);
  }
  out.trace.total_wall_ns =
      std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count());
  out.h_max = engine.h_max();
  out.beta = engine.beta();
  out.v_table = engine.v_table();
  out.g_table = engine.g_table();
  out.leaf_count = engine.leaf_count();
  out.leaves = engine.export_leaves();

  const std::size_t dc = env.context_box().dims();
  for (std::size_t i = 0; i < out.trace.rows.size(); ++i) {
    const Point action(out.trace.rows[i].x.begin() + std::ptrdiff_t(dc), out.trace.rows[i].x.end());
    env.true_value(out.row_contexts[i], action);
  }
  double cum = 0.0;
  double best_seen = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.trace.rows.size(); ++i) {
    auto& row = out.trace.rows[i];
    const Point action(row.x.begin() + std::ptrdiff_t(dc), row.x.end());
    const double column_best = env.best_value_for(out.row_contexts[i]);
    row.delta = column_best - env.true_value(out.row_contexts[i], action);
    cum += row.delta;
    row.cum_regret = cum;
    row.simple_regret = row.delta;
    best_seen = std::max(best_seen, column_best);
  }
  out.trace.best_value = out.trace.rows.empty() ? 0.0 : best_seen;
  out.trace.best_exact = false;
  if (!out.trace.rows.empty()) out.trace.final_recommendation = out.trace.rows.back().x;
  return out;
}

}  // namespace gpband
