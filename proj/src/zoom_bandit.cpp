// SPDX-License-Identifier: MIT
#include "gpband/zoom_bandit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpband {
namespace {

class ZoomEngine {
 public:
  ZoomEngine(Environment& env, const Kernel& kernel, const ZoomBanditOptions& opt)
      : env_(env),
        opt_(opt),
        domain_(env.domain()),
        unit_(unit_box(env.domain().dims())),
        post_(kernel, env.noise_sigma() * env.noise_sigma()) {
    double scale = 0.0;
    for (std::size_t a = 0; a < domain_.dims(); ++a) scale = std::max(scale, domain_.side(a));
    scale_ = scale;
    pending_witness_ = unit_.center();  // covering check of an empty active set
  }

  void set_phase(std::size_t phase_n) {
    const Envelope genv = post_.kernel().envelope().rescaled(scale_);
    cfg_ = make_confidence_config(genv, domain_.dims(), 2, phase_n, opt_.u, env_.noise_sigma(),
                                  opt_.theory_scale);
    beta_ = beta_zoom(cfg_);
    rmin_ = r_min(cfg_);
    unsigned k_cap = 0;
    while (std::ldexp(1.0, -int(k_cap)) >= rmin_ / 2.0 && k_cap < 64) ++k_cap;
    w_.assign(k_cap + 1, 0.0);
    for (unsigned k = 0; k <= k_cap; ++k) w_[k] = w_cap(cfg_, k);
    cover_eps_ = std::max(rmin_ / 4.0, 1e-9);
  }

  void run_until(std::size_t eval_target, ZoomBanditResult& out,
                 std::chrono::steady_clock::time_point start) {
    while (n_e_ < eval_target) {
      if (++out.steps > opt_.step_guard)
        throw std::runtime_error("zoom bandit exceeded its step guard; selection loop is stuck");
      if (!covered_) {
        add_point(pending_witness_);
        covered_ = true;  // a fresh ball has normalized radius 1 and spans the box
        ++out.adds;
        continue;
      }
      const std::size_t sel = select();
      ZoomPointInfo& p = active_[sel];
      if (opt_.check_events) {
        const double f = env_.true_value(p.x);
        if (std::abs(f - p.mu) > beta_ * p.sd) out.events.beta_event_held = false;
      }
      if (beta_ * p.sd <= w_[p.level] && p.radius >= rmin_) {
        const double old_radius = p.radius;
        p.level += 1;
        p.radius /= 2.0;
        p.evals_at_level = 0;
        ++out.shrinks;
        recheck_cover(p.z, old_radius);
        continue;
      }
      if (opt_.verify_cover_each_round && !exhaustive_cover_holds())
        out.events.cover_always_held = false;
      const double y = env_.query(p.x);
      post_.update(p.x, y);
      p.evals += 1;
      p.evals_at_level += 1;
      n_e_ += 1;
      out.events.max_evals_per_level =
          std::max(out.events.max_evals_per_level, p.evals_at_level);
      // The repeat budget bounds evaluations before a shrink, so it does not
      // constrain points already at a terminal radius.
      if (p.radius >= rmin_ && p.evals_at_level > repeat_budget(p.level))
        out.events.repeat_budget_respected = false;
      refresh_all();
      TraceRow row;
      row.t = out.steps;
      row.n_e = n_e_;
      row.x = p.x;
      row.y = y;
      row.support = active_.size();
      row.wall_ns =
          std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count());
      out.trace.rows.push_back(std::move(row));
      out.trace.recommendations.push_back(recommend());
      out.row_levels.push_back(p.level);
    }
  }

  Point recommend() const {
    if (active_.empty()) return domain_.center();
    std::size_t best = 0;
    for (std::size_t i = 1; i < active_.size(); ++i) {
      const auto& a = active_[i];
      const auto& b = active_[best];
      if (a.radius < b.radius || (a.radius == b.radius && a.mu > b.mu)) best = i;
    }
    return active_[best].x;
  }

  double beta() const { return beta_; }
  double r_min_norm() const { return rmin_; }
  const std::vector<double>& w_table() const { return w_; }
  const std::vector<ZoomPointInfo>& active() const { return active_; }

 private:
  std::size_t select() const {
    std::size_t best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < active_.size(); ++i) {
      const auto& p = active_[i];
      const double idx = p.mu + beta_ * p.sd + w_[p.level];
      if (idx > best_index) {
        best = i;
        best_index = idx;
        continue;
      }
      if (idx == best_index) {
        const auto& b = active_[best];
        if (p.radius < b.radius || (p.radius == b.radius && p.inserted < b.inserted)) best = i;
      }
    }
    return best;
  }

  std::uint64_t repeat_budget(unsigned level) const {
    const double s = cfg_.sigma;
    if (s <= 0.0) return 1;
    const double w = w_[level];
    return std::uint64_t(std::ceil(s * s * beta_ * beta_ / (2.0 * w * w))) + 1;
  }

  void add_point(const Point& z) {
    ZoomPointInfo p;
    p.z = z;
    p.x.resize(domain_.dims());
    for (std::size_t a = 0; a < domain_.dims(); ++a)
      p.x[a] = domain_.lower[a] + z[a] * domain_.side(a);
    p.level = 0;
    p.radius = 1.0;
    p.inserted = active_.size();
    const auto s = post_.query(p.x);
    p.mu = s.mean;
    p.sd = s.sd;
    active_.push_back(std::move(p));
  }

  // Before a shrink at z the covering held, so any hole it opens lies inside
  // the old ball; rechecking that box alone is exact and much cheaper.
  void recheck_cover(const Point& z, double old_radius) {
    Box region = unit_;
    for (std::size_t a = 0; a < region.dims(); ++a) {
      region.lower[a] = std::max(region.lower[a], z[a] - old_radius);
      region.upper[a] = std::min(region.upper[a], z[a] + old_radius);
    }
    std::vector<BallSpec> balls;
    balls.reserve(active_.size());
    for (const auto& p : active_) balls.push_back({p.z, p.radius});
    const CoveringResult cr = covering_check(region, balls, cover_eps_);
    if (!cr.covered) {
      covered_ = false;
      pending_witness_ = cr.witness;
    }
  }

  bool exhaustive_cover_holds() const {
    std::vector<BallSpec> balls;
    balls.reserve(active_.size());
    for (const auto& p : active_) balls.push_back({p.z, p.radius});
    return covering_check(unit_, balls, std::max(rmin_ / 4.0, 1e-9)).covered;
  }

  void refresh_all() {
    std::vector<Point> xs;
    xs.reserve(active_.size());
    for (const auto& p : active_) xs.push_back(p.x);
    const auto stats = post_.query_many(xs);
    for (std::size_t i = 0; i < active_.size(); ++i) {
      active_[i].mu = stats[i].mean;
      active_[i].sd = stats[i].sd;
    }
  }

  Environment& env_;
  ZoomBanditOptions opt_;
  Box domain_;
  Box unit_;
  Posterior post_;
  double scale_ = 1.0;
  ConfidenceConfig cfg_{};
  double beta_ = 0.0;
  double rmin_ = 0.0;
  double cover_eps_ = 1e-3;
  std::vector<double> w_;
  std::vector<ZoomPointInfo> active_;
  bool covered_ = false;
  Point pending_witness_;
  std::size_t n_e_ = 0;
};

void finish(ZoomEngine& engine, ZoomBanditResult& out, Environment& env,
            std::chrono::steady_clock::time_point start) {
  out.trace.total_wall_ns =
      std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count());
  out.beta = engine.beta();
  out.r_min = engine.r_min_norm();
  out.w_table = engine.w_table();
  out.active = engine.active();
  finalize_trace(out.trace, env);
  if (out.trace.rows.empty()) out.trace.final_recommendation = engine.recommend();
}

}  // namespace

ZoomBanditResult run_zoom_bandit(Environment& env, const Kernel& kernel, std::size_t n,
                                 const ZoomBanditOptions& opt) {
  ZoomBanditResult out;
  ZoomEngine engine(env, kernel, opt);
  engine.set_phase(std::max<std::size_t>(n, 2));
  const auto start = std::chrono::steady_clock::now();
  engine.run_until(n, out, start);
  finish(engine, out, env, start);
  return out;
}

ZoomBanditResult run_zoom_bandit_anytime(Environment& env, const Kernel& kernel, std::size_t n,
                                         std::size_t n0, const ZoomBanditOptions& opt) {
  if (n0 < 1) throw std::invalid_argument("anytime runs need a positive initial budget");
  ZoomBanditResult out;
  ZoomEngine engine(env, kernel, opt);
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
