# SPDX-License-Identifier: MIT
"""Smoke tests for the gpband_py module: construct the core objects, run each
algorithm briefly, and spot-check a few invariants against known values."""

import math

import gpband_py as gp


def test_kernel_and_envelope():
    k = gp.Kernel.matern32(1, 0.4, 1.0)
    assert k.input_dims() == 1
    assert k([0.3], [0.3]) == 1.0
    assert k([0.0], [1.0]) < 1.0
    env = k.envelope()
    assert env.alpha > 0.0
    assert env.g(0.0) == 0.0
    assert env.g(0.1) > 0.0


def test_posterior_matches_single_point_formula():
    k = gp.Kernel.squared_exp(1, 0.5, 1.0)
    post = gp.Posterior(k, 0.25)
    post.update([0.5], 0.8)
    s = post.query([0.5])
    assert math.isclose(s.mean, 0.8 / 1.25, rel_tol=1e-12)
    assert math.isclose(s.sd, math.sqrt(1.0 - 1.0 / 1.25), rel_tol=1e-12)
    assert post.count() == 1


def test_info_gain_positive_and_monotone():
    k = gp.Kernel.squared_exp(1, 0.5, 1.0)
    g1 = gp.info_gain(k, 0.25, [[0.2]])
    g2 = gp.info_gain(k, 0.25, [[0.2], [0.8]])
    assert 0.0 < g1 < g2


def test_confidence_constants():
    k = gp.Kernel.matern32(1, 0.4, 1.0)
    cfg = gp.make_confidence_config(k.envelope(), 1, 3, 25, 2.0, 0.1, theory_scale=0.2)
    h = gp.max_depth(cfg)
    assert h >= 1
    assert gp.beta_n(cfg, gp.BetaMode.TightOddN, h) > 0.0
    assert gp.v_h(cfg, 1) < gp.v_h(cfg, 0)
    assert 0.0 < gp.r_min(cfg) < 1.0


def test_tree_bandit_runs_and_is_deterministic():
    k = gp.Kernel.matern32(1, 0.4, 1.0)
    opts = gp.TreeBanditOptions()
    opts.theory_scale = 0.2

    def run():
        env = gp.GridGPEnv(k, gp.unit_box(1), 64, 0.1, 11)
        return gp.run_tree_bandit(env, k, 12, opts)

    a, b = run(), run()
    assert len(a.trace.rows) == 12
    assert [r.y for r in a.trace.rows] == [r.y for r in b.trace.rows]
    assert a.trace.rows[-1].n_e == 12
    assert all(r.delta >= 0.0 for r in a.trace.rows)
    assert a.events.eval_budget_respected


def test_zoom_and_random_traces():
    k = gp.Kernel.matern32(1, 0.4, 1.0)
    env = gp.GridGPEnv(k, gp.unit_box(1), 64, 0.1, 3)
    opts = gp.ZoomBanditOptions()
    opts.theory_scale = 0.2
    z = gp.run_zoom_bandit(env, k, 10, opts)
    assert len(z.trace.rows) == 10
    assert z.events.repeat_budget_respected
    env2 = gp.GridGPEnv(k, gp.unit_box(1), 64, 0.1, 3)
    r = gp.run_random_search(env2, 10, 7)
    assert len(r.rows) == 10


def test_contextual_bandit_serves_each_context():
    joint = gp.Kernel.product(
        gp.Kernel.squared_exp(1, 0.5, 1.0), gp.Kernel.matern32(1, 0.5, 1.0, offset=1)
    )
    env = gp.ContextualGPEnv(joint, gp.unit_box(1), gp.unit_box(1), 16, 0.1, 5)
    opts = gp.ContextualBanditOptions()
    opts.theory_scale = 0.2
    res = gp.run_contextual_bandit(env, joint, 8, opts)
    assert len(res.trace.rows) == 8
    assert len(res.row_contexts) == 8
    assert all(len(r.x) == 2 for r in res.trace.rows)


def test_toy_processes():
    env1 = gp.ToyEnv1(4)
    shot = gp.toy1_one_shot(env1)
    assert not (shot.events_held and not shot.success)
    rows = gp.toy1_gamma_report(0.05, 1.0, [5, 20])
    assert rows[0].closed_form <= rows[0].series + 1e-9
    assert rows[0].series <= rows[0].computed + 1e-9

    env2 = gp.ToyEnv2(6)
    strat = gp.toy2_oracle_strategy(env2, 6)
    assert strat.xs[0] == [0.5]
    assert len(strat.regret_curve) == 6


def test_gp_ucb_baseline():
    k = gp.Kernel.matern32(1, 0.4, 1.0)
    env = gp.GridGPEnv(k, gp.unit_box(1), 64, 0.1, 9)
    res = gp.run_gp_ucb(env, k, 8, 32)
    assert len(res.trace.rows) == 8
    assert res.grid_size == 32
    assert gp.gp_ucb_theoretical_grid(100, 6) > 1e24
