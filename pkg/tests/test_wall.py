"""Wall/barrier profiles, constrained evolution, scaling machinery."""

import math

import numpy as np
import pytest

import tasep_wall as tw
from tasep_wall.oracle import CTMCModel, survival_probability, verify_prop31


def test_wall_profile_values():
    w = tw.WallProfile.linear(c=0.1, v=0.5, horizon=10.0)
    assert w.value(0.0) == 0.0
    assert w.value(2.0) == pytest.approx(1.0 + 1.0)
    assert w.effective(2.1) == 2
    z = tw.WallProfile.zero()
    assert z.value(5.0) == 0.0
    t = tw.WallProfile.tabulated_profile([(0, 0), (2, 1), (4, 3)])
    assert t.value(3.0) == pytest.approx(2.0)
    s = tw.WallProfile.staircase_wall([0.0, 1.0], [1, 2])
    assert s.value(0.5) == 1.0 and s.value(1.5) == 2.0 and s.value(0.0) == 0.0


def test_wall_profile_validation():
    with pytest.raises(ValueError):
        tw.WallProfile.tabulated_profile([(0, 1), (1, 2)])  # f(0) != 0
    with pytest.raises(ValueError):
        tw.WallProfile.tabulated_profile([(0, 0), (1, -1)])
    with pytest.raises(ValueError):
        tw.WallProfile.linear(c=-0.1, v=0.5, horizon=10)
    tw.WallProfile.tabulated_profile([(0, 1), (1, 2)],
                                     allow_positive_start=True)


def test_wall_csv_roundtrip(tmp_path):
    p = tmp_path / "wall.csv"
    p.write_text("0,0\n1.5,2\n3,2.5\n")
    w = tw.wall_from_csv(p)
    assert w.value(1.5) == pytest.approx(2.0)
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0\n1,2\n1,3\n")
    with pytest.raises(ValueError):
        tw.wall_from_csv(bad)


def test_staircase_of_linear_wall():
    w = tw.WallProfile.linear(c=0.0, v=1.0, horizon=10.0)
    breaks, vals = w.staircase(0.0, 5.0)
    # floor(t) on (0, 5]: steps at integers
    for t, expect in ((0.5, 0), (1.5, 1), (4.5, 4)):
        i = np.searchsorted(breaks, t, side="left") - 1
        assert vals[min(i, len(vals) - 1)] == expect


def test_zero_wall_freezes_first_particle():
    cfg = tw.init_step(0, 4)
    wall = tw.WallProfile.zero()
    cf = tw.ClockField(3, tw.wall_clock_window(cfg, wall, 20.0))
    tr = tw.evolve_right_wall(cfg, cf, wall, 20.0)
    assert tr.final_position(1) == 0
    assert len(tr.wall_supp_times) > 0
    assert np.all(tr.wall_supp_labels == 1)


def test_unbinding_wall_equals_free_run():
    cfg = tw.init_step(0, 6)
    wall = tw.WallProfile.linear(c=0.0, v=50.0, horizon=30.0)
    win = tw.wall_clock_window(cfg, wall, 30.0)
    cf = tw.ClockField(5, win)
    a = tw.evolve_right_wall(cfg, cf, wall, 30.0)
    b = tw.evolve(cfg, cf, 0.0, 30.0)
    for k in cfg.labels:
        assert np.allclose(a.jump_times(int(k)), b.jump_times(int(k)))
    assert len(a.wall_supp_times) == 0


def test_pathwise_domination_under_wall():
    cfg = tw.init_step(0, 6)
    wall = tw.WallProfile.linear(c=0.05, v=0.4, horizon=25.0)
    win = tw.wall_clock_window(cfg, wall, 25.0)
    for seed in range(6):
        cf = tw.ClockField(seed, win)
        a = tw.evolve_right_wall(cfg, cf, wall, 25.0)
        b = tw.evolve(cfg, cf, 0.0, 25.0)
        for k in cfg.labels:
            for t in np.linspace(0, 25, 26):
                assert a.tagged(int(k), t) <= b.tagged(int(k), t)
        # wall constraint holds at every event time
        for t in a.jump_times(1):
            assert a.tagged(1, t) <= wall.effective(t)


def test_left_frozen_far_barrier_is_free():
    cfg = tw.init_step(0, 5)
    wall = tw.WallProfile.zero()
    bar = tw.BarrierProfile(wall, s=-10 ** 6, horizon=20.0)
    cf = tw.ClockField(7, tw.clock_window_for(cfg, 0, 20.0))
    a = tw.evolve_left_frozen(cfg, cf, bar, 20.0)
    b = tw.evolve(cfg, cf, 0.0, 20.0)
    for k in cfg.labels:
        assert np.allclose(a.jump_times(int(k)), b.jump_times(int(k)))


def test_left_frozen_full_freeze():
    cfg = tw.init_step(0, 5)
    bar = tw.BarrierProfile(tw.WallProfile.zero(), s=0, horizon=20.0)
    cf = tw.ClockField(8, tw.clock_window_for(cfg, 0, 20.0))
    tr = tw.evolve_left_frozen(cfg, cf, bar, 20.0)
    for k in cfg.labels:
        assert tr.final_position(int(k)) == cfg.position(int(k))


def test_dichotomy_survival_or_frozen():
    """Either x_n clears the barrier and y_n == x_n, or y_n froze at the
    first violation at a value <= s."""
    T = 15.0
    wall = tw.WallProfile.staircase_wall([0.0, 4.0, 9.0], [1, 2, 4])
    for seed in range(25):
        cfg = tw.init_step(0, 6)
        s = int(seed % 4)
        bar = tw.BarrierProfile(wall, s=s, horizon=T)
        win = tw.clock_window_for(cfg, 0, T)
        cf = tw.ClockField(100 + seed, win)
        free = tw.evolve(cfg, cf, 0.0, T)
        froz = tw.evolve_left_frozen(cfg, cf, bar, T)
        for n in range(1, 7):
            if tw.barrier_survival(free, n, bar):
                assert np.allclose(free.jump_times(n), froz.jump_times(n))
            else:
                assert froz.final_position(n) <= s


def test_barrier_survival_examples():
    cfg = tw.init_step(0, 3)
    T = 10.0
    cf = tw.ClockField(11, tw.clock_window_for(cfg, 0, T))
    tr = tw.evolve(cfg, cf, 0.0, T)
    bar = tw.BarrierProfile(tw.WallProfile.zero(), s=-1, horizon=T)
    assert tw.barrier_survival(tr, 1, bar)      # x_1 >= 0 > -1
    bar0 = tw.BarrierProfile(tw.WallProfile.zero(), s=0, horizon=T)
    assert not tw.barrier_survival(tr, 1, bar0)  # x_1(0) = 0 not > 0


def test_survival_probability_oracle_vs_mc():
    """Survival value for the one-step wall agrees with the absorbing-chain
    oracle (spec example n=2, f = 1 for t > 0, s = 1, T = 2)."""
    wall = tw.WallProfile.staircase_wall([0.0], [1])
    T, n, s = 2.0, 2, 1
    model = CTMCModel(n, (-n, 40))
    bt = np.array([0.0, T])
    bv = np.array([s - 1, s - 0], dtype=np.int64)  # b = s - f(T-t)
    p, info = survival_probability(model, (0, -1), (bt[:1], bv[:1]), n, T,
                                   final_threshold=s)
    assert info["truncation_mass"] < 1e-12
    hits = 0
    runs = 40_000
    cfg = tw.init_step(0, n)
    bar = tw.BarrierProfile(wall, s=s, horizon=T)
    win = tw.clock_window_for(cfg, 0, T)
    for r in range(runs):
        cf = tw.ClockField(50_000 + r, win)
        tr = tw.evolve(cfg, cf, 0.0, T)
        if tw.barrier_survival(tr, n, bar) and tr.final_position(n) > s:
            hits += 1
    se = math.sqrt(max(p * (1 - p), 1e-9) / runs)
    assert abs(hits / runs - p) < 5 * se, (hits / runs, p)


def test_f0_threshold():
    a = 0.25
    xi = -0.25
    # branch agreement at beta = 1 - alpha
    left = tw.f0_threshold(1 - a - 1e-12, a, xi)
    right = tw.f0_threshold(1 - a, a, xi)
    assert left == pytest.approx(right, abs=1e-9)
    assert tw.f0_threshold(0.0, a, xi) == pytest.approx(-0.25)
    # f0(0) <= 0 over admissible xi, equality only at the upper end
    for alpha in (0.09, 0.25, 0.49):
        hi = 1 - 2 * math.sqrt(alpha)
        for xi_ in np.linspace(-alpha, hi, 21):
            v = tw.f0_threshold(0.0, alpha, float(xi_))
            assert v <= 1e-12
        assert tw.f0_threshold(0.0, alpha, hi) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        tw.f0_threshold(0.2, 0.25, 0.9)


def test_scaling_constants_values():
    c1, c2, mu = tw.scaling_constants(0.25, 1.0)
    assert c1 == pytest.approx(0.5 ** (1 / 3), abs=1e-12)
    c1b, c2b, _ = tw.scaling_constants(0.25, 0.64)
    assert c1b == pytest.approx(0.5242, abs=2e-4)
    assert c2b == pytest.approx(1.4652, abs=5e-4)
    rng = np.random.default_rng(0)
    for _ in range(100):
        a = float(rng.uniform(0.02, 0.9))
        a0 = float(rng.uniform(a + 0.01, 1.0))
        c1, c2, _ = tw.scaling_constants(a, a0)
        rel = 2 * c1 ** 2 * math.sqrt(a0) / (math.sqrt(a0) - math.sqrt(a))
        assert c2 == pytest.approx(rel, rel=1e-12)
    with pytest.raises(ValueError):
        tw.scaling_constants(0.5, 0.5)


def test_extract_gT_linear_matched():
    """Matched linear wall gives g_T(tau) = tau^2 exactly."""
    alpha, v, c, T = 0.09, 0.5, 0.05, 500.0
    alpha0 = alpha / (1 - v) ** 2
    xi = v + c - alpha / (1 - v)
    wall = tw.WallProfile.linear(c=c, v=v, horizon=T)
    g, rep = tw.extract_gT(wall, alpha, alpha0, xi, T, M=0.0, eps=0.05)
    for tau in (-2.0, -0.5, 0.0, 1.0, 3.0):
        assert g(tau) == pytest.approx(tau * tau, abs=1e-8)
    assert rep["bound_holds"]  # g = tau^2 >= tau^2/2 - 0


def test_extract_gT_perturbed_speed():
    """A T^{-1/3} speed perturbation tilts g_T by a linear term: slowing the
    wall by delta (1-sqrt(a))^{1/3} a^{1/6} T^{-1/3} gives tau^2 - 2 delta tau
    on the boundary window (alpha0 = 1); speeding it up flips the sign."""
    alpha, T, delta = 0.25, 8000.0, 0.7
    ra = math.sqrt(alpha)
    bump = delta * (1 - ra) ** (1 / 3) * alpha ** (1 / 6) * T ** (-1 / 3)
    xi = 1 - 2 * ra
    for sign in (-1.0, 1.0):
        wall = tw.WallProfile.linear(c=0.0, v=1 - ra + sign * bump,
                                     horizon=T)
        g, _ = tw.extract_gT(wall, alpha, 1.0, xi, T)
        for tau in (0.3, 1.0, 2.0):
            assert g(tau) == pytest.approx(
                tau * tau + sign * 2 * delta * tau, abs=1e-6)


def test_classify_linear_cases():
    a = tw.classify_linear(0.5, 0.05, 0.09)
    assert a["case"] == "a" and a["law"] == "F1"
    assert a["xi"] == pytest.approx(0.37)
    assert a["c1"] == pytest.approx(0.5646, abs=2e-4)
    b = tw.classify_linear(0.5, 0.0, 0.25)
    assert b["case"] == "b" and b["law"] == "F2->1;0"
    # xi = 1 - 2 sqrt(0.25) = 0 (the quoted 0.5 elsewhere is the speed v)
    assert b["xi"] == pytest.approx(0.0)
    assert b["c1"] == pytest.approx(0.7937, abs=2e-4)
    c = tw.classify_linear(0.5, 0.05, 0.25)
    assert c["case"] == "c" and c["law"] == "F2"
    boundary = (1 - 0.5 - math.sqrt(0.05 * 0.5)) ** 2
    s = tw.classify_linear(0.5, 0.05, boundary)
    assert s["case"] == "shock-excluded"
    with pytest.raises(ValueError):
        tw.classify_linear(1.0, 0.1, 0.2)


def test_prop31_oracle_wall_module_integration():
    wall = tw.WallProfile.staircase_wall([0.0, 0.7, 1.4], [0, 1, 3])
    for n in (1, 2):
        for s in range(-n, 4):
            r = verify_prop31(n, wall, s, 2.0)
            assert r["diff"] <= 1e-9
