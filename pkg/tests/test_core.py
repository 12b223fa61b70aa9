"""Single-species core: initial conditions, evolution, coupling properties."""

import numpy as np
import pytest

import tasep_wall as tw
from tasep_wall import _kernels
from tasep_wall._bits import split_seed


def test_init_step_examples():
    c = tw.init_step(0, 3)
    assert [c.position(k) for k in (1, 2, 3)] == [0, -1, -2]
    assert tw.init_step(5, 1).position(1) == 5
    c = tw.init_step(-2, 2)
    assert [c.position(1), c.position(2)] == [-2, -3]


def test_init_step_errors():
    with pytest.raises(ValueError):
        tw.init_step(0, 0)


def test_init_bernoulli_labeling():
    for seed in range(40):
        try:
            c = tw.init_bernoulli(0.5, (-30, 30), seed)
        except tw.DegenerateSample:
            continue
        assert c.position(1) < 0 <= c.position(0)
        assert np.all(np.diff(c.positions) < 0)


def test_init_bernoulli_density():
    occ = 0
    width = 100_000
    c = tw.init_bernoulli(0.5, (-width // 2, width // 2), 7)
    occ = len(c)
    assert abs(occ / (width + 1) - 0.5) < 0.01


def test_init_bernoulli_degenerate():
    # window entirely right of the origin cannot satisfy x_1 < 0
    with pytest.raises(tw.DegenerateSample):
        tw.init_bernoulli(0.5, (1, 10), 3)


def test_free_particle_poisson_mean():
    out, st = _kernels.batch_step_final(5, 10_000, 1, 100.0, False, 0.0, 0.0)
    assert st == 0
    assert abs(out.mean() - 100.0) < 2.0


def test_two_adjacent_particles_suppress():
    cfg = tw.init_step(0, 2)
    cf = tw.ClockField(3, tw.clock_window_for(cfg, 0, 10.0))
    tr = tw.evolve(cfg, cf, 0.0, 10.0)
    # any attempt of label 2 while gap is one must be a suppression, and
    # positions never collide
    for t in np.linspace(0, 10, 101):
        assert tr.tagged(1, t) > tr.tagged(2, t)


def test_evolve_matches_reference():
    for seed in (1, 2, 3):
        cfg = tw.init_step(0, 12)
        win = tw.clock_window_for(cfg, 0, 25.0)
        cf = tw.ClockField(seed, win)
        a = tw.evolve(cfg, cf, 0.0, 25.0)
        b = tw.evolve_reference(cfg, cf, 0.0, 25.0)
        for k in cfg.labels:
            assert np.allclose(a.jump_times(int(k)), b.jump_times(int(k)))
        assert np.allclose(a.supp_times, b.supp_times)
    for seed in range(20, 26):
        try:
            cfg = tw.init_bernoulli(0.45, (-25, 18), seed)
        except tw.DegenerateSample:
            continue
        win = tw.clock_window_for(cfg, 0, 15.0)
        cf = tw.ClockField(seed, win)
        a = tw.evolve(cfg, cf, 0.0, 15.0)
        b = tw.evolve_reference(cfg, cf, 0.0, 15.0)
        for k in cfg.labels:
            assert np.allclose(a.jump_times(int(k)), b.jump_times(int(k)))


def test_tagged_monotone_and_initial():
    cfg = tw.init_step(0, 6)
    cf = tw.ClockField(9, tw.clock_window_for(cfg, 0, 30.0))
    tr = tw.evolve(cfg, cf, 0.0, 30.0)
    for k in cfg.labels:
        assert tr.tagged(int(k), 0.0) == cfg.position(int(k))
        pos = [tr.tagged(int(k), t) for t in np.linspace(0, 30, 61)]
        assert np.all(np.diff(pos) >= 0)
    with pytest.raises(KeyError):
        tr.tagged(99, 1.0)


def test_step_domination_in_Z():
    """x^{step,Z}_n(t) weakly increasing in Z under shared clocks."""
    T = 20.0
    for seed in (4, 5):
        cf = tw.ClockField(seed, (-30, 60))
        trs = {Z: tw.evolve(tw.init_step(Z, 10), cf, 0.0, T)
               for Z in (0, 2, 5)}
        for k in range(1, 11):
            vals = [trs[Z].final_position(k) for Z in (0, 2, 5)]
            assert vals[0] <= vals[1] <= vals[2]


def test_basic_coupling_monotonicity():
    """x_k(0) <= x'_k(0) for common labels implies domination for all t."""
    T = 15.0
    for seed in range(30, 36):
        cf = tw.ClockField(seed, (-40, 60))
        lo = tw.init_step(0, 9)
        hi_pos = lo.positions.copy()
        rng = np.random.default_rng(seed)
        hi_pos = hi_pos + rng.integers(0, 3, size=len(hi_pos))
        hi_pos = np.minimum.accumulate(hi_pos + np.arange(len(hi_pos)))
        hi_pos = hi_pos - np.arange(len(hi_pos))
        # enforce strict decrease
        for i in range(1, len(hi_pos)):
            hi_pos[i] = min(hi_pos[i], hi_pos[i - 1] - 1)
        hi = tw.ParticleConfig(lo.labels, hi_pos)
        tra = tw.evolve(lo, cf, 0.0, T)
        trb = tw.evolve(hi, cf, 0.0, T)
        for k in lo.labels:
            for t in np.linspace(0, T, 16):
                assert tra.tagged(int(k), t) <= trb.tagged(int(k), t)


def test_truncation_error_on_small_window():
    cfg = tw.init_step(0, 3)
    cf = tw.ClockField(1, (-10, 8))  # far too small for T=40
    with pytest.raises(tw.TruncationError):
        tw.evolve(cfg, cf, 0.0, 40.0)


def test_trajectory_jsonl_export(tmp_path):
    cfg = tw.init_step(0, 4)
    cf = tw.ClockField(2, tw.clock_window_for(cfg, 0, 5.0))
    tr = tw.evolve(cfg, cf, 0.0, 5.0)
    p = tmp_path / "traj.jsonl"
    tr.to_jsonl(p)
    import json
    rows = [json.loads(line) for line in p.read_text().splitlines()]
    assert rows
    assert set(rows[0]) == {"t", "site", "label", "kind"}
    assert all(r["kind"] in ("jump", "suppressed", "wall-suppressed")
               for r in rows)
    ts = [r["t"] for r in rows]
    assert ts == sorted(ts)


def test_replay_reproduces_final_config():
    cfg = tw.init_step(0, 8)
    cf = tw.ClockField(5, tw.clock_window_for(cfg, 0, 12.0))
    tr = tw.evolve(cfg, cf, 0.0, 12.0)
    # replaying the jump log from the initial config reproduces the final
    pos = {int(k): cfg.position(int(k)) for k in cfg.labels}
    events = [e for e in tr.events() if e[3] == "jump"]
    for t, site, label, _ in events:
        assert pos[label] == site
        pos[label] += 1
    assert pos == {int(k): tr.final_position(int(k)) for k in cfg.labels}
