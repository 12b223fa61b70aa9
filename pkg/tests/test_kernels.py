"""Kernel-level contracts: determinism, backend parity, status guards."""

import os
import subprocess
import sys
import textwrap

import numpy as np

import tasep_wall as tw
from tasep_wall import _kernels


def test_batch_determinism():
    a, st1 = _kernels.batch_step_final(9, 50, 6, 12.0, False, 0.0, 0.0)
    b, st2 = _kernels.batch_step_final(9, 50, 6, 12.0, False, 0.0, 0.0)
    assert st1 == st2 == 0
    assert np.array_equal(a, b)
    c, _ = _kernels.batch_step_final(10, 50, 6, 12.0, False, 0.0, 0.0)
    assert not np.array_equal(a, c)


def test_site_sweep_matches_evolve_under_walls():
    cfg = tw.init_step(0, 5)
    wall = tw.WallProfile.linear(c=0.2, v=0.3, horizon=15.0)
    win = tw.wall_clock_window(cfg, wall, 15.0)
    for seed in range(4):
        cf = tw.ClockField(seed, win)
        a = tw.evolve_right_wall(cfg, cf, wall, 15.0)
        b = tw.evolve_reference(cfg, cf, 0.0, 15.0,
                                wall_thr=wall.staircase(0.0, 15.0))
        for k in cfg.labels:
            assert np.allclose(a.jump_times(int(k)), b.jump_times(int(k)))
        assert np.allclose(a.wall_supp_times, b.wall_supp_times)


def test_barrier_mode_matches_reference():
    cfg = tw.init_step(0, 5)
    wall = tw.WallProfile.staircase_wall([0.0, 3.0], [1, 2])
    bar = tw.BarrierProfile(wall, s=0, horizon=12.0)
    win = tw.clock_window_for(cfg, 0, 12.0)
    for seed in range(4):
        cf = tw.ClockField(40 + seed, win)
        a = tw.evolve_left_frozen(cfg, cf, bar, 12.0)
        b = tw.evolve_reference(cfg, cf, 0.0, 12.0,
                                barrier_thr=bar.staircase(0.0, 12.0))
        for k in cfg.labels:
            assert np.allclose(a.jump_times(int(k)), b.jump_times(int(k)))


_SIM_SNIPPET = textwrap.dedent("""
    import numpy as np
    from tasep_wall import _kernels
    out, st = _kernels.batch_step_final(7, 20, 5, 9.0, True, 1.0, 0.4)
    ms, st2 = _kernels.batch_barrier_minstat(8, 20, 4, 9.0, 1.0, 0.4)
    sc, st3 = _kernels.batch_second_class(9, 6, 8.0, 1.5, 0.5, 40, True)
    inc, st4 = _kernels.batch_stationary_increment(10, 20, 0.5, 6.0, -40, 70)
    print(st, st2, st3, st4)
    print(",".join(map(str, out)))
    print(",".join(map(str, ms)))
    print(",".join(map(str, sc)))
    print(",".join(map(str, inc)))
""")


def _run_flag(flag):
    env = dict(os.environ)
    env["TASEP_WALL_NUMBA"] = flag
    r = subprocess.run([sys.executable, "-c", _SIM_SNIPPET],
                       capture_output=True, text=True, env=env, check=True)
    return r.stdout


def test_numba_and_python_backends_agree():
    """Full kernels produce identical samples under both backends."""
    assert _run_flag("1") == _run_flag("0")


def test_window_escape_status():
    # second-class with far too few tracked first-class particles
    out, st = _kernels.batch_second_class(3, 4, 50.0, 0.0, 0.0, 8, False)
    assert st == _kernels.ERR_WINDOW


def test_symmetry_kernel():
    assert _kernels.batch_symmetry_random(1, 500, 30, 100) == 0
