"""Counter-stream core: determinism and numba/pure-Python parity."""

import os
import subprocess
import sys
import textwrap

import numpy as np

from tasep_wall import _bits


def test_streams_deterministic():
    k = _bits.stream_key(42, _bits.KIND_SITE, -7)
    a = [_bits.exp_gap(k, i) for i in range(1, 200)]
    b = [_bits.exp_gap(k, i) for i in range(1, 200)]
    assert a == b
    assert all(g > 0 for g in a)


def test_distinct_streams_differ():
    k1 = _bits.stream_key(42, _bits.KIND_SITE, 0)
    k2 = _bits.stream_key(42, _bits.KIND_SITE, 1)
    k3 = _bits.stream_key(43, _bits.KIND_SITE, 0)
    k4 = _bits.stream_key(42, _bits.KIND_LABEL, 0)
    vals = {int(k1), int(k2), int(k3), int(k4)}
    assert len(vals) == 4


def test_split_seed_spread():
    seeds = {_bits.split_seed(1, i) for i in range(1000)}
    assert len(seeds) == 1000


def test_uniform_range():
    k = _bits.stream_key(5, _bits.KIND_INIT, 3)
    us = np.array([_bits.uniform_draw(k, i) for i in range(1, 5000)])
    assert np.all((us > 0) & (us < 1))
    assert abs(us.mean() - 0.5) < 0.02


_PARITY_SNIPPET = textwrap.dedent("""
    from tasep_wall import _bits
    vals = []
    for site in (-3, 0, 11):
        k = _bits.stream_key(99, _bits.KIND_SITE, site)
        vals.append(int(k))
        vals += [repr(_bits.exp_gap(k, i)) for i in range(1, 50)]
        vals += [repr(_bits.uniform_draw(k, i)) for i in range(1, 50)]
    print("\\n".join(map(str, vals)))
""")


def _run_with_flag(flag):
    env = dict(os.environ)
    env["TASEP_WALL_NUMBA"] = flag
    out = subprocess.run([sys.executable, "-c", _PARITY_SNIPPET],
                         capture_output=True, text=True, env=env, check=True)
    return out.stdout


def test_backend_parity_bitwise():
    """numba and pure-Python backends must emit identical streams."""
    assert _run_with_flag("1") == _run_with_flag("0")
