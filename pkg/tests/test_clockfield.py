"""Clock field contracts: replay determinism, splitting, statistics."""

import numpy as np
import pytest
import scipy.stats

from tasep_wall import ClockField, WindowViolation
from tasep_wall._bits import exp_gap, stream_key, KIND_SITE


def test_empty_interval():
    cf = ClockField(42, (-5, 5))
    assert len(cf.events_in(0, 0.0, 0.0)) == 0


def test_determinism_and_regeneration():
    cf = ClockField(42, (-5, 5))
    a = cf.events_in(0, 0.0, 10.0)
    b = cf.events_in(0, 0.0, 10.0)
    assert np.array_equal(a, b)
    c = ClockField(42, (-5, 5)).events_in(0, 0.0, 10.0)
    assert np.array_equal(a, c)


def test_strictly_increasing_positive():
    cf = ClockField(7, (0, 0))
    t = cf.events_in(0, 0.0, 200.0)
    assert t[0] > 0
    assert np.all(np.diff(t) > 0)


def test_split_consistency():
    cf = ClockField(3, (-2, 2))
    for t0 in (0.0, 1.3, 4.0, 9.99):
        full = cf.events_in(1, 0.0, 10.0)
        a = cf.events_in(1, 0.0, t0)
        b = cf.events_in(1, t0, 10.0)
        assert np.array_equal(np.concatenate((a, b)), full)


def test_window_violation():
    cf = ClockField(1, (-2, 2))
    with pytest.raises(WindowViolation):
        cf.events_in(3, 0.0, 1.0)


def test_mean_event_count():
    """Poisson mean: rate * length over 10^5 (seed, site) pairs."""
    n = 0
    total = 0
    for seed in range(100_000):
        k = stream_key(seed, KIND_SITE, seed % 57 - 17)
        t, i = 0.0, 0
        while True:
            i += 1
            t += exp_gap(k, i)
            if t > 10.0:
                break
        total += i - 1
        n += 1
    mean = total / n
    assert abs(mean - 10.0) < 0.1


def test_gap_distribution_ks():
    """Inter-event gaps at one site are Exponential(1)."""
    k = stream_key(123, KIND_SITE, 4)
    gaps = np.array([exp_gap(k, i) for i in range(1, 100_001)])
    d, p = scipy.stats.kstest(gaps, "expon")
    assert p > 0.01, (d, p)


def test_merged_events():
    cf = ClockField(11, (-3, 3))
    t, z = cf.merged_events((1, 0), 0.0, 5.0)
    assert len(t) == 0
    t1 = cf.events_in(2, 0.0, 8.0)
    tm, zm = cf.merged_events((2, 2), 0.0, 8.0)
    assert np.array_equal(tm, t1) and np.all(zm == 2)
    ta, za = cf.merged_events((-1, 1), 0.0, 8.0)
    total = sum(len(cf.events_in(s, 0.0, 8.0)) for s in (-1, 0, 1))
    assert len(ta) == total
    assert np.all(np.diff(ta) >= 0)
