"""Reference distributions: Airy accuracy and Tracy-Widom determinants."""

import math

import numpy as np
import pytest

from tasep_wall import refdist as rd


def test_airy_anchor_values():
    # closed forms: Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
    assert rd.airy_ai(0.0) == pytest.approx(
        3 ** (-2 / 3) / math.gamma(2 / 3), abs=1e-14)
    assert rd.airy_ai(0.0) == pytest.approx(0.3550280539, abs=1e-10)
    assert rd.airy_ai_prime(0.0) == pytest.approx(
        -(3 ** (-1 / 3)) / math.gamma(1 / 3), abs=1e-14)
    assert rd.airy_ai_prime(0.0) == pytest.approx(-0.2588194038, abs=1e-10)


def test_airy_positive_axis_shape():
    xs = np.linspace(0, 12, 49)
    vals = [rd.airy_ai(float(x)) for x in xs]
    assert all(v > 0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_airy_series_asymptotic_overlap():
    """Series and asymptotic branches agree across the switch region."""
    # near the branch switch at 9.5 both must be tight; further inside the
    # overlap the optimally truncated asymptotic tail dominates the error
    for x in np.linspace(7.0, 9.4, 25):
        tol = 1e-12 if x >= 9.0 else 3e-9
        s = rd._airy_series(float(x))
        a = rd._airy_asym_pos(float(x), rd._UK, rd._VK)
        assert abs(s[0] - a[0]) < tol
        assert abs(s[1] - a[1]) < tol
        sn = rd._airy_series(float(-x))
        an = rd._airy_asym_neg(float(-x), rd._UK, rd._VK)
        assert abs(sn[0] - an[0]) < tol
        assert abs(sn[1] - an[1]) < tol


def test_airy_against_mpmath():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    worst = 0.0
    for x in np.linspace(-15, 15, 121):
        a = rd.airy_ai(float(x))
        ap = rd.airy_ai_prime(float(x))
        t = float(mp.airyai(mp.mpf(float(x))))
        tp = float(mp.airyai(mp.mpf(float(x)), 1))
        worst = max(worst, abs(a - t), abs(ap - tp))
    assert worst < 1e-12, worst


def test_airy_range_error():
    with pytest.raises(rd.RangeError):
        rd.airy_ai(101.0)
    with pytest.raises(rd.RangeError):
        rd.airy_ai_prime(-150.0)


def test_tw2_values_and_monotone():
    assert rd.tw2_cdf(-8.0) < 1e-4
    assert rd.tw2_cdf(4.0) > 0.999
    grid = np.linspace(-8, 6, 200)
    vals = [rd.tw2_cdf(float(s)) for s in grid]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert all(0.0 <= v <= 1.0 for v in vals)
    # total variation ~ 1 across the validated range
    assert vals[-1] - vals[0] > 1 - 1e-3


def test_tw1_monotone():
    grid = np.linspace(-8, 6, 120)
    vals = [rd.tw1_cdf(float(s)) for s in grid]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert vals[-1] - vals[0] > 1 - 1e-3


def test_quadrature_self_consistency():
    for s in np.arange(-8.0, 6.01, 0.5):
        assert abs(rd.tw2_cdf(float(s))
                   - rd.tw2_cdf(float(s), m=2 * rd.DEFAULT_NODES)) < 1e-8
        assert abs(rd.tw1_cdf(float(s))
                   - rd.tw1_cdf(float(s), m=2 * rd.DEFAULT_NODES)) < 1e-8


def test_tw_moments():
    m2, v2 = rd.tw_moments(rd.tw2_cdf)
    assert m2 == pytest.approx(-1.771087, abs=1e-4)
    assert v2 == pytest.approx(0.813195, abs=1e-4)
    m1, v1 = rd.tw_moments(rd.tw1_cdf)
    assert m1 == pytest.approx(-1.206534, abs=1e-4)
    assert v1 == pytest.approx(1.607781, abs=1e-4)


def test_f21_bounds():
    for s in np.arange(-8.0, 6.01, 0.5):
        lo, hi = rd.f21_bounds(float(s))
        assert lo <= hi + 1e-14
    lo, hi = rd.f21_bounds(0.0)
    assert lo < hi  # strict at s = 0
    lo8, hi8 = rd.f21_bounds(6.0)
    assert lo8 > 0.99 and hi8 > 0.999


def test_cdf_range_errors():
    with pytest.raises(rd.RangeError):
        rd.tw2_cdf(-11.0)
    with pytest.raises(rd.RangeError):
        rd.tw1_cdf(11.0)


def test_quadrature_scheme_basics():
    q = rd.QuadratureScheme(m=32)
    x, sw = q.nodes(-1.0)
    assert np.all(np.diff(x) > 0)
    assert np.all(sw > 0)
    with pytest.raises(ValueError):
        rd.QuadratureScheme(m=2)
