"""Deterministic walls and barriers, wall-constrained evolution, and the
scaling / threshold machinery for linearly moving walls.

A wall is a non-decreasing profile f with f(0) = 0 (a positive start is
allowed behind an explicit flag).  The first particle obeys
``x_1(t) <= floor(f(t))``: the integer effective wall.  The dual barrier for
horizon T and offset s is ``b(t) = s - f(T - t)``; survival means staying
strictly above the effective integer barrier at all times, which is the
exact pathwise counterpart of the wall process.
"""

import csv
import math

import numpy as np

from .core import EDGE_GUARD, clock_window_for, evolve

__all__ = [
    "WallProfile",
    "BarrierProfile",
    "evolve_right_wall",
    "evolve_left_frozen",
    "barrier_survival",
    "f0_threshold",
    "scaling_constants",
    "extract_gT",
    "classify_linear",
    "wall_from_csv",
    "wall_clock_window",
]


class WallProfile:
    """Non-decreasing deterministic wall profile.

    kinds:
      * ``zero`` -- f == 0;
      * ``linear_with_offset`` -- f(0) = 0, f(t) = c*T + v*t for t > 0
        (the offset jump happens immediately after time zero);
      * ``tabulated`` -- piecewise linear through (t, value) breakpoints;
      * ``staircase`` -- f(t) = values[i] on (times[i], times[i+1]], f(0)=0.

    ``allow_positive_start`` relaxes f(0) = 0 to f(0) >= 0 (the identity
    then carries an extra final-time event; see the oracle module).
    """

    def __init__(self, kind, c=0.0, v=0.0, horizon=None, points=None,
                 times=None, values=None, allow_positive_start=False,
                 start_value=0.0):
        self.kind = kind
        self.allow_positive_start = bool(allow_positive_start)
        self.start_value = float(start_value)
        if start_value != 0.0 and not allow_positive_start:
            raise ValueError("wall must start at 0 (or set the flag)")
        if start_value < 0.0:
            raise ValueError("wall start must be >= 0")
        if kind == "zero":
            pass
        elif kind == "linear_with_offset":
            if c < 0 or v < 0:
                raise ValueError("need c >= 0 and v >= 0")
            if horizon is None or horizon <= 0:
                raise ValueError("linear wall needs a positive horizon T")
            self.c = float(c)
            self.v = float(v)
            self.horizon = float(horizon)
        elif kind == "tabulated":
            pts = sorted((float(t), float(x)) for t, x in points)
            if pts[0][0] != 0.0:
                pts = [(0.0, pts[0][1])] + pts
            ts = np.array([p[0] for p in pts])
            xs = np.array([p[1] for p in pts])
            if np.any(np.diff(ts) <= 0):
                raise ValueError("tabulated times must strictly increase")
            if np.any(np.diff(xs) < 0):
                raise ValueError("wall must be non-decreasing")
            if xs[0] < 0:
                raise ValueError("wall must be non-negative")
            if xs[0] != 0.0 and not allow_positive_start:
                raise ValueError("wall must start at 0 (or set the flag)")
            self._ts = ts
            self._xs = xs
        elif kind == "staircase":
            ts = np.asarray(times, dtype=np.float64)
            xs = np.asarray(values, dtype=np.float64)
            if len(ts) != len(xs):
                raise ValueError("times/values must align")
            if ts[0] != 0.0:
                raise ValueError("staircase must start its pieces at t=0")
            if np.any(np.diff(ts) <= 0):
                raise ValueError("staircase times must strictly increase")
            if np.any(np.diff(xs) < 0) or xs[0] < self.start_value:
                raise ValueError("wall must be non-decreasing")
            self._ts = ts
            self._xs = xs
        else:
            raise ValueError(f"unknown wall kind {kind!r}")

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def linear(cls, c, v, horizon):
        return cls("linear_with_offset", c=c, v=v, horizon=horizon)

    @classmethod
    def tabulated_profile(cls, points, allow_positive_start=False):
        return cls("tabulated", points=points,
                   allow_positive_start=allow_positive_start)

    @classmethod
    def staircase_wall(cls, times, values, allow_positive_start=False,
                       start_value=0.0):
        return cls("staircase", times=times, values=values,
                   allow_positive_start=allow_positive_start,
                   start_value=start_value)

    def value(self, t):
        """f(t); note the t=0 discontinuity of offset and staircase kinds."""
        if t < 0:
            raise ValueError("wall defined for t >= 0")
        if self.kind == "zero":
            return 0.0
        if t == 0:
            if self.kind == "tabulated":
                return float(self._xs[0])
            return self.start_value
        if self.kind == "linear_with_offset":
            return self.c * self.horizon + self.v * t
        if self.kind == "staircase":
            i = int(np.searchsorted(self._ts, t, side="left")) - 1
            i = min(max(i, 0), len(self._xs) - 1)
            return float(self._xs[i])
        ts, xs = self._ts, self._xs
        if t >= ts[-1]:
            return float(xs[-1])
        i = int(np.searchsorted(ts, t, side="right")) - 1
        w = (t - ts[i]) / (ts[i + 1] - ts[i])
        return float(xs[i] * (1 - w) + xs[i + 1] * w)

    def effective(self, t):
        """Integer wall position floor(f(t))."""
        return int(math.floor(self.value(t)))

    def max_value(self, t1):
        return self.value(t1)  # non-decreasing

    def _cross_times(self, a, b):
        """Times in (a, b) where floor(f) can change (crossings and knots)."""
        out = set()
        if self.kind == "linear_with_offset":
            v, cT = self.v, self.c * self.horizon
            if v > 0:
                k0 = math.floor(cT + v * max(a, 0.0))
                k1 = math.floor(cT + v * b) + 1
                for k in range(int(k0), int(k1) + 1):
                    tk = (k - cT) / v
                    if a < tk < b:
                        out.add(float(tk))
        elif self.kind == "staircase":
            for t in self._ts:
                if a < t < b:
                    out.add(float(t))
        elif self.kind == "tabulated":
            for i in range(len(self._ts) - 1):
                lo, hi = self._ts[i], self._ts[i + 1]
                xa, xb = self._xs[i], self._xs[i + 1]
                if xb > xa:
                    for k in range(int(math.floor(xa)),
                                   int(math.floor(xb)) + 2):
                        tk = lo + (k - xa) * (hi - lo) / (xb - xa)
                        if a < tk < b and lo <= tk <= hi:
                            out.add(float(tk))
            for t in self._ts:
                if a < t < b:
                    out.add(float(t))
        return sorted(out)

    def pieces(self, t0, t1):
        """Breakpoints [t0, ..., t1] between which floor(f) is constant."""
        return [float(t0)] + self._cross_times(t0, t1) + [float(t1)]

    def staircase(self, t0, t1, rule="origin"):
        """Suppression-threshold staircase on (t0, t1] as (breaks, vals).

        ``vals[i]`` holds on ``(breaks[i], breaks[i+1]]``.  rule 'origin'
        gives floor(f) (jump from z suppressed iff z >= floor(f), i.e.
        x_1 <= floor(f)); rule 'target' gives ceil(f) - 1 (the literal
        "involves the target site" reading; differs from 'origin' only while
        f sits exactly on an integer).
        """
        edges = self.pieces(t0, t1)
        breaks = np.array(edges)
        vals = np.empty(len(edges) - 1, dtype=np.int64)
        for i in range(len(edges) - 1):
            m = (edges[i] + edges[i + 1]) / 2.0
            fv = self.value(max(m, 1e-300))
            if rule == "origin":
                vals[i] = int(math.floor(fv))
            elif rule == "target":
                vals[i] = int(math.ceil(fv)) - 1
            else:
                raise ValueError("rule must be 'origin' or 'target'")
        breaks[-1] = t1 + 1.0  # cover the closed right end
        return breaks, vals


class BarrierProfile:
    """Barrier b(t) = s - f(T - t) dual to a wall over horizon T.

    Non-decreasing in t (the wall recedes as t runs forward).  The effective
    integer barrier is ``s - floor(f(T - t))``; survival and freezing use it
    so that the wall <-> barrier identity is exact pathwise.
    """

    def __init__(self, wall, s, horizon):
        self.wall = wall
        self.s = int(s)
        self.horizon = float(horizon)

    def value(self, t):
        return self.s - self.wall.value(self.horizon - t)

    def effective(self, t):
        return self.s - self.wall.effective(self.horizon - t)

    def staircase(self, t0, t1):
        """Staircase of the effective barrier on (t0, t1] as (breaks, vals)."""
        T = self.horizon
        edges_u = self.wall.pieces(max(T - t1, 0.0), T - t0)
        edges = [float(t0)] + sorted(
            T - u for u in edges_u if t0 < T - u < t1) + [float(t1)]
        breaks = np.array(edges)
        vals = np.empty(len(edges) - 1, dtype=np.int64)
        for i in range(len(edges) - 1):
            m = (edges[i] + edges[i + 1]) / 2.0
            vals[i] = self.s - int(math.floor(self.wall.value(T - m)))
        breaks[-1] = t1 + 1.0
        return breaks, vals


def evolve_right_wall(config, clocks, wall, T, t0=0.0, rule="origin"):
    """Evolution with particle 1 blocked by the wall: x_1(t) <= floor(f(t)).

    Identical to the free evolution except that first-particle jumps which
    would cross the wall are logged with kind "wall-suppressed".
    """
    thr = wall.staircase(t0, T, rule=rule)
    return evolve(config, clocks, t0, T, _mode=1, _thr=thr,
                  _kind="right-wall")


def evolve_left_frozen(config, clocks, barrier, T, t0=0.0):
    """Evolution where jumps from sites at or below the barrier freeze.

    A particle at position u may jump only when u exceeds the effective
    barrier; since the barrier is non-decreasing, a particle at or below it
    never moves again.
    """
    thr = barrier.staircase(t0, T)
    return evolve(config, clocks, t0, T, _mode=2, _thr=thr, _kind="barrier")


def barrier_survival(traj, n, barrier):
    """True iff x_n stays strictly above the effective barrier on [0, T].

    Checked at t = 0, at every jump time of x_n, at every barrier step, and
    at t = T (piecewise-constant paths make this exhaustive).
    """
    T = barrier.horizon
    jt = traj.jump_times(n)
    x = traj.config0.position(n)
    breaks, vals = barrier.staircase(0.0, T)
    j = 0
    bi = 0
    while True:
        if x <= vals[min(bi, len(vals) - 1)]:
            return False
        tj = jt[j] if j < len(jt) else np.inf
        tb = breaks[bi + 1] if bi + 1 < len(breaks) else np.inf
        if tj > T and tb > T:
            return True
        if tj <= tb:
            x += 1
            j += 1
        else:
            bi += 1


def f0_threshold(beta, alpha, xi):
    """Macroscopic lower threshold for wall profiles, per unit horizon.

    On [0, 1-alpha) equals xi - sqrt(1-beta)(sqrt(1-beta) - 2 sqrt(alpha)),
    then xi + alpha on [1-alpha, 1].  Admissible xi range is
    [-alpha, 1 - 2 sqrt(alpha)].
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("need 0 < alpha < 1")
    if not -alpha <= xi <= 1.0 - 2.0 * math.sqrt(alpha) + 1e-12:
        raise ValueError(
            f"xi={xi} outside [-alpha, 1-2*sqrt(alpha)] for alpha={alpha}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta in [0, 1]")
    if beta < 1.0 - alpha:
        r = math.sqrt(1.0 - beta)
        return xi - r * (r - 2.0 * math.sqrt(alpha))
    return xi + alpha


def scaling_constants(alpha, alpha0):
    """Critical-window constants (c1~, c2~) and the centering mu~(tau, T).

    c1~ = (sqrt(a0)-sqrt(a))^{2/3} a0^{1/6} / a^{1/6},
    c2~ = 2 (sqrt(a0)-sqrt(a))^{1/3} a0^{5/6} / a^{1/3},
    mu~(tau, T) = sqrt(a0)(sqrt(a0) - 2 sqrt(a)) T
                  - 2 tau (sqrt(a0)-sqrt(a))^{4/3} a0^{1/3} a^{-1/3} T^{2/3}.
    """
    if not (0.0 < alpha < alpha0 <= 1.0):
        raise ValueError("need 0 < alpha < alpha0 <= 1")
    ra, r0 = math.sqrt(alpha), math.sqrt(alpha0)
    d = r0 - ra
    c1 = d ** (2.0 / 3.0) * alpha0 ** (1.0 / 6.0) / alpha ** (1.0 / 6.0)
    c2 = 2.0 * d ** (1.0 / 3.0) * alpha0 ** (5.0 / 6.0) / alpha ** (1.0 / 3.0)
    slope = (2.0 * d ** (4.0 / 3.0) * alpha0 ** (1.0 / 3.0)
             / alpha ** (1.0 / 3.0))

    def mu(tau, T):
        return r0 * (r0 - 2.0 * ra) * T - slope * tau * T ** (2.0 / 3.0)

    return c1, c2, mu


def extract_gT(wall, alpha, alpha0, xi, T, M=0.0, eps=0.1):
    """Invert the critical-window form of the wall into g_T.

    With the window parameterization T - t = (1-alpha0) T + c2~ tau T^{2/3},
    solves f(T-t) = xi T - mu~(tau, T) - c1~ (tau^2 - g_T(tau)) T^{1/3} for
    g_T pointwise.  Returns (g, report); the report states whether
    g_T(tau) >= -M + tau^2/2 held on |tau| <= eps c2~^{-1} T^{1/3}
    (diagnostics only, nothing is enforced).
    """
    c1, c2, mu = scaling_constants(alpha, alpha0)

    def g(tau):
        u = (1.0 - alpha0) * T + c2 * tau * T ** (2.0 / 3.0)
        if u < 0:
            raise ValueError(f"tau={tau} points beyond the horizon")
        fval = wall.value(u)
        return tau * tau + (fval - xi * T + mu(tau, T)) / (
            c1 * T ** (1.0 / 3.0))

    tmax = eps * T ** (1.0 / 3.0) / c2
    lo_ok = True
    worst = np.inf
    for tau in np.linspace(-tmax, tmax, 129):
        u = (1.0 - alpha0) * T + c2 * tau * T ** (2.0 / 3.0)
        if u < 0 or u > T:
            continue
        margin = g(tau) - (-M + tau * tau / 2.0)
        worst = min(worst, margin)
        if margin < -1e-9:
            lo_ok = False
    report = {"bound_holds": lo_ok, "worst_margin": float(worst),
              "tau_window": float(tmax), "M": float(M), "eps": float(eps)}
    return g, report


def classify_linear(v, c, alpha):
    """Classify a linear wall f(t) = c T + v t by its limit fluctuation law.

    Returns a dict with the case label ('a', 'b', 'c' or 'shock-excluded'),
    the macroscopic position xi, the scale constant c1~, and the reference
    law ('F1', 'F2->1;0', 'F2').
    """
    if not 0.0 <= v < 1.0:
        raise ValueError("need 0 <= v < 1")
    if c < 0:
        raise ValueError("need c >= 0")
    if not 0.0 < alpha < 1.0:
        raise ValueError("need alpha in (0, 1)")
    boundary = (1.0 - v - math.sqrt(c * (1.0 - v))) ** 2
    if c == 0.0 and alpha == (1.0 - v) ** 2:
        return {"case": "b", "xi": 1.0 - 2.0 * math.sqrt(alpha),
                "c1": v ** (2.0 / 3.0) / (1.0 - v) ** (1.0 / 3.0),
                "law": "F2->1;0"}
    if c < 1.0 - v and alpha < boundary:
        return {"case": "a", "xi": v + c - alpha / (1.0 - v),
                "c1": alpha ** (1.0 / 3.0) * v ** (2.0 / 3.0) / (1.0 - v),
                "law": "F1"}
    if alpha > boundary:
        return {"case": "c", "xi": 1.0 - 2.0 * math.sqrt(alpha),
                "c1": v ** (2.0 / 3.0) / (1.0 - v) ** (1.0 / 3.0),
                "law": "F2"}
    return {"case": "shock-excluded", "xi": None, "c1": None, "law": None}


def wall_from_csv(path, allow_positive_start=False):
    """Tabulated wall from a CSV of (t, value) rows, strictly validated."""
    points = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            points.append((float(row[0]), float(row[1])))
    return WallProfile.tabulated_profile(
        points, allow_positive_start=allow_positive_start)


def wall_clock_window(config, wall, T, t0=0.0):
    """Clock window sized for a wall run (wall reach adds to the right)."""
    extra = int(math.ceil(wall.max_value(T))) + EDGE_GUARD
    return clock_window_for(config, t0, T, extra_right=extra)
