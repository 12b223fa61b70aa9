"""Single-species TASEP state, initial conditions, and forward evolution.

Positions are labeled right to left (``x_k > x_{k+1}``).  Evolution runs on a
:class:`~tasep_wall.clockfield.ClockField` so that coupled processes consume
identical jump trials; the event log keeps every applied jump plus every
suppressed attempt, which is what backwards paths are built from.
"""

import json
import math

import numpy as np

from . import _kernels
from ._bits import KIND_INIT, stream_key, uniform_draw
from .clockfield import ClockField

__all__ = [
    "ParticleConfig",
    "Trajectory",
    "TruncationError",
    "DegenerateSample",
    "init_step",
    "init_bernoulli",
    "evolve",
    "evolve_reference",
    "tagged",
    "clock_window_for",
]

LIGHT_CONE_GUARD = 10.0
EDGE_GUARD = 5


class TruncationError(Exception):
    """A tracked particle got too close to the simulated window's edge."""


class DegenerateSample(Exception):
    """Bernoulli draw with no particle on a required side of the origin."""


class ParticleConfig:
    """Labeled particle positions with the ordering invariant x_k > x_{k+1}.

    ``labels`` is ascending, ``positions`` aligned and strictly decreasing.
    Labels may be negative (stationary labeling puts label 0 at the first
    particle weakly right of the origin).
    """

    def __init__(self, labels, positions):
        labels = np.asarray(labels, dtype=np.int64)
        positions = np.asarray(positions, dtype=np.int64)
        if labels.shape != positions.shape or labels.ndim != 1:
            raise ValueError("labels/positions must be aligned 1-d arrays")
        if labels.size == 0:
            raise ValueError("empty configuration")
        if np.any(np.diff(labels) != 1):
            raise ValueError("labels must be consecutive ascending")
        if np.any(np.diff(positions) >= 0):
            raise ValueError("positions must be strictly decreasing in label")
        self.labels = labels
        self.positions = positions

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return (isinstance(other, ParticleConfig)
                and np.array_equal(self.labels, other.labels)
                and np.array_equal(self.positions, other.positions))

    def position(self, label):
        i = label - self.labels[0]
        if i < 0 or i >= len(self.labels):
            raise KeyError(f"label {label} not tracked")
        return int(self.positions[i])

    def occupied(self):
        return set(int(p) for p in self.positions)

    def __repr__(self):
        return (f"ParticleConfig(labels [{self.labels[0]}..{self.labels[-1]}]"
                f", x_{self.labels[0]}={self.positions[0]})")


def init_step(Z, count):
    """Step initial condition: x_n = -n + Z + 1 for n = 1..count."""
    if count < 1:
        raise ValueError("count must be >= 1")
    labels = np.arange(1, count + 1, dtype=np.int64)
    return ParticleConfig(labels, -labels + Z + 1)


def init_bernoulli(rho, window, seed):
    """Bernoulli(rho) configuration on ``window`` with x_1(0) < 0 <= x_0(0).

    Sites are occupied independently; label 0 is the first particle at a
    non-negative site, labels increase to the left.  Raises
    :class:`DegenerateSample` when either side of the origin is empty
    (resampling would bias couplings, so the caller must pick a new seed).
    """
    if not 0.0 < rho < 1.0:
        raise ValueError("density must lie in (0, 1)")
    L, R = int(window[0]), int(window[1])
    key = stream_key(seed, KIND_INIT, 0)
    occ = [z for z in range(R, L - 1, -1)
           if uniform_draw(key, z - L + 1) < rho]
    positions = np.array(occ, dtype=np.int64)
    if positions.size == 0 or positions[0] < 0 or positions[-1] >= 0:
        raise DegenerateSample(
            f"no particle on one side of the origin (window [{L}, {R}])")
    idx0 = int(np.searchsorted(-positions, 0, side="right")) - 1
    labels = np.arange(len(positions), dtype=np.int64) - idx0
    return ParticleConfig(labels, positions)


class Trajectory:
    """Event history of one evolution run.

    Stores per-label jump times plus the two suppression logs ("suppressed" =
    blocked by the predecessor, "wall-suppressed" = blocked by a wall or
    barrier).  Positions at intermediate times are recovered by counting
    jumps, so replaying the log trivially reproduces the final state.
    """

    def __init__(self, config0, t0, t1, clocks, jump_times, supp,
                 wall_supp, kind):
        self.config0 = config0
        self.t0 = float(t0)
        self.t1 = float(t1)
        self.clocks = clocks
        self._jumps = jump_times        # dict label -> ascending times
        self.kind = kind                # "free" | "right-wall" | "barrier" ...
        st, sl = supp
        order = np.argsort(st, kind="stable")
        self.supp_times = st[order]
        self.supp_labels = sl[order]
        wt, wl = wall_supp
        order = np.argsort(wt, kind="stable")
        self.wall_supp_times = wt[order]
        self.wall_supp_labels = wl[order]

    @property
    def labels(self):
        return self.config0.labels

    def jump_times(self, label):
        return self._jumps[label]

    def tagged(self, label, t):
        """Position of ``label`` at time ``t`` (right-continuous)."""
        if t < self.t0 or t > self.t1 + 1e-12:
            raise ValueError(f"time {t} outside [{self.t0}, {self.t1}]")
        jt = self._jumps[label]
        return self.config0.position(label) + int(
            np.searchsorted(jt, t, side="right"))

    def final_position(self, label):
        return self.config0.position(label) + len(self._jumps[label])

    def positions_at(self, t):
        """Positions of every tracked label at time t, label-aligned array."""
        out = np.empty(len(self.labels), dtype=np.int64)
        for i, k in enumerate(self.labels):
            out[i] = self.tagged(int(k), t)
        return out

    def final_config(self):
        pos = np.array([self.final_position(k) for k in self.labels],
                       dtype=np.int64)
        return ParticleConfig(self.labels, pos)

    def events(self):
        """All events merged, ascending in time: (t, site, label, kind)."""
        rows = []
        for k in self.labels:
            x0 = self.config0.position(k)
            for j, t in enumerate(self._jumps[k]):
                rows.append((float(t), x0 + j, int(k), "jump"))
        for t, k in zip(self.supp_times, self.supp_labels):
            rows.append((float(t), self.tagged(int(k), t), int(k),
                         "suppressed"))
        for t, k in zip(self.wall_supp_times, self.wall_supp_labels):
            rows.append((float(t), self.tagged(int(k), t), int(k),
                         "wall-suppressed"))
        rows.sort(key=lambda r: (r[0], r[1]))
        return rows

    def to_jsonl(self, path):
        with open(path, "w") as fh:
            for t, site, label, kind in self.events():
                fh.write(json.dumps(
                    {"t": t, "site": site, "label": label, "kind": kind})
                    + "\n")


def clock_window_for(config, t0, t1, extra_right=0, margin=8):
    """Site window guaranteed to contain the dynamics of ``config``.

    Right edge: highest start + horizon + 10*sqrt(horizon) light-cone guard
    (+ ``extra_right`` for wall excursions); left edge: a small pad below the
    lowest start, since followers never influence tracked labels.
    """
    h = t1 - t0
    lo = int(config.positions[-1]) - margin
    hi = int(config.positions[0]) + int(
        math.ceil(h + LIGHT_CONE_GUARD * math.sqrt(max(h, 1.0)))) + margin
    return lo, hi + max(0, int(extra_right))


def _flat_staircase():
    return (np.array([-1.0, np.inf]), np.array([0], dtype=np.int64))


def _run_site_sweep(config, clocks, t0, t1, mode, thr):
    n = len(config)
    L, R = clocks.window
    horizon = t1 - t0
    blen = _kernels.label_buffer_len(horizon)
    jcap = n * blen
    jt = np.empty(jcap, np.float64)
    st = np.empty(jcap, np.float64)
    wt = np.empty(jcap, np.float64)
    jt_off = np.empty(n + 1, np.int64)
    st_off = np.empty(n + 1, np.int64)
    wt_off = np.empty(n + 1, np.int64)
    breaks, vals = thr if thr is not None else _flat_staircase()
    seed = clocks.seed
    status, lo, hi = _kernels.site_sweep_logged(
        seed, config.positions, float(t0), float(t1), L, R, mode,
        np.asarray(breaks, dtype=np.float64),
        np.asarray(vals, dtype=np.int64),
        jt, jt_off, st, st_off, wt, wt_off)
    if status == _kernels.ERR_WINDOW:
        raise TruncationError(
            f"particle left clock window [{L}, {R}] (touched [{lo}, {hi}])")
    if status != _kernels.OK:
        raise RuntimeError(f"kernel failure (status {status})")
    if lo < L + EDGE_GUARD or hi > R - EDGE_GUARD:
        raise TruncationError(
            f"guard band hit: touched [{lo}, {hi}] in window [{L}, {R}]")
    jumps = {}
    sup_t, sup_l, w_t, w_l = [], [], [], []
    for i, lab in enumerate(config.labels):
        jumps[int(lab)] = jt[jt_off[i]:jt_off[i + 1]].copy()
        for arrs, (flat, off) in (((sup_t, sup_l), (st, st_off)),
                                  ((w_t, w_l), (wt, wt_off))):
            seg = flat[off[i]:off[i + 1]]
            arrs[0].append(seg.copy())
            arrs[1].append(np.full(len(seg), lab, dtype=np.int64))
    supp = (np.concatenate(sup_t) if sup_t else np.empty(0),
            np.concatenate(sup_l) if sup_l else np.empty(0, np.int64))
    wsupp = (np.concatenate(w_t) if w_t else np.empty(0),
             np.concatenate(w_l) if w_l else np.empty(0, np.int64))
    return jumps, supp, wsupp


def evolve(config, clocks, t0, t1, _mode=0, _thr=None, _kind="free"):
    """Evolve ``config`` on shared site clocks over [t0, t1].

    At each clock event at an occupied site z the particle jumps to z+1 when
    empty; otherwise the attempt is logged as suppressed.  Raises
    :class:`TruncationError` if any tracked particle approaches the clock
    window's guard band (information would have leaked past the truncation).
    """
    if t1 < t0 or t0 < 0:
        raise ValueError("need 0 <= t0 <= t1")
    jumps, supp, wsupp = _run_site_sweep(config, clocks, t0, t1, _mode, _thr)
    return Trajectory(config, t0, t1, clocks, jumps, supp, wsupp, _kind)


def evolve_reference(config, clocks, t0, t1, wall_thr=None, barrier_thr=None):
    """Literal merged-event graphical construction (slow reference path).

    Processes every clock event of the window in (time, site) order.  Used to
    cross-validate the label-sequential kernel; semantics of record for tie
    handling.  ``wall_thr``/``barrier_thr`` are staircases (breaks, vals):
    wall suppresses particle 1's jump from z iff z >= thr(t); the barrier
    suppresses any jump from z iff z <= thr(t).
    """
    pos = {int(k): int(p)
           for k, p in zip(config.labels, config.positions)}
    site_of = {p: k for k, p in pos.items()}
    first = int(config.labels[0])
    times, sites = clocks.merged_events(clocks.window, t0, t1)
    jumps = {int(k): [] for k in config.labels}
    sup_t, sup_l, w_t, w_l = [], [], [], []

    def thr_at(stair, t):
        breaks, vals = stair
        i = int(np.searchsorted(breaks, t, side="left")) - 1
        i = min(max(i, 0), len(vals) - 1)
        return vals[i]

    for t, z in zip(times, sites):
        k = site_of.get(int(z))
        if k is None:
            continue
        if z + 1 in site_of:
            sup_t.append(t)
            sup_l.append(k)
            continue
        if wall_thr is not None and k == first and z >= thr_at(wall_thr, t):
            w_t.append(t)
            w_l.append(k)
            continue
        if barrier_thr is not None and z <= thr_at(barrier_thr, t):
            w_t.append(t)
            w_l.append(k)
            continue
        del site_of[int(z)]
        site_of[int(z) + 1] = k
        pos[k] = int(z) + 1
        jumps[k].append(float(t))
    jumps = {k: np.array(v) for k, v in jumps.items()}
    supp = (np.array(sup_t), np.array(sup_l, dtype=np.int64))
    wsupp = (np.array(w_t), np.array(w_l, dtype=np.int64))
    return Trajectory(config, t0, t1, clocks, jumps, supp, wsupp,
                      "reference")


def tagged(traj, n, t):
    """Position of label ``n`` at time ``t`` in a trajectory."""
    return traj.tagged(n, t)
