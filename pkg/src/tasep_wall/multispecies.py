"""Colored (multi-species) TASEP on a window: totally asymmetric swaps,
permutation inversion, wall-constrained colored dynamics, projections, and
second-class particle tracking.

Colors live on a finite site window; the identity coloring (color == site)
stands in for the identity bijection on Z, with guard assertions keeping
boundary effects away from tracked colors.  The swap at (z, z+1) applies iff
color(z) < color(z+1); a wall suppresses swaps whose origin site is at or
beyond the integer effective wall (the variant blocking on the target site
instead is available for sensitivity checks; the two differ only when the
wall sits exactly on an integer).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._bits import split_seed
from .core import TruncationError

__all__ = [
    "HOLE",
    "ColoredConfig",
    "ColoredTrajectory",
    "swap_W",
    "apply_sequence",
    "invert",
    "evolve_colored",
    "project",
    "second_class_track",
    "secondclass_limit_law",
    "sample_second_class_final",
    "MixtureLaw",
]

HOLE = np.int64(2 ** 62)  # compares greater than every real color

ACTION_NAMES = {0: "swap", 1: "blocked-order", 2: "wall-suppressed"}


class ColoredConfig:
    """Colors on an inclusive window [a, b]; HOLE marks an empty site."""

    def __init__(self, window, colors, bijective=None):
        a, b = int(window[0]), int(window[1])
        colors = np.asarray(colors, dtype=np.int64)
        if len(colors) != b - a + 1:
            raise ValueError("colors length must match window size")
        self.window = (a, b)
        self.colors = colors
        if bijective is None:
            bijective = (np.all(colors != HOLE)
                         and np.array_equal(np.sort(colors),
                                            np.arange(a, b + 1)))
        self.bijective = bool(bijective)

    @classmethod
    def identity(cls, window):
        a, b = int(window[0]), int(window[1])
        return cls((a, b), np.arange(a, b + 1, dtype=np.int64),
                   bijective=True)

    def color_at(self, z):
        a, b = self.window
        if z < a or z > b:
            raise KeyError(f"site {z} outside window [{a}, {b}]")
        return int(self.colors[z - a])

    def position_of(self, color):
        idx = np.nonzero(self.colors == color)[0]
        if len(idx) != 1:
            raise KeyError(f"color {color} not present exactly once")
        return int(idx[0]) + self.window[0]

    def copy(self):
        return ColoredConfig(self.window, self.colors.copy(),
                             bijective=self.bijective)

    def __eq__(self, other):
        return (isinstance(other, ColoredConfig)
                and self.window == other.window
                and np.array_equal(self.colors, other.colors))

    def __repr__(self):
        a, b = self.window
        return f"ColoredConfig([{a}, {b}], {list(self.colors)})"


def swap_W(config, z):
    """Totally asymmetric swap at (z, z+1): exchange iff color(z) < color(z+1)."""
    a, b = config.window
    if z < a or z + 1 > b:
        raise KeyError(f"bond ({z}, {z + 1}) not interior to [{a}, {b}]")
    out = config.copy()
    i = z - a
    if out.colors[i] < out.colors[i + 1]:
        out.colors[i], out.colors[i + 1] = out.colors[i + 1], out.colors[i]
    return out


def apply_sequence(config, zs, order="forward"):
    """Compose swaps at the given sites in forward or reverse order."""
    if order not in ("forward", "reverse"):
        raise ValueError("order must be 'forward' or 'reverse'")
    a, b = config.window
    zs = np.asarray(zs, dtype=np.int64)
    if zs.size and (zs.min() < a or zs.max() + 1 > b):
        raise KeyError("swap site outside window interior")
    out = config.copy()
    _kernels.apply_swaps_inplace(out.colors, zs - a, order == "reverse")
    return out


def invert(config):
    """Inverse permutation as a configuration: color c at the old position
    of color (site) c."""
    if not config.bijective:
        raise ValueError("inversion needs a bijective window configuration")
    a, b = config.window
    out = np.empty_like(config.colors)
    out[config.colors - a] = np.arange(a, b + 1, dtype=np.int64)
    return ColoredConfig(config.window, out, bijective=True)


class ColoredTrajectory:
    """Event log of a colored run: arrays (t, z, action) plus final state."""

    def __init__(self, config0, final, t0, t1, times, sites, actions,
                 wall_mode):
        self.config0 = config0
        self.final = final
        self.t0 = t0
        self.t1 = t1
        self.times = times
        self.sites = sites
        self.actions = actions
        self.wall_mode = wall_mode

    def events(self):
        for t, z, a in zip(self.times, self.sites, self.actions):
            yield float(t), int(z), ACTION_NAMES[int(a)]

    def to_jsonl(self, path):
        import json
        with open(path, "w") as fh:
            for t, z, a in self.events():
                fh.write(json.dumps({"t": t, "z": z, "action": a}) + "\n")

    def config_at(self, t):
        """Configuration at time t, replayed from the event log."""
        cfg = self.config0.copy()
        a = cfg.window[0]
        for tt, z, act in zip(self.times, self.sites, self.actions):
            if tt > t:
                break
            if act == 0:
                i = int(z) - a
                cfg.colors[i], cfg.colors[i + 1] = (cfg.colors[i + 1],
                                                    cfg.colors[i])
        return cfg


def _wall_threshold_staircase(wall, t0, T, reversed_time, rule):
    """Origin-site suppression threshold thr(t): swap at z blocked iff
    z >= thr(t).  rule 'origin' uses floor(f); rule 'target' uses
    ceil(f) - 1 (the literal reading; differs only at integer wall values).
    """
    if not reversed_time:
        return wall.staircase(t0, T, rule=rule)
    edges_u = wall.pieces(0.0, T - t0)
    edges = [float(t0)] + sorted(
        T - u for u in edges_u if t0 < T - u < T) + [float(T)]
    breaks = np.array(edges)
    vals = np.empty(len(edges) - 1, dtype=np.int64)
    for i in range(len(edges) - 1):
        m = (edges[i] + edges[i + 1]) / 2.0
        fv = wall.value(T - m)
        if rule == "origin":
            vals[i] = int(math.floor(fv))
        else:
            vals[i] = int(math.ceil(fv)) - 1
    breaks[-1] = T + 1.0
    return breaks, vals


def evolve_colored(config, clocks, T, wall=None, wall_mode="none", t0=0.0,
                   rule="origin", guard=None):
    """Evolve a colored window under site clocks up to time T.

    wall_mode: 'none', 'forward' (threshold f(t)) or 'reversed' (f(T - t)).
    Events are processed in global (time, site) order; the returned
    trajectory logs every bond event as swap / blocked-order /
    wall-suppressed.
    """
    if wall_mode not in ("none", "forward", "reversed"):
        raise ValueError("wall_mode must be none|forward|reversed")
    a, b = config.window
    La, Lb = clocks.window
    if a < La or b > Lb:
        raise TruncationError("colored window exceeds clock window")
    horizon = T - t0
    if wall_mode == "none":
        use_thr = False
        breaks = np.array([t0 - 1.0, T + 1.0])
        vals = np.array([0], dtype=np.int64)
    else:
        use_thr = True
        breaks, vals = _wall_threshold_staircase(
            wall, t0, T, wall_mode == "reversed", rule)
    w = b - a + 1
    cap = int((w - 1) * horizon * 1.6 + 10.0 * math.sqrt(
        (w - 1) * max(horizon, 1.0))) + 64
    ev_t = np.empty(cap, np.float64)
    ev_z = np.empty(cap, np.int64)
    ev_a = np.empty(cap, np.int64)
    colors = config.colors.copy()
    status, nev = _kernels.colored_evolve_kernel(
        clocks.seed, colors, a, float(t0), float(T), use_thr, breaks, vals,
        ev_t, ev_z, ev_a)
    if status != _kernels.OK:
        raise RuntimeError(f"colored kernel failure (status {status})")
    final = ColoredConfig(config.window, colors, bijective=config.bijective)
    if guard is not None:
        glo, ghi = guard
        la, lb = config.window
        changed = np.nonzero(final.colors != config.colors)[0]
        if changed.size:
            reach = (la + changed.min(), la + changed.max())
            if reach[0] < glo or reach[1] > ghi:
                raise TruncationError(
                    f"colored dynamics touched {reach}, guard ({glo}, {ghi})")
    return ColoredTrajectory(config.copy(), final, t0, T,
                             ev_t[:nev].copy(), ev_z[:nev].copy(),
                             ev_a[:nev].copy(), wall_mode)


def project(config, s):
    """Occupancy vector: site occupied iff its color <= s."""
    return config.colors <= s


def dual_step_configuration(config, s):
    """Particle-hole involution plus the coordinate flip z -> s + 1 - z.

    Colors > s become the particles of the dual process; reflecting their
    sites through the threshold turns them into a right-moving TASEP whose
    k-th particle starts at s + 1 - (position of the k-th hole).  Applied to
    the identity coloring this yields exactly the step configuration
    x_k(0) = -k + 1, which is the reduction step connecting the reversed
    colored wall process to the frozen-barrier dynamics.  Returns a
    :class:`~tasep_wall.core.ParticleConfig`.
    """
    from .core import ParticleConfig

    a, _b = config.window
    hole_sites = np.nonzero(config.colors > s)[0] + a
    if hole_sites.size == 0:
        raise ValueError("no colors above the threshold")
    positions = np.sort(s + 1 - hole_sites)[::-1]
    labels = np.arange(1, len(positions) + 1, dtype=np.int64)
    return ParticleConfig(labels, positions)


def second_class_track(ctraj, t):
    """Site of the color-0 (second class) particle at time t."""
    cfg0 = ctraj.config0
    n0 = int(np.sum(cfg0.colors == 0))
    if n0 != 1:
        raise ValueError(f"need exactly one color-0 particle, found {n0}")
    return ctraj.config_at(t).position_of(0)


@dataclass
class MixtureLaw:
    """Limit law of f(T)/T: uniform(support) with density 1/2 plus an atom."""
    support: tuple
    uniform_mass: float
    atom_location: float
    atom_mass: float

    def cdf(self, x):
        a, b = self.support
        u = min(max((x - a) / (b - a), 0.0), 1.0) * self.uniform_mass
        return u + (self.atom_mass if x >= self.atom_location else 0.0)


def secondclass_limit_law(v, c):
    """Asymptotic law of the second-class particle position over horizon.

    For v + c <= 1: uniform with density 1/2 on (-1, -1+2v+2 sqrt(c(1-v)))
    plus an atom of mass 1 - v - sqrt(c(1-v)) at the right end; for
    v + c >= 1 the wall is immaterial and the law is Unif(-1, 1).
    """
    if not 0.0 <= v < 1.0:
        raise ValueError("need 0 <= v < 1")
    if not c > 0.0:
        raise ValueError("need c > 0")
    if v + c >= 1.0:
        return MixtureLaw((-1.0, 1.0), 1.0, 1.0, 0.0)
    root = math.sqrt(c * (1.0 - v))
    right = -1.0 + 2.0 * v + 2.0 * root
    atom = 1.0 - v - root
    return MixtureLaw((-1.0, right), (right + 1.0) / 2.0, right, atom)


def sample_second_class_final(seed, runs, T, c=None, v=0.0):
    """Final second-class positions f(T) for the wall at c*T + v*t.

    ``c=None`` (or inf) removes the wall (the classical rarefaction-fan
    setup).  Uses the coupled-pair representation on shared site clocks; the
    small-scale colored kernel is its cross-validated reference.
    """
    use_wall = c is not None and math.isfinite(c)
    cT = (c * T) if use_wall else 0.0
    n_first = int(T + 8.0 * math.sqrt(T)) + 48
    out, status = _kernels.batch_second_class(
        seed, runs, float(T), float(cT), float(v), n_first, use_wall)
    if status != _kernels.OK:
        raise TruncationError(
            "second-class run escaped its tracked range; enlarge n_first")
    return out
