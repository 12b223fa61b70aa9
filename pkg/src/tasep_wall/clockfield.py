"""Per-site Poisson event streams: the graphical construction's randomness.

A :class:`ClockField` assigns every lattice site an independent rate-1
Poisson stream of event times, generated lazily from a counter-based hash of
``(seed, site, event index)``.  Replaying any site at any time reproduces the
same events bit-for-bit, which is what lets several coupled processes consume
the *same* jump trials.
"""

import math

import numpy as np

from ._bits import KIND_SITE, exp_gap, stream_key

__all__ = ["ClockField", "WindowViolation"]


class WindowViolation(Exception):
    """A site outside the field's window was queried (truncation bug)."""


class ClockField:
    """Reproducible per-site rate-1 Poisson event streams on a site window.

    Parameters
    ----------
    seed : int
        Master seed; distinct seeds give statistically independent fields.
    window : (int, int)
        Inclusive site interval ``[L, R]`` covered by the field.

    Read-only after construction (the per-site cache only ever grows and is
    value-deterministic), so instances are safe to share across replicas.
    """

    def __init__(self, seed, window):
        L, R = int(window[0]), int(window[1])
        if L > R:
            raise ValueError(f"empty window [{L}, {R}]")
        self.seed = int(seed)
        self.window = (L, R)
        self._cache = {}

    def __repr__(self):
        return f"ClockField(seed={self.seed}, window={self.window})"

    def site_key(self, site):
        return stream_key(self.seed, KIND_SITE, int(site))

    def _check(self, site):
        L, R = self.window
        if site < L or site > R:
            raise WindowViolation(
                f"site {site} outside clock window [{L}, {R}]")

    def _times_until(self, site, t1):
        """Cached event times of ``site``, extended to cover (0, t1]."""
        self._check(site)
        arr = self._cache.get(site)
        if arr is not None and arr[-1][-1] > t1:
            return arr
        key = self.site_key(site)
        if arr is None:
            chunks, t, i = [], 0.0, 0
        else:
            chunks = arr
            t, i = chunks[-1][-1], sum(len(c) for c in chunks)
        # grow in chunks; strictly increasing by construction (gaps > 0)
        while t <= t1:
            n = max(64, int((t1 - t) * 1.5) + 16)
            gaps = np.array([exp_gap(key, i + k + 1) for k in range(n)])
            times = t + np.cumsum(gaps)
            chunks.append(times)
            t = times[-1]
            i += n
        self._cache[site] = chunks
        return chunks

    def events_in(self, site, t0, t1):
        """Event times of ``site`` in ``(t0, t1]``, strictly ascending.

        Deterministic: calling twice (or regenerating the field from the same
        seed) returns identical arrays.
        """
        if t0 < 0 or t1 < t0:
            raise ValueError(f"bad time interval ({t0}, {t1}]")
        if t1 == t0:
            return np.empty(0, dtype=np.float64)
        chunks = self._times_until(site, t1)
        times = np.concatenate(chunks) if len(chunks) > 1 else chunks[0]
        lo = np.searchsorted(times, t0, side="right")
        hi = np.searchsorted(times, t1, side="right")
        return times[lo:hi].copy()

    def merged_events(self, sites, t0, t1):
        """All events of ``sites = (a, b)`` in ``(t0, t1]`` as ``(times, sites)``.

        Globally sorted by time; exact float ties (never seen in practice but
        possible in principle) break by ascending site, giving a deterministic
        total order for replayable couplings.
        """
        a, b = int(sites[0]), int(sites[1])
        if a > b:
            return np.empty(0), np.empty(0, dtype=np.int64)
        per_site = [self.events_in(z, t0, t1) for z in range(a, b + 1)]
        times = np.concatenate(per_site)
        if times.size == 0:
            return times, np.empty(0, dtype=np.int64)
        site_col = np.concatenate(
            [np.full(len(ts), z, dtype=np.int64)
             for z, ts in zip(range(a, b + 1), per_site)])
        order = np.lexsort((site_col, times))
        return times[order], site_col[order]
