"""Empirical-distribution machinery and rescaling transforms.

Turns raw simulation output into testable comparisons: ECDFs with
Kolmogorov-Smirnov distances and DKW bands, the critical-window affine
rescaling of tagged positions, the atom-plus-uniform mixture test for the
second-class particle, and the modulus of continuity of rescaled paths.
"""

import math

import numpy as np
import scipy.stats
from scipy.special import kolmogorov

from .wall import scaling_constants

__all__ = [
    "EmpiricalDistribution",
    "rescale_tagged",
    "ks_distance",
    "ks_pvalue",
    "dkw_band",
    "mixture_test",
    "modulus_of_continuity",
]


class EmpiricalDistribution:
    """Sorted-sample ECDF; merging two instances is associative."""

    def __init__(self, samples):
        arr = np.sort(np.asarray(samples, dtype=np.float64))
        if arr.size == 0:
            raise ValueError("need at least one sample")
        self.samples = arr

    @property
    def n(self):
        return len(self.samples)

    def cdf(self, x):
        return np.searchsorted(self.samples, x, side="right") / self.n

    def cdf_left(self, x):
        """Left limit of the ECDF (for step-function references)."""
        return np.searchsorted(self.samples, x, side="left") / self.n

    def merge(self, other):
        return EmpiricalDistribution(
            np.concatenate((self.samples, other.samples)))

    def mean(self):
        return float(self.samples.mean())

    def var(self):
        return float(self.samples.var())


def rescale_tagged(position, tau, alpha, alpha0, T):
    """Critical-window rescaling of a tagged position.

    X~ = (position - mu~(tau, T)) / (-c1~ T^{1/3}); the negative denominator
    flips orientation, so the transform is strictly decreasing in position.
    """
    c1, _c2, mu = scaling_constants(alpha, alpha0)
    return (np.asarray(position, dtype=np.float64) - mu(tau, T)) / (
        -c1 * T ** (1.0 / 3.0))


def ks_distance(ecdf, cdf, left_cdf=None):
    """Sup-norm distance between an ECDF and a reference CDF callable.

    Evaluated at the sample points with both one-sided gaps.  For a
    *discrete* reference, pass ``left_cdf`` returning F(x-) (e.g. the pmf
    shifted by one lattice step); comparing the lower gap against F(x)
    itself would inflate the distance by the largest atom.
    """
    xs = ecdf.samples
    n = ecdf.n
    F = np.asarray([cdf(float(x)) for x in xs])
    Fm = F if left_cdf is None else np.asarray(
        [left_cdf(float(x)) for x in xs])
    up = np.arange(1, n + 1) / n - F
    dn = Fm - np.arange(0, n) / n
    return float(max(up.max(), dn.max(), 0.0))


def ks_pvalue(d, n):
    """Asymptotic Kolmogorov p-value for an n-sample KS distance d."""
    return float(kolmogorov(math.sqrt(n) * d))


def dkw_band(n, delta):
    """Dvoretzky-Kiefer-Wolfowitz band sqrt(ln(2/delta) / (2n))."""
    if n < 1 or not 0.0 < delta < 1.0:
        raise ValueError("need n >= 1 and delta in (0, 1)")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * n))


def mixture_test(samples, law, edge_window=0.05, bins=10):
    """Atom mass estimate and uniform-part chi-square for f(T)/T samples.

    The atom estimate counts samples within +-edge_window of the atom
    location and subtracts the uniform mass expected to leak into that
    window, so on the exact mixture it is unbiased for the atom mass.  The
    uniform part is tested by a chi-square on equal-width bins of the
    support, excluding the edge window around the atom.
    """
    xs = np.asarray(samples, dtype=np.float64)
    n = len(xs)
    a, b = law.support
    atom_x = law.atom_location
    in_window = np.abs(xs - atom_x) <= edge_window
    raw = float(np.mean(in_window))
    overlap = max(0.0, min(b, atom_x + edge_window)
                  - max(a, atom_x - edge_window))
    density = law.uniform_mass / (b - a)
    atom_est = raw - overlap * density
    lo, hi = a, min(b, atom_x - edge_window) if law.atom_mass > 0 else b
    body = xs[(xs >= lo) & (xs < hi)]
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(body, bins=edges)
    expected = np.full(bins, len(body) / bins)
    if expected.min() < 5:
        raise ValueError("bins too fine: expected count below 5; widen bins")
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    pval = float(scipy.stats.chi2.sf(chi2, bins - 1))
    total_mass = atom_est + (hi - lo) * density \
        + overlap * density
    return {
        "atom_estimate": float(atom_est),
        "atom_raw_window_fraction": raw,
        "chi2": chi2,
        "chi2_pvalue": pval,
        "uniform_samples": int(len(body)),
        "edge_window": float(edge_window),
        "total_mass_estimate": float(total_mass),
        "n": int(n),
    }


def modulus_of_continuity(taus, values, delta):
    """Max |X(tau_i) - X(tau_j)| over grid pairs with |tau_i - tau_j| <= delta.

    ``values`` may be a vector (one path) or a matrix (paths in rows);
    returns a scalar or per-path vector accordingly.
    """
    taus = np.asarray(taus, dtype=np.float64)
    vals = np.atleast_2d(np.asarray(values, dtype=np.float64))
    if vals.shape[1] != len(taus):
        raise ValueError("values must align with the tau grid")
    gaps = np.diff(taus)
    if len(taus) > 1 and gaps.max() > delta + 1e-12:
        raise ValueError("grid spacing exceeds delta")
    out = np.zeros(vals.shape[0])
    for i in range(len(taus)):
        js = np.nonzero(np.abs(taus - taus[i]) <= delta + 1e-12)[0]
        diffs = np.abs(vals[:, js] - vals[:, i:i + 1]).max(axis=1)
        out = np.maximum(out, diffs)
    return out if out.size > 1 else float(out[0])
