"""Minimal deterministic SVG plotting (no plotting dependency, no
timestamps): ECDF overlays with reference curves and confidence bands, and
histograms with mixture-law overlays."""

import numpy as np

__all__ = ["ecdf_overlay_svg", "histogram_mixture_svg"]

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 60, 16, 18, 44


def _fmt(x):
    return f"{x:.2f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, xlim, ylim, title):
        self.xlim = xlim
        self.ylim = ylim
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" '
            f'height="{_H}" viewBox="0 0 {_W} {_H}">',
            f'<rect width="{_W}" height="{_H}" fill="white"/>',
            f'<text x="{_W // 2}" y="14" text-anchor="middle" '
            f'font-size="13" font-family="sans-serif">{title}</text>',
        ]
        self._axes()

    def px(self, x):
        a, b = self.xlim
        return _ML + (x - a) / (b - a) * (_W - _ML - _MR)

    def py(self, y):
        a, b = self.ylim
        return _H - _MB - (y - a) / (b - a) * (_H - _MT - _MB)

    def _axes(self):
        p = self.parts
        p.append(f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
                 f'height="{_H - _MT - _MB}" fill="none" stroke="#888"/>')
        for i in range(5):
            x = self.xlim[0] + i * (self.xlim[1] - self.xlim[0]) / 4
            y = self.ylim[0] + i * (self.ylim[1] - self.ylim[0]) / 4
            p.append(f'<text x="{self.px(x):.1f}" y="{_H - _MB + 16}" '
                     f'text-anchor="middle" font-size="11" '
                     f'font-family="sans-serif">{_fmt(x)}</text>')
            p.append(f'<text x="{_ML - 6}" y="{self.py(y) + 4:.1f}" '
                     f'text-anchor="end" font-size="11" '
                     f'font-family="sans-serif">{_fmt(y)}</text>')

    def polyline(self, xs, ys, color, width=1.5, dash=None):
        pts = " ".join(f"{self.px(x):.2f},{self.py(y):.2f}"
                       for x, y in zip(xs, ys))
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<polyline points="{pts}" fill="none" '
                          f'stroke="{color}" stroke-width="{width}"{d}/>')

    def bar(self, x0, x1, y, color):
        self.parts.append(
            f'<rect x="{self.px(x0):.2f}" y="{self.py(y):.2f}" '
            f'width="{self.px(x1) - self.px(x0):.2f}" '
            f'height="{self.py(0) - self.py(y):.2f}" fill="{color}" '
            f'stroke="#335" stroke-width="0.4"/>')

    def legend(self, entries):
        y = _MT + 14
        for label, color in entries:
            self.parts.append(f'<line x1="{_ML + 10}" y1="{y - 4}" '
                              f'x2="{_ML + 36}" y2="{y - 4}" '
                              f'stroke="{color}" stroke-width="2"/>')
            self.parts.append(f'<text x="{_ML + 42}" y="{y}" font-size="11" '
                              f'font-family="sans-serif">{label}</text>')
            y += 15

    def save(self, path):
        self.parts.append("</svg>")
        with open(path, "w") as fh:
            fh.write("\n".join(self.parts))


def ecdf_overlay_svg(path, samples, refs, band=None, title="", xlim=None):
    """ECDF step curve with reference CDFs and an optional +-band envelope.

    refs: list of (label, color, callable CDF).
    """
    xs = np.sort(np.asarray(samples, dtype=float))
    n = len(xs)
    if xlim is None:
        xlim = (float(xs[0]) - 0.5, float(xs[-1]) + 0.5)
    cv = _Canvas(xlim, (0.0, 1.0), title)
    grid = np.linspace(xlim[0], xlim[1], 241)
    entries = [("ECDF", "#d62728")]
    for label, color, cdf in refs:
        vals = [cdf(float(g)) for g in grid]
        cv.polyline(grid, vals, color)
        entries.append((label, color))
        if band:
            cv.polyline(grid, np.minimum(1, np.array(vals) + band), color,
                        width=0.8, dash="4,3")
            cv.polyline(grid, np.maximum(0, np.array(vals) - band), color,
                        width=0.8, dash="4,3")
    step_x = np.repeat(xs, 2)
    step_y = np.concatenate(([0.0], np.repeat(np.arange(1, n) / n, 2),
                             [1.0]))
    cv.polyline(step_x, step_y, "#d62728", width=1.2)
    cv.legend(entries)
    cv.save(path)


def histogram_mixture_svg(path, samples, law=None, bins=60, title=""):
    """Density histogram with the mixture law's uniform density overlaid."""
    xs = np.asarray(samples, dtype=float)
    lo, hi = float(xs.min()) - 0.02, float(xs.max()) + 0.02
    counts, edges = np.histogram(xs, bins=bins, range=(lo, hi))
    dens = counts / (len(xs) * (edges[1] - edges[0]))
    cv = _Canvas((lo, hi), (0.0, float(dens.max()) * 1.08 + 1e-9), title)
    for c, e0, e1 in zip(dens, edges[:-1], edges[1:]):
        cv.bar(e0, e1, float(c), "#9ecae1")
    if law is not None:
        a, b = law.support
        density = law.uniform_mass / (b - a)
        cv.polyline([a, b], [density, density], "#2ca02c", width=2)
        if law.atom_mass > 0:
            cv.polyline([law.atom_location, law.atom_location],
                        [0, cv.ylim[1] * 0.95], "#d62728", width=2,
                        dash="5,3")
    cv.save(path)
