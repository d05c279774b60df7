"""SVG scatter plots and histograms of scan columns.

Plain text output with no plotting dependency.  Scatter points are drawn as
one path of short strokes so that files for large scans stay manageable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .scan import ScanRow

PLOT_COLUMNS = ("c1", "c2", "uli", "lli")

WIDTH, HEIGHT = 900, 560
LEFT, RIGHT, TOP, BOTTOM = 80, 30, 40, 60


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    column: str
    qmin: int = 3
    qmax: int = 10**7
    bins: int = 100
    reference_lines: Sequence[tuple[float, str]] = field(default_factory=tuple)
    output_path: Path | None = None
    log_x: bool = False

    def __post_init__(self):
        if self.kind not in ("scatter", "histogram"):
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if self.column not in PLOT_COLUMNS:
            raise ValueError(f"unknown column {self.column!r}; choose from {PLOT_COLUMNS}")
        if self.bins < 1:
            raise ValueError("bins must be >= 1")
        if self.qmax < self.qmin:
            raise ValueError("empty q range")


@dataclass(frozen=True)
class ColumnStats:
    count: int
    mean: float
    std: float
    lo: float
    hi: float


def column_values(rows: Sequence[ScanRow], spec: PlotSpec) -> tuple[np.ndarray, np.ndarray]:
    qs, vals = [], []
    for r in rows:
        v = getattr(r, spec.column)
        if v is None or not spec.qmin <= r.q <= spec.qmax:
            continue
        qs.append(r.q)
        vals.append(v)
    return np.asarray(qs, dtype=np.float64), np.asarray(vals, dtype=np.float64)


def column_stats(values: np.ndarray) -> ColumnStats:
    # sample standard deviation, as pandas reports it
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return ColumnStats(int(values.size), float(np.mean(values)), std,
                       float(values.min()), float(values.max()))


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _frame(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<rect x="{LEFT}" y="{TOP}" width="{WIDTH - LEFT - RIGHT}" height="{HEIGHT - TOP - BOTTOM}" '
        'fill="none" stroke="black"/>',
    ]


class _Axes:
    def __init__(self, x0, x1, y0, y1, log_x=False):
        self.log_x = log_x
        if log_x:
            x0, x1 = math.log10(x0), math.log10(x1)
        if x1 == x0:
            x0, x1 = x0 - 0.5, x1 + 0.5
        if y1 == y0:
            y0, y1 = y0 - 0.5, y1 + 0.5
        pad = 0.04 * (y1 - y0)
        self.x0, self.x1, self.y0, self.y1 = x0, x1, y0 - pad, y1 + pad

    def px(self, x):
        if self.log_x:
            x = np.log10(x)
        return LEFT + (np.asarray(x) - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)

    def py(self, y):
        return HEIGHT - BOTTOM - (np.asarray(y) - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)

    def ticks(self, xlabel, ylabel) -> list[str]:
        out = []
        for i in range(6):
            fx = self.x0 + (self.x1 - self.x0) * i / 5
            label = f"{10**fx:.3g}" if self.log_x else f"{fx:.4g}"
            x = LEFT + (WIDTH - LEFT - RIGHT) * i / 5
            out.append(f'<text x="{_fmt(x)}" y="{HEIGHT - BOTTOM + 18}" text-anchor="middle">{label}</text>')
            fy = self.y0 + (self.y1 - self.y0) * i / 5
            y = HEIGHT - BOTTOM - (HEIGHT - TOP - BOTTOM) * i / 5
            out.append(f'<text x="{LEFT - 6}" y="{_fmt(y + 4)}" text-anchor="end">{fy:.4g}</text>')
        out.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
        out.append(f'<text x="18" y="{HEIGHT / 2}" text-anchor="middle" '
                   f'transform="rotate(-90 18 {HEIGHT / 2})">{escape(ylabel)}</text>')
        return out

    def hline(self, y, color, label=None, dashed=False) -> list[str]:
        py = float(self.py(y))
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        out = [f'<line x1="{LEFT}" y1="{_fmt(py)}" x2="{WIDTH - RIGHT}" y2="{_fmt(py)}" '
               f'stroke="{color}"{dash}/>']
        if label:
            out.append(f'<text x="{WIDTH - RIGHT - 4}" y="{_fmt(py - 4)}" text-anchor="end" '
                       f'fill="{color}">{escape(label)}</text>')
        return out

    def vline(self, x, color, dashed=False) -> str:
        px = float(self.px(x))
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        return f'<line x1="{_fmt(px)}" y1="{TOP}" x2="{_fmt(px)}" y2="{HEIGHT - BOTTOM}" stroke="{color}"{dash}/>'


_REF_COLORS = ("black", "red", "goldenrod", "green", "purple")


def scatter_svg(rows: Sequence[ScanRow], spec: PlotSpec) -> str:
    qs, vals = column_values(rows, spec)
    if vals.size == 0:
        raise ValueError(f"no {spec.column} values in [{spec.qmin}, {spec.qmax}] to plot")
    st = column_stats(vals)
    lo = min([st.lo] + [v for v, _ in spec.reference_lines])
    hi = max([st.hi] + [v for v, _ in spec.reference_lines])
    ax = _Axes(float(qs.min()), float(qs.max()), lo, hi, spec.log_x)
    out = _frame(f"{spec.column}(q), {st.count} primes in [{spec.qmin}, {spec.qmax}]")
    out += ax.ticks("q", spec.column)
    xs, ys = ax.px(qs), ax.py(vals)
    path = " ".join(f"M{x:.1f} {y:.1f}h0.8" for x, y in zip(xs, ys))
    out.append(f'<path d="{path}" stroke="steelblue" stroke-width="1.6" fill="none"/>')
    for i, (v, label) in enumerate(spec.reference_lines):
        out += ax.hline(v, _REF_COLORS[i % len(_REF_COLORS)], label)
    out += ax.hline(st.mean, "red", f"mean = {st.mean:.10f}", dashed=True)
    imin, imax = int(np.argmin(vals)), int(np.argmax(vals))
    out.append(f'<text x="{LEFT + 8}" y="{TOP + 16}">min {vals[imin]:.10f} at q={int(qs[imin])}; '
               f'max {vals[imax]:.10f} at q={int(qs[imax])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def histogram_svg(rows: Sequence[ScanRow], spec: PlotSpec) -> str:
    qs, vals = column_values(rows, spec)
    if vals.size == 0:
        raise ValueError(f"no {spec.column} values in [{spec.qmin}, {spec.qmax}] to plot")
    st = column_stats(vals)
    counts, edges = np.histogram(vals, bins=spec.bins, range=(st.lo, st.hi) if st.hi > st.lo else None)
    width = float(edges[1] - edges[0])
    ax = _Axes(float(edges[0]), float(edges[-1]), 0.0, float(counts.max()))
    out = _frame(f"histogram of {spec.column}(q), q in [{spec.qmin}, {spec.qmax}]")
    out += ax.ticks(spec.column, "count")
    base = float(ax.py(0.0))
    for c, e0, e1 in zip(counts, edges[:-1], edges[1:]):
        x0, x1 = float(ax.px(e0)), float(ax.px(e1))
        top = float(ax.py(c))
        out.append(f'<rect x="{_fmt(x0)}" y="{_fmt(top)}" width="{_fmt(max(x1 - x0, 0.5))}" '
                   f'height="{_fmt(base - top)}" fill="steelblue" stroke="white" stroke-width="0.3"/>')
    out.append(ax.vline(st.mean, "red", dashed=True))
    legend = [
        f"interval length I = {width:.10f}",
        f"number of primes P = {st.count}",
        f"mass M = I*P = {width * st.count:.6f}",
        f"mean = {st.mean:.10f}",
        f"standard deviation = {st.std:.10f}",
    ]
    for i, line in enumerate(legend):
        out.append(f'<text x="{WIDTH - RIGHT - 8}" y="{TOP + 18 + 16 * i}" text-anchor="end">{escape(line)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(rows: Sequence[ScanRow], spec: PlotSpec) -> str:
    if spec.kind == "scatter":
        return scatter_svg(rows, spec)
    return histogram_svg(rows, spec)


def write_plot(rows: Sequence[ScanRow], spec: PlotSpec) -> Path:
    """Render and write; nothing is written if rendering fails."""
    if spec.output_path is None:
        raise ValueError("PlotSpec.output_path is required")
    svg = render(rows, spec)
    path = Path(spec.output_path)
    path.write_text(svg, encoding="utf-8")
    return path
