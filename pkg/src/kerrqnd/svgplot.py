"""Minimal self-contained SVG line-plot writer.

Just enough for the sweep figures: linear or log10 axes, tick labels,
multiple polyline series with a legend, and dashed horizontal
reference lines.  No external dependencies, no raster output; the
generated markup is plain text and diffs cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
            "#ff7f0e", "#8c564b")

_MARGIN_LEFT = 72
_MARGIN_RIGHT = 16
_MARGIN_TOP = 34
_MARGIN_BOTTOM = 52


@dataclass(frozen=True)
class Series:
    """One plotted curve."""

    label: str
    x: tuple = field(default_factory=tuple)
    y: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class RefLine:
    """Dashed horizontal reference level."""

    value: float
    label: str


def _usable(value: float, log: bool) -> bool:
    return math.isfinite(value) and (not log or value > 0.0)


def _nice_ticks(lo: float, hi: float, target: int = 5):
    """Round tick positions covering [lo, hi] with a 1/2/5 step."""
    if hi <= lo:
        hi = lo + 1.0
    raw_step = (hi - lo) / target
    power = 10.0 ** math.floor(math.log10(raw_step))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * power
        if step >= raw_step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 0.5 * step:
        ticks.append(0.0 if abs(value) < 0.5 * step else value)
        value += step
    return ticks


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def line_plot(series, x_label: str, y_label: str, title: str = "",
              x_log: bool = False, y_log: bool = False, ref_lines=(),
              width: int = 720, height: int = 500) -> str:
    """Renders the series as a standalone SVG document string.

    Args:
        series: Iterable of :class:`Series`.
        x_label: Horizontal axis caption.
        y_label: Vertical axis caption.
        title: Optional plot title.
        x_log: Use a log10 horizontal axis.
        y_log: Use a log10 vertical axis.
        ref_lines: Iterable of :class:`RefLine` levels.
        width: Canvas width in pixels.
        height: Canvas height in pixels.
    """
    series = list(series)
    ref_lines = list(ref_lines)

    xs = [float(v) for s in series for v in s.x if _usable(float(v), x_log)]
    ys = [float(v) for s in series for v in s.y if _usable(float(v), y_log)]
    ys += [r.value for r in ref_lines if _usable(r.value, y_log)]
    if not xs or not ys:
        raise ValueError("nothing to plot: no finite data points")

    def tx(value):
        return math.log10(value) if x_log else value

    def ty(value):
        return math.log10(value) if y_log else value

    x_lo, x_hi = min(map(tx, xs)), max(map(tx, xs))
    y_lo, y_hi = min(map(ty, ys)), max(map(ty, ys))
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad_y = 0.05 * (y_hi - y_lo)
    y_lo -= pad_y
    y_hi += pad_y

    plot_w = width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = height - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(value):
        return _MARGIN_LEFT + plot_w * (tx(value) - x_lo) / (x_hi - x_lo)

    def py(value):
        return _MARGIN_TOP + plot_h * (y_hi - ty(value)) / (y_hi - y_lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="#333" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{title}</text>')

    if x_log:
        x_ticks = [(10.0 ** k, f"1e{k}") for k in
                   range(math.ceil(x_lo), math.floor(x_hi) + 1)]
    else:
        x_ticks = [(v, _fmt(v)) for v in _nice_ticks(x_lo, x_hi)]
    if y_log:
        y_ticks = [(10.0 ** k, f"1e{k}") for k in
                   range(math.ceil(y_lo), math.floor(y_hi) + 1)]
    else:
        y_ticks = [(v, _fmt(v)) for v in _nice_ticks(y_lo, y_hi)]

    bottom = _MARGIN_TOP + plot_h
    for value, text in x_ticks:
        x = px(value)
        out.append(f'<line x1="{x:.2f}" y1="{_MARGIN_TOP}" x2="{x:.2f}" '
                   f'y2="{bottom}" stroke="#ddd" stroke-width="1"/>')
        out.append(f'<line x1="{x:.2f}" y1="{bottom}" x2="{x:.2f}" '
                   f'y2="{bottom + 5}" stroke="#333" stroke-width="1"/>')
        out.append(f'<text x="{x:.2f}" y="{bottom + 18}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{text}</text>')
    for value, text in y_ticks:
        y = py(value)
        out.append(f'<line x1="{_MARGIN_LEFT}" y1="{y:.2f}" '
                   f'x2="{_MARGIN_LEFT + plot_w}" y2="{y:.2f}" '
                   f'stroke="#ddd" stroke-width="1"/>')
        out.append(f'<line x1="{_MARGIN_LEFT - 5}" y1="{y:.2f}" '
                   f'x2="{_MARGIN_LEFT}" y2="{y:.2f}" '
                   f'stroke="#333" stroke-width="1"/>')
        out.append(f'<text x="{_MARGIN_LEFT - 8}" y="{y + 4:.2f}" '
                   f'text-anchor="end" font-family="sans-serif" '
                   f'font-size="11">{text}</text>')

    out.append(f'<text x="{_MARGIN_LEFT + plot_w / 2:.1f}" '
               f'y="{height - 12}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="12">{x_label}</text>')
    out.append(f'<text x="16" y="{_MARGIN_TOP + plot_h / 2:.1f}" '
               f'text-anchor="middle" font-family="sans-serif" '
               f'font-size="12" transform="rotate(-90 16 '
               f'{_MARGIN_TOP + plot_h / 2:.1f})">{y_label}</text>')

    for ref in ref_lines:
        if not _usable(ref.value, y_log):
            continue
        y = py(ref.value)
        out.append(f'<line x1="{_MARGIN_LEFT}" y1="{y:.2f}" '
                   f'x2="{_MARGIN_LEFT + plot_w}" y2="{y:.2f}" '
                   f'stroke="#777" stroke-width="1" stroke-dasharray="6 4"/>')
        out.append(f'<text x="{_MARGIN_LEFT + 6}" y="{y - 4:.2f}" '
                   f'font-family="sans-serif" font-size="10" '
                   f'fill="#555">{ref.label}</text>')

    for index, s in enumerate(series):
        color = _PALETTE[index % len(_PALETTE)]
        segment = []
        segments = []
        for x_val, y_val in zip(s.x, s.y):
            x_val, y_val = float(x_val), float(y_val)
            if _usable(x_val, x_log) and _usable(y_val, y_log):
                segment.append(f"{px(x_val):.2f},{py(y_val):.2f}")
            elif segment:
                segments.append(segment)
                segment = []
        if segment:
            segments.append(segment)
        for points in segments:
            if len(points) < 2:
                continue
            out.append(f'<polyline fill="none" stroke="{color}" '
                       f'stroke-width="1.5" points="{" ".join(points)}"/>')

    legend_x = _MARGIN_LEFT + plot_w - 150
    legend_y = _MARGIN_TOP + 10
    for index, s in enumerate(series):
        color = _PALETTE[index % len(_PALETTE)]
        y = legend_y + 16 * index
        out.append(f'<line x1="{legend_x}" y1="{y}" x2="{legend_x + 22}" '
                   f'y2="{y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{legend_x + 28}" y="{y + 4}" '
                   f'font-family="sans-serif" font-size="11">{s.label}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
