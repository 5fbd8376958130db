"""Minimal SVG line charts with zero external dependencies."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

# ERM red, VBR green, HSR blue
COLORS = {"ERM": "#d62728", "VBR": "#2ca02c", "HSR": "#1f77b4"}
_FALLBACK = ["#ff7f0e", "#9467bd", "#8c564b", "#17becf"]

WIDTH, HEIGHT = 720, 480
LEFT, RIGHT, TOP, BOTTOM = 80, 150, 50, 60


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def line_chart(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    x_label: str,
    y_label: str,
    log_y: bool = False,
) -> str:
    """Return SVG text with one ``<polyline>`` per series.

    ``series`` holds ``(label, xs, ys)``. With ``log_y`` the vertical axis is
    log10 and non-positive values are dropped from their polyline.
    """
    if not series:
        raise ValueError("no series to plot")

    def ty(y: float) -> float:
        return math.log10(y) if log_y else y

    pts = [
        (label, [(x, ty(y)) for x, y in zip(xs, ys) if math.isfinite(y) and (y > 0 or not log_y)])
        for label, xs, ys in series
    ]
    all_x = [x for _, p in pts for x, _ in p]
    all_y = [y for _, p in pts for _, y in p]
    if not all_x:
        all_x, all_y = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(all_x), max(all_x)
    y_lo, y_hi = min(all_y), max(all_y)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1, x_hi + 1
    if y_hi == y_lo:
        pad = abs(y_lo) * 0.1 or 1.0
        y_lo, y_hi = y_lo - pad, y_hi + pad
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def px(x: float) -> float:
        return LEFT + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y: float) -> float:
        return TOP + ph - (y - y_lo) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{LEFT + pw / 2:.1f}" y="28" text-anchor="middle" font-size="16" font-family="sans-serif">{escape(title)}</text>',
        f'<line x1="{LEFT}" y1="{TOP + ph}" x2="{LEFT + pw}" y2="{TOP + ph}" stroke="#000"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + ph}" stroke="#000"/>',
    ]
    for x in _ticks(x_lo, x_hi):
        out.append(f'<line x1="{px(x):.2f}" y1="{TOP + ph}" x2="{px(x):.2f}" y2="{TOP + ph + 5}" stroke="#000"/>')
        out.append(
            f'<text x="{px(x):.2f}" y="{TOP + ph + 20}" text-anchor="middle" font-size="11" font-family="sans-serif">{x:.0f}</text>'
        )
    for y in _ticks(y_lo, y_hi):
        label = f"{10 ** y:.2e}" if log_y else f"{y:.3g}"
        out.append(f'<line x1="{LEFT - 5}" y1="{py(y):.2f}" x2="{LEFT}" y2="{py(y):.2f}" stroke="#000"/>')
        out.append(
            f'<text x="{LEFT - 8}" y="{py(y) + 4:.2f}" text-anchor="end" font-size="11" font-family="sans-serif">{label}</text>'
        )
    out.append(
        f'<text x="{LEFT + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle" font-size="13" font-family="sans-serif">{escape(x_label)}</text>'
    )
    ylab = f"{y_label} (log scale)" if log_y else y_label
    out.append(
        f'<text x="18" y="{TOP + ph / 2:.1f}" text-anchor="middle" font-size="13" font-family="sans-serif" '
        f'transform="rotate(-90 18 {TOP + ph / 2:.1f})">{escape(ylab)}</text>'
    )
    for i, (label, p) in enumerate(pts):
        color = COLORS.get(label, _FALLBACK[i % len(_FALLBACK)])
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in p)
        out.append(
            f'<polyline data-series="{escape(label)}" fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>'
        )
        ly = TOP + 10 + 22 * i
        lx = LEFT + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}" font-size="12" font-family="sans-serif">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_line_chart(path: Path, *args, **kwargs) -> None:
    Path(path).write_text(line_chart(*args, **kwargs), encoding="utf-8")
