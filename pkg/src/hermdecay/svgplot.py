"""Minimal hand-emitted SVG line plots.

Output depends only on the inputs: coordinates are printed with fixed
precision and no timestamps or ids are generated, so identical data gives
byte-identical files.
"""
from __future__ import annotations

import math
from html import escape

import numpy as np

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 80, 30, 40, 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
DASHES = ("", "6,4", "2,3", "8,3,2,3")


class PlotInputError(Exception):
    pass


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    """Round tick positions covering ``[lo, hi]``."""
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = start
    while t <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def _tick_label(t: float) -> str:
    return f"{t:.6g}"


def _finite_points(x, y):
    ok = np.isfinite(x) & np.isfinite(y)
    return list(zip(x[ok], y[ok]))


def render(x, series, xlabel: str, ylabel: str, title: str = "") -> str:
    """SVG document with one polyline per ``(label, y)`` in ``series``.

    Non-finite points (zero coefficients print as ``-inf``) are skipped and
    the line joins their finite neighbours.
    """
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise PlotInputError("no data to plot")
    ys = [(label, np.asarray(y, dtype=float)) for label, y in series]
    for label, y in ys:
        if y.shape != x.shape:
            raise PlotInputError(f"series {label!r} has {y.size} points, expected {x.size}")
    finite_y = np.concatenate([y[np.isfinite(y) & np.isfinite(x)] for _, y in ys])
    finite_x = x[np.isfinite(x)]
    if finite_y.size == 0 or finite_x.size == 0:
        raise PlotInputError("no finite points to plot")

    x_lo, x_hi = float(finite_x.min()), float(finite_x.max())
    y_lo, y_hi = float(finite_y.min()), float(finite_y.max())
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def px(v):
        return MARGIN_L + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return MARGIN_T + (y_hi - v) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="14">'
                   f'{escape(title)}</text>')

    bottom, right = MARGIN_T + ph, MARGIN_L + pw
    for t in nice_ticks(x_lo, x_hi):
        if x_lo <= t <= x_hi:
            X = px(t)
            out.append(f'<line x1="{X:.2f}" y1="{MARGIN_T}" x2="{X:.2f}" y2="{bottom}" '
                       'stroke="#e0e0e0"/>')
            out.append(f'<text x="{X:.2f}" y="{bottom + 16}" text-anchor="middle">'
                       f'{_tick_label(t)}</text>')
    for t in nice_ticks(y_lo, y_hi):
        if y_lo <= t <= y_hi:
            Y = py(t)
            out.append(f'<line x1="{MARGIN_L}" y1="{Y:.2f}" x2="{right}" y2="{Y:.2f}" '
                       'stroke="#e0e0e0"/>')
            out.append(f'<text x="{MARGIN_L - 6}" y="{Y + 4:.2f}" text-anchor="end">'
                       f'{_tick_label(t)}</text>')
    out.append(f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" '
               'fill="none" stroke="black"/>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.2f}" y="{HEIGHT - 16}" text-anchor="middle">'
               f'{escape(xlabel)}</text>')
    cy = MARGIN_T + ph / 2
    out.append(f'<text x="20" y="{cy:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {cy:.2f})">{escape(ylabel)}</text>')

    for i, (label, y) in enumerate(ys):
        color, dash = COLORS[i % len(COLORS)], DASHES[i % len(DASHES)]
        style = f' stroke-dasharray="{dash}"' if dash else ""
        run = _finite_points(x, y)
        if len(run) == 1:
            (a, b), = run
            out.append(f'<circle cx="{px(a):.2f}" cy="{py(b):.2f}" r="2" fill="{color}"/>')
        elif run:
            pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in run)
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                       f'stroke-width="1.5"{style}/>')
        ly = MARGIN_T + 16 + 18 * i
        lx = right - 230
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="1.5"{style}/>')
        out.append(f'<text x="{lx + 30}" y="{ly}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
