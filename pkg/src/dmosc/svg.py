"""Minimal self-contained SVG line plots of a series column against tau."""
from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .harness import read_series

__all__ = ["render", "render_svg"]

WIDTH, HEIGHT = 720, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 50

LABELS = {
    "S": "von Neumann entropy S",
    "C": "concurrence C",
    "W": "population inversion W",
    "g2": "second-order correlation g2",
    "norm": "norm",
    "excitation": "excitation <I>",
}


def _fmt(x):
    return format(float(x), ".6g")


def _title(name, params):
    keys = ("lambda1", "lambda2", "omega", "alpha", "n_max", "sectors", "solver")
    parts = [f"{k}={params[k]}" for k in keys if k in params]
    label = LABELS.get(name, name)
    return f"{label}: " + ", ".join(parts) if parts else label


def render_svg(tau, y, name, params=None) -> str:
    """SVG document plotting ``y`` against ``tau``."""
    tau = np.asarray(tau, dtype=float)
    y = np.asarray(y, dtype=float)
    if tau.size == 0:
        raise ValueError("no data rows")
    x0, x1 = float(tau[0]), float(tau[-1])
    if x1 == x0:
        x1 = x0 + 1.0
    y0, y1 = float(np.min(y)), float(np.max(y))
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B
    px = MARGIN_L + (tau - x0) / (x1 - x0) * pw
    py = MARGIN_T + (y1 - y) / (y1 - y0) * ph
    points = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))

    ticks = []
    for k in range(5):
        fy = y0 + (y1 - y0) * k / 4
        yy = MARGIN_T + ph - ph * k / 4
        ticks.append(f'<text x="{MARGIN_L - 6}" y="{yy:.1f}" text-anchor="end" '
                     f'font-size="11">{_fmt(fy)}</text>')
        fx = x0 + (x1 - x0) * k / 4
        xx = MARGIN_L + pw * k / 4
        ticks.append(f'<text x="{xx:.1f}" y="{MARGIN_T + ph + 16}" text-anchor="middle" '
                     f'font-size="11">{_fmt(fx)}</text>')

    title = escape(_title(name, params or {}))
    ylabel = escape(LABELS.get(name, name))
    return "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="13">{title}</text>',
        f'<g id="plot" data-x0="{x0!r}" data-x1="{x1!r}" data-y0="{y0!r}" data-y1="{y1!r}" '
        f'data-left="{MARGIN_L}" data-top="{MARGIN_T}" data-width="{pw}" data-height="{ph}">',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" '
        'stroke="black" stroke-width="1"/>',
        f'<polyline fill="none" stroke="#1f4e9c" stroke-width="1.2" points="{points}"/>',
        "</g>",
        *ticks,
        f'<text x="{MARGIN_L + pw / 2}" y="{HEIGHT - 10}" text-anchor="middle" '
        'font-size="12">scaled time λt</text>',
        f'<text x="16" y="{MARGIN_T + ph / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {MARGIN_T + ph / 2})">{ylabel}</text>',
        "</svg>",
        "",
    ])


def render(series_path, name: str, out_path=None) -> Path:
    """Render column ``name`` of a series file to SVG; returns the SVG path."""
    series_path = Path(series_path)
    columns, rows, params = read_series(series_path)
    if name not in columns:
        raise KeyError(f"column {name!r} not in {series_path.name} (has {columns})")
    if rows.shape[0] == 0:
        raise ValueError("no data rows")
    if out_path is None:
        out_path = series_path.with_name(f"{series_path.stem}_{name}.svg")
    out_path = Path(out_path)
    svg = render_svg(rows[:, columns.index("tau")], rows[:, columns.index(name)], name, params)
    with open(out_path, "w", newline="\n") as fh:
        fh.write(svg)
    return out_path
