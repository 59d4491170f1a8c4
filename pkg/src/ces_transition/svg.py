"""Minimal SVG line chart of carbon tax and fossil share over time."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .simulate import TrajectoryTable

WIDTH, HEIGHT, PAD = 640, 360, 48


def _polyline(x, y, x_range, y_range, colour):
    x0, x1 = x_range
    y0, y1 = y_range
    sx = (WIDTH - 2 * PAD) / ((x1 - x0) or 1.0)
    sy = (HEIGHT - 2 * PAD) / ((y1 - y0) or 1.0)
    pts = " ".join(
        f"{PAD + (xi - x0) * sx:.2f},{HEIGHT - PAD - (yi - y0) * sy:.2f}" for xi, yi in zip(x, y)
    )
    return f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{pts}"/>'


def trajectory_svg(table: TrajectoryTable, clamp_negative_tax: bool = False) -> str:
    """Carbon tax (left axis, red) and share_F (right axis, blue) against t."""
    t = table.column("t")
    tax = table.column("carbon_tax")
    if clamp_negative_tax:
        tax = np.maximum(tax, 0.0)
    share = table.column("share_F")
    x_range = (float(t[0]), float(t[-1]))
    tax_range = (min(0.0, float(tax.min())), max(float(tax.max()), 1e-12))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="{PAD}" y="{PAD}" width="{WIDTH - 2 * PAD}" height="{HEIGHT - 2 * PAD}" '
        'fill="none" stroke="#999"/>',
        _polyline(t, tax, x_range, tax_range, "#c0392b"),
        _polyline(t, share, x_range, (0.0, 1.0), "#2471a3"),
        f'<text x="{PAD}" y="{PAD - 8}" font-size="12" fill="#c0392b">'
        f"carbon tax [{tax_range[0]:.3g}, {tax_range[1]:.3g}]</text>",
        f'<text x="{WIDTH - PAD}" y="{PAD - 8}" font-size="12" fill="#2471a3" '
        'text-anchor="end">share_F [0, 1]</text>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" font-size="12" text-anchor="middle">'
        f"t = {x_range[0]:g} .. {x_range[1]:g}</text>",
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def write_svg(table: TrajectoryTable, path, clamp_negative_tax: bool = False) -> Path:
    path = Path(path)
    path.write_text(trajectory_svg(table, clamp_negative_tax), encoding="utf-8")
    return path
