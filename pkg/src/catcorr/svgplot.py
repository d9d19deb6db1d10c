"""Tiny dependency-free SVG emitters for sweep curves and phase-space maps."""

from __future__ import annotations

import numpy as np

__all__ = ["write_heatmap", "write_line_plot"]

_WIDTH = 720
_HEIGHT = 640
_MARGIN = 60


def _diverging_color(value: float, vmax: float) -> str:
    """Blue-white-red map, symmetric around zero."""
    if vmax <= 0.0:
        return "rgb(255,255,255)"
    t = max(-1.0, min(1.0, value / vmax))
    if t >= 0.0:
        r, g, b = 255, round(255 * (1 - t)), round(255 * (1 - t))
    else:
        r, g, b = round(255 * (1 + t)), round(255 * (1 + t)), 255
    return f"rgb({r},{g},{b})"


def write_heatmap(path, values, x_axis, y_axis, title=""):
    """Write a 2D array as a colored-cell SVG heatmap.

    ``values[i, j]`` is drawn at ``(x_axis[i], y_axis[j])`` with x rightward
    and y upward; the color scale is symmetric around zero.
    """
    values = np.asarray(values, dtype=float)
    nx, ny = values.shape
    vmax = float(np.max(np.abs(values))) if values.size else 1.0
    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = _HEIGHT - 2 * _MARGIN
    cell_w = plot_w / nx
    cell_h = plot_h / ny
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    for i in range(nx):
        for j in range(ny):
            x = _MARGIN + i * cell_w
            y = _MARGIN + (ny - 1 - j) * cell_h
            color = _diverging_color(values[i, j], vmax)
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cell_w + 0.5:.2f}" '
                f'height="{cell_h + 0.5:.2f}" fill="{color}"/>'
            )
    parts.append(
        f'<text x="{_MARGIN}" y="{_HEIGHT - 18}" font-family="sans-serif" '
        f'font-size="12">x: [{x_axis[0]:.3g}, {x_axis[-1]:.3g}]  '
        f'y: [{y_axis[0]:.3g}, {y_axis[-1]:.3g}]  '
        f"scale: +-{vmax:.3g}</text>"
    )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(parts))


_SERIES_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def write_line_plot(path, x, series, title="", xlabel="", ylabel=""):
    """Write named 1D series against a shared x grid as an SVG line chart."""
    x = np.asarray(x, dtype=float)
    ys = {name: np.asarray(vals, dtype=float) for name, vals in series.items()}
    y_all = np.concatenate(list(ys.values())) if ys else np.array([0.0, 1.0])
    y_min, y_max = float(np.min(y_all)), float(np.max(y_all))
    if y_max == y_min:
        y_max = y_min + 1.0
    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = _HEIGHT - 2 * _MARGIN

    def sx(v):
        return _MARGIN + (v - x[0]) / (x[-1] - x[0] or 1.0) * plot_w

    def sy(v):
        return _MARGIN + (y_max - v) / (y_max - y_min) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#444"/>',
        f'<text x="{_WIDTH / 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
        f'<text x="{_WIDTH / 2}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>',
        f'<text x="16" y="{_HEIGHT / 2}" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_HEIGHT / 2})" text-anchor="middle">{ylabel}</text>',
    ]
    for idx, (name, vals) in enumerate(ys.items()):
        color = _SERIES_COLORS[idx % len(_SERIES_COLORS)]
        points = " ".join(f"{sx(xi):.2f},{sy(vi):.2f}" for xi, vi in zip(x, vals))
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.6"/>'
        )
        parts.append(
            f'<text x="{_WIDTH - _MARGIN + 4}" y="{_MARGIN + 16 * idx + 12}" '
            f'font-family="sans-serif" font-size="12" fill="{color}">{name}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN}" y="{_MARGIN - 8}" font-family="sans-serif" '
        f'font-size="11">y: [{y_min:.4g}, {y_max:.4g}]</text>'
    )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(parts))
