"""Dependency-free deterministic SVG rendering.

Output is a function of the input alone: fixed canvas geometry, fixed number
formatting, no timestamps, so identical data yields byte-identical documents
and file digests are meaningful.

Two plot kinds: "lines" draws one polyline per named series (optionally on a
log y axis); "heatmap" draws a rectangle grid with a monotone value-to-color
ramp as the contour substitute.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError

PANEL_W = 640
PANEL_H = 400
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 24, 44, 52
_PLOT_W = PANEL_W - _MARGIN_L - _MARGIN_R
_PLOT_H = PANEL_H - _MARGIN_T - _MARGIN_B

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f")

# Dark-blue -> teal -> yellow ramp; value order maps to ramp order, equal
# values to equal colors.
_RAMP = ((0.0, (68, 1, 84)), (0.25, (59, 82, 139)), (0.5, (33, 145, 140)),
         (0.75, (94, 201, 98)), (1.0, (253, 231, 37)))


@dataclass(frozen=True)
class Series:
    name: str
    x: np.ndarray
    y: np.ndarray


@dataclass(frozen=True)
class LineBundle:
    title: str
    x_label: str
    y_label: str
    series: tuple[Series, ...]
    log_y: bool = False


@dataclass(frozen=True)
class HeatmapBundle:
    title: str
    x_label: str
    y_label: str
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    values: np.ndarray  # rows map to y, columns to x


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    return f"{v:.4g}"


def _axis_range(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        pad = 0.05 * (hi - lo)
        return lo - pad, hi + pad
    pad = 1.0 if lo == 0.0 else 0.1 * abs(lo)
    return lo - pad, lo + pad


def _ramp_color(t: float) -> str:
    for (t0, c0), (t1, c1) in zip(_RAMP, _RAMP[1:]):
        if t <= t1:
            w = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            r, g, b = (round(a + w * (b_ - a)) for a, b_ in zip(c0, c1))
            return f"#{r:02x}{g:02x}{b:02x}"
    r, g, b = _RAMP[-1][1]
    return f"#{r:02x}{g:02x}{b:02x}"


def _text(x: float, y: float, content: str, anchor: str = "middle",
          size: int = 12, fill: str = "#000000", extra: str = "") -> str:
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}" fill="{fill}"{extra}>'
            f'{escape(content)}</text>')


def _frame_and_title(title: str, x_label: str, y_label: str) -> list[str]:
    x0, x1 = _MARGIN_L, _MARGIN_L + _PLOT_W
    y0, y1 = _MARGIN_T, _MARGIN_T + _PLOT_H
    parts = [
        f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="#000000"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#000000"/>',
        _text((x0 + x1) / 2, _MARGIN_T - 16, title, size=14),
        _text((x0 + x1) / 2, y1 + 38, x_label),
        _text(x0 - 52, (y0 + y1) / 2, y_label,
              extra=f' transform="rotate(-90 {_fmt(x0 - 52)} {_fmt((y0 + y1) / 2)})"'),
    ]
    return parts


def _ticks(lo: float, hi: float, n: int = 5) -> np.ndarray:
    return np.linspace(lo, hi, n)


def _panel_lines(bundle: LineBundle) -> list[str]:
    if not bundle.series:
        raise DomainError("line plot needs at least one series")
    for s in bundle.series:
        if len(s.x) != len(s.y) or len(s.x) == 0:
            raise DomainError(f"series {s.name!r} is empty or ragged")
        if not (np.all(np.isfinite(s.x)) and np.all(np.isfinite(s.y))):
            raise DomainError(f"series {s.name!r} contains non-finite values")
        if bundle.log_y and np.any(np.asarray(s.y) <= 0.0):
            raise DomainError(
                f"series {s.name!r} has nonpositive values; log axis impossible")

    def transform_y(y):
        return np.log10(y) if bundle.log_y else np.asarray(y, dtype=np.float64)

    xs_all = np.concatenate([np.asarray(s.x, dtype=np.float64) for s in bundle.series])
    ys_all = np.concatenate([transform_y(s.y) for s in bundle.series])
    x_lo, x_hi = _axis_range(float(xs_all.min()), float(xs_all.max()))
    y_lo, y_hi = _axis_range(float(ys_all.min()), float(ys_all.max()))

    def px(v: float) -> float:
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * _PLOT_W

    def py(v: float) -> float:
        return _MARGIN_T + _PLOT_H - (v - y_lo) / (y_hi - y_lo) * _PLOT_H

    parts = _frame_and_title(bundle.title, bundle.x_label, bundle.y_label)
    base_y = _MARGIN_T + _PLOT_H
    for t in _ticks(x_lo, x_hi):
        parts.append(f'<line x1="{_fmt(px(t))}" y1="{base_y}" x2="{_fmt(px(t))}" '
                     f'y2="{base_y + 5}" stroke="#000000"/>')
        parts.append(_text(px(t), base_y + 20, _label(t), size=11))
    for t in _ticks(y_lo, y_hi):
        parts.append(f'<line x1="{_MARGIN_L - 5}" y1="{_fmt(py(t))}" '
                     f'x2="{_MARGIN_L}" y2="{_fmt(py(t))}" stroke="#000000"/>')
        label = _label(10.0 ** t) if bundle.log_y else _label(t)
        parts.append(_text(_MARGIN_L - 8, py(t) + 4, label, anchor="end", size=11))
    for idx, s in enumerate(bundle.series):
        color = _PALETTE[idx % len(_PALETTE)]
        ys = transform_y(s.y)
        points = " ".join(f"{_fmt(px(float(a)))},{_fmt(py(float(b)))}"
                          for a, b in zip(s.x, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" '
                     f'points="{points}"/>')
        parts.append(_text(_MARGIN_L + _PLOT_W - 4, _MARGIN_T + 14 + 14 * idx,
                           s.name, anchor="end", size=11, fill=color))
    return parts


def _panel_heatmap(bundle: HeatmapBundle) -> list[str]:
    values = np.asarray(bundle.values, dtype=np.float64)
    if values.ndim != 2 or values.size == 0:
        raise DomainError("heatmap needs a nonempty 2-D value grid")
    if not np.all(np.isfinite(values)):
        raise DomainError("heatmap values contain non-finite entries")
    n_rows, n_cols = values.shape
    v_lo, v_hi = float(values.min()), float(values.max())
    span = v_hi - v_lo
    cell_w = _PLOT_W / n_cols
    cell_h = _PLOT_H / n_rows

    parts = _frame_and_title(bundle.title, bundle.x_label, bundle.y_label)
    # Row 0 sits at the bottom edge (low y value), matching plot orientation.
    for i in range(n_rows):
        cy = _MARGIN_T + _PLOT_H - (i + 1) * cell_h
        for j in range(n_cols):
            t = 0.5 if span == 0.0 else (values[i, j] - v_lo) / span
            parts.append(
                f'<rect class="cell" x="{_fmt(_MARGIN_L + j * cell_w)}" '
                f'y="{_fmt(cy)}" width="{_fmt(cell_w)}" height="{_fmt(cell_h)}" '
                f'fill="{_ramp_color(float(t))}"/>')
    x_lo, x_hi = bundle.x_range
    y_lo, y_hi = bundle.y_range
    base_y = _MARGIN_T + _PLOT_H
    for t in _ticks(x_lo, x_hi):
        x = _MARGIN_L + (0.0 if x_hi == x_lo else (t - x_lo) / (x_hi - x_lo)) * _PLOT_W
        parts.append(f'<line x1="{_fmt(x)}" y1="{base_y}" x2="{_fmt(x)}" '
                     f'y2="{base_y + 5}" stroke="#000000"/>')
        parts.append(_text(x, base_y + 20, _label(t), size=11))
    for t in _ticks(y_lo, y_hi):
        y = base_y - (0.0 if y_hi == y_lo else (t - y_lo) / (y_hi - y_lo)) * _PLOT_H
        parts.append(f'<line x1="{_MARGIN_L - 5}" y1="{_fmt(y)}" '
                     f'x2="{_MARGIN_L}" y2="{_fmt(y)}" stroke="#000000"/>')
        parts.append(_text(_MARGIN_L - 8, y + 4, _label(t), anchor="end", size=11))
    return parts


def _panel(bundle, style: str) -> list[str]:
    if style == "lines":
        if not isinstance(bundle, LineBundle):
            raise DomainError("style 'lines' requires a LineBundle")
        return _panel_lines(bundle)
    if style == "heatmap":
        if not isinstance(bundle, HeatmapBundle):
            raise DomainError("style 'heatmap' requires a HeatmapBundle")
        return _panel_heatmap(bundle)
    raise DomainError(f"unknown plot style {style!r}")


def _document(body: list[str], width: int, height: int) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join(['<?xml version="1.0" encoding="UTF-8"?>', head,
                      *body, "</svg>"]) + "\n"


def render_svg(bundle, style: str = "lines") -> str:
    """Render one chart as a standalone SVG 1.1 document."""
    return _document(_panel(bundle, style), PANEL_W, PANEL_H)


def render_panels(panels) -> str:
    """Stack (bundle, style) pairs vertically into one standalone document."""
    panels = list(panels)
    if not panels:
        raise DomainError("need at least one panel")
    body: list[str] = []
    for i, (bundle, style) in enumerate(panels):
        body.append(f'<g transform="translate(0 {i * PANEL_H})">')
        body.extend(_panel(bundle, style))
        body.append("</g>")
    return _document(body, PANEL_W, PANEL_H * len(panels))
