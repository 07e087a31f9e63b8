"""Self-contained SVG line charts (no plotting dependencies).

Charts are simple polylines over integer class ids, which is all the
frequency and profile figures need. Output is deterministic: same data,
same bytes.
"""
from __future__ import annotations

import math
from html import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#e377c2")

_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 62, 18, 34, 46


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        step = mult * mag
        if raw <= step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _fmt_tick(x: float) -> str:
    if x == 0:
        return "0"
    if abs(x) >= 1000 or abs(x) < 0.01:
        return f"{x:.1e}"
    return f"{x:g}"


def line_chart(
    series: list[tuple[str, list[tuple[float, float]]]],
    *,
    title: str,
    x_label: str,
    y_label: str,
    x_ticks: list[int],
    width: int = 760,
    height: int = 420,
    zero_line: bool = False,
    log_ticks: bool = False,
    note: str = "",
) -> str:
    """SVG document with one polyline per series.

    With ``log_ticks`` the y values are expected to be log10-transformed
    already; tick labels render as powers of ten.
    """
    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B
    xs = [float(t) for t in x_ticks]
    ys = [y for _, pts in series for _, y in pts]
    if not ys:
        ys = [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_hi = x_lo + 1
    y_lo, y_hi = min(ys), max(ys)
    if zero_line:
        y_lo, y_hi = min(y_lo, 0.0), max(y_hi, 0.0)
    pad = 0.06 * (y_hi - y_lo) or 0.5
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}" '
        f'font-family="Helvetica,Arial,sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="18" text-anchor="middle" '
        f'font-size="14">{escape(title)}</text>',
    ]
    axis_y = _MARGIN_T + plot_h
    parts.append(f'<line x1="{_MARGIN_L}" y1="{axis_y}" '
                 f'x2="{_MARGIN_L + plot_w}" y2="{axis_y}" stroke="black"/>')
    parts.append(f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" '
                 f'x2="{_MARGIN_L}" y2="{axis_y}" stroke="black"/>')

    for t in x_ticks:
        x = sx(float(t))
        parts.append(f'<line x1="{_fmt(x)}" y1="{axis_y}" x2="{_fmt(x)}" '
                     f'y2="{axis_y + 4}" stroke="black"/>')
        parts.append(f'<text x="{_fmt(x)}" y="{axis_y + 16}" '
                     f'text-anchor="middle">{t}</text>')
    if log_ticks:
        ticks = list(range(math.ceil(y_lo), math.floor(y_hi) + 1)) or [round(y_lo)]
        labels = [f"1e{t}" for t in ticks]
    else:
        ticks = _nice_ticks(y_lo, y_hi)
        labels = [_fmt_tick(t) for t in ticks]
    for t, lab in zip(ticks, labels):
        y = sy(float(t))
        parts.append(f'<line x1="{_MARGIN_L - 4}" y1="{_fmt(y)}" '
                     f'x2="{_MARGIN_L}" y2="{_fmt(y)}" stroke="black"/>')
        parts.append(f'<line x1="{_MARGIN_L}" y1="{_fmt(y)}" '
                     f'x2="{_MARGIN_L + plot_w}" y2="{_fmt(y)}" '
                     f'stroke="#dddddd"/>')
        parts.append(f'<text x="{_MARGIN_L - 7}" y="{_fmt(y + 3.5)}" '
                     f'text-anchor="end">{lab}</text>')
    if zero_line and y_lo < 0 < y_hi:
        y0 = sy(0.0)
        parts.append(f'<line x1="{_MARGIN_L}" y1="{_fmt(y0)}" '
                     f'x2="{_MARGIN_L + plot_w}" y2="{_fmt(y0)}" '
                     f'stroke="#888888" stroke-dasharray="4 3"/>')

    for idx, (label, pts) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        if pts:
            coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pts)
            parts.append(f'<polyline fill="none" stroke="{color}" '
                         f'stroke-width="1.6" points="{coords}"/>')
            for x, y in pts:
                parts.append(f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" '
                             f'r="2.4" fill="{color}"/>')
        ly = _MARGIN_T + 6 + idx * 15
        lx = _MARGIN_L + plot_w - 150
        parts.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" '
                     f'stroke="{color}" stroke-width="1.6"/>')
        parts.append(f'<text x="{lx + 23}" y="{ly + 3.5}">'
                     f'{escape(label)}</text>')

    parts.append(f'<text x="{_MARGIN_L + plot_w / 2:.0f}" y="{height - 10}" '
                 f'text-anchor="middle">{escape(x_label)}</text>')
    parts.append(f'<text x="14" y="{_MARGIN_T + plot_h / 2:.0f}" '
                 f'text-anchor="middle" transform="rotate(-90 14 '
                 f'{_MARGIN_T + plot_h / 2:.0f})">{escape(y_label)}</text>')
    if note:
        parts.append(f'<text x="{_MARGIN_L}" y="{height - 10}" '
                     f'font-size="10" fill="#555555">{escape(note)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
