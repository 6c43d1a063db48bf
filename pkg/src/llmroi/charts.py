"""Deterministic SVG charts.

Every generator here is a pure function from data to an SVG string. No
timestamps, no random ids, all coordinates rounded to fixed precision, so
identical inputs produce byte-identical files. That property is load-bearing:
the reproduction pipeline diffs its own output across runs.
"""

from __future__ import annotations

import math

from .econ import SweepResult
from .errors import ValidationError
from .sensitivity.sobol import SobolIndices

# fixed palette, color-blind safe
_COLORS = ("#0072b2", "#d55e00", "#009e73", "#cc79a7", "#e69f00",
           "#56b4e9", "#f0e442", "#666666")

_FONT = "font-family=\"Helvetica, Arial, sans-serif\""


def _num(value: float) -> str:
    # coordinates: two decimals is below pixel resolution at our sizes
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


def _label(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return f"{int(value):,}"
    return format(value, ".4g")


def _esc(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


class _Canvas:
    def __init__(self, width: int, height: int, title: str):
        self.width = width
        self.height = height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
            f'<text x="{width // 2}" y="24" text-anchor="middle" {_FONT} '
            f'font-size="15" fill="#222222">{_esc(title)}</text>',
        ]

    def line(self, x1, y1, x2, y2, color="#cccccc", width=1.0, dash=None):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" '
            f'y2="{_num(y2)}" stroke="{color}" stroke-width="{width}"{extra}/>')

    def polyline(self, points, color, width=1.8):
        coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in points)
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"/>')

    def rect(self, x, y, w, h, fill, stroke=None):
        extra = f' stroke="{stroke}" stroke-width="0.5"' if stroke else ""
        self.parts.append(
            f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(w)}" '
            f'height="{_num(h)}" fill="{fill}"{extra}/>')

    def circle(self, x, y, r, fill):
        self.parts.append(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(r)}" fill="{fill}"/>')

    def text(self, x, y, content, size=11, anchor="middle", color="#333333",
             rotate=None):
        extra = ""
        if rotate is not None:
            extra = f' transform="rotate({rotate} {_num(x)} {_num(y)})"'
        self.parts.append(
            f'<text x="{_num(x)}" y="{_num(y)}" text-anchor="{anchor}" {_FONT} '
            f'font-size="{size}" fill="{color}"{extra}>{_esc(content)}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mag * mult >= raw:
            step = mag * mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _log_ticks(lo: float, hi: float) -> list[float]:
    ticks = []
    e = math.floor(math.log10(lo))
    while 10.0 ** e <= hi * (1 + 1e-12):
        if 10.0 ** e >= lo * (1 - 1e-12):
            ticks.append(10.0 ** e)
        e += 1
    return ticks or [lo, hi]


def sweep_chart(sweep: SweepResult, *, title: str = "",
                width: int = 760, height: int = 420,
                log_x: bool = False) -> str:
    """Earnings versus the swept variable, one line per scenario.

    Crossings are drawn as filled markers with their coordinate printed
    beside them.
    """
    if not sweep.series:
        raise ValidationError("sweep has no series to draw", field="series")
    margin_l, margin_r, margin_t, margin_b = 70, 20, 40, 50
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b

    xs = [p.value for _, pts in sweep.series for p in pts]
    ys = [p.earnings for _, pts in sweep.series for p in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    pad = (y_hi - y_lo) * 0.06
    y_lo, y_hi = y_lo - pad, y_hi + pad
    if log_x and x_lo <= 0:
        raise ValidationError("log_x requires positive sweep values",
                              field="log_x")

    def sx(v: float) -> float:
        if log_x:
            frac = (math.log10(v) - math.log10(x_lo)) / \
                   (math.log10(x_hi) - math.log10(x_lo))
        else:
            frac = (v - x_lo) / (x_hi - x_lo) if x_hi > x_lo else 0.5
        return margin_l + frac * plot_w

    def sy(v: float) -> float:
        return margin_t + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h

    c = _Canvas(width, height, title or f"earnings vs {sweep.variable}")
    x_ticks = _log_ticks(x_lo, x_hi) if log_x else _ticks(x_lo, x_hi)
    for t in x_ticks:
        c.line(sx(t), margin_t, sx(t), margin_t + plot_h)
        c.text(sx(t), margin_t + plot_h + 16, _label(t), size=10)
    for t in _ticks(y_lo, y_hi):
        c.line(margin_l, sy(t), margin_l + plot_w, sy(t))
        c.text(margin_l - 8, sy(t) + 3.5, _label(t), size=10, anchor="end")
    if y_lo < 0 < y_hi:
        c.line(margin_l, sy(0.0), margin_l + plot_w, sy(0.0),
               color="#999999", dash="4 3")
    c.line(margin_l, margin_t, margin_l, margin_t + plot_h, color="#333333")
    c.line(margin_l, margin_t + plot_h, margin_l + plot_w, margin_t + plot_h,
           color="#333333")
    c.text(margin_l + plot_w / 2, height - 12, sweep.variable, size=12)

    for i, (name, pts) in enumerate(sweep.series):
        color = _COLORS[i % len(_COLORS)]
        c.polyline([(sx(p.value), sy(p.earnings)) for p in pts], color)
        c.rect(margin_l + plot_w - 150, margin_t + 8 + 16 * i, 14, 4, color)
        c.text(margin_l + plot_w - 130, margin_t + 14 + 16 * i, name,
               size=11, anchor="start")
    for cr in sweep.crossings:
        c.circle(sx(cr.value), sy(cr.earnings), 4.0, "#222222")
        c.text(sx(cr.value), sy(cr.earnings) - 8,
               f"{cr.scenario_a}={cr.scenario_b} @ {_label(cr.value)}", size=10)
    return c.render()


def indices_bar_chart(indices: SobolIndices, *, title: str = "",
                      width: int = 760, height: int = 380) -> str:
    """Grouped bars: first-order next to total-order, one group per variable."""
    names = indices.variables
    if not names:
        raise ValidationError("no variables to draw", field="variables")
    margin_l, margin_r, margin_t, margin_b = 60, 20, 44, 60
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b
    values = list(indices.first_order) + list(indices.total_order)
    v_hi = max(1.0, max(values))
    v_lo = min(0.0, min(values))
    span = v_hi - v_lo

    def sy(v: float) -> float:
        return margin_t + (1.0 - (v - v_lo) / span) * plot_h

    c = _Canvas(width, height, title or "sobol indices")
    for t in _ticks(v_lo, v_hi):
        c.line(margin_l, sy(t), margin_l + plot_w, sy(t))
        c.text(margin_l - 8, sy(t) + 3.5, format(t, ".2g"), size=10, anchor="end")
    group_w = plot_w / len(names)
    bar_w = group_w * 0.32
    zero_y = sy(0.0)
    for i, name in enumerate(names):
        x0 = margin_l + i * group_w + group_w * 0.14
        for j, value in enumerate((indices.first_order[i],
                                   indices.total_order[i])):
            x = x0 + j * bar_w
            top = min(sy(value), zero_y)
            c.rect(x, top, bar_w * 0.92, abs(sy(value) - zero_y),
                   _COLORS[j], stroke="#ffffff")
        c.text(margin_l + (i + 0.5) * group_w, margin_t + plot_h + 16, name,
               size=11)
    c.line(margin_l, zero_y, margin_l + plot_w, zero_y, color="#333333")
    c.line(margin_l, margin_t, margin_l, margin_t + plot_h, color="#333333")
    c.rect(margin_l, height - 26, 12, 12, _COLORS[0])
    c.text(margin_l + 18, height - 16, "first order", size=11, anchor="start")
    c.rect(margin_l + 110, height - 26, 12, 12, _COLORS[1])
    c.text(margin_l + 128, height - 16, "total order", size=11, anchor="start")
    return c.render()


def _heat_color(frac: float) -> str:
    # white -> deep blue ramp
    frac = min(1.0, max(0.0, frac))
    r = round(255 - 255 * frac * 0.95)
    g = round(255 - 255 * frac * 0.75)
    b = round(255 - 255 * frac * 0.35)
    return f"#{r:02x}{g:02x}{b:02x}"


def interaction_heatmap(indices: SobolIndices, *, title: str = "",
                        width: int = 560, height: int = 520) -> str:
    """Second-order index matrix as a heatmap; needs second_order data."""
    if indices.second_order is None:
        raise ValidationError("indices carry no second-order estimates",
                              field="second_order")
    names = indices.variables
    d = len(names)
    margin_l, margin_t = 90, 70
    cell = min((width - margin_l - 20) / d, (height - margin_t - 20) / d)
    peak = max((abs(indices.second_order[i][j])
                for i in range(d) for j in range(i + 1, d)), default=0.0)
    peak = peak or 1.0

    c = _Canvas(width, height, title or "pairwise interactions")
    for i in range(d):
        c.text(margin_l - 8, margin_t + (i + 0.62) * cell, names[i],
               size=11, anchor="end")
        c.text(margin_l + (i + 0.5) * cell, margin_t - 8, names[i],
               size=11, rotate=-45)
    for i in range(d):
        for j in range(d):
            x = margin_l + j * cell
            y = margin_t + i * cell
            if i == j:
                c.rect(x, y, cell, cell, "#eeeeee", stroke="#ffffff")
                continue
            value = indices.second_order[i][j]
            c.rect(x, y, cell, cell, _heat_color(abs(value) / peak),
                   stroke="#ffffff")
            if cell >= 40:
                color = "#ffffff" if abs(value) / peak > 0.55 else "#333333"
                c.text(x + cell / 2, y + cell / 2 + 3.5, format(value, ".2g"),
                       size=9, color=color)
    return c.render()
