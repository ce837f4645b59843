"""Static SVG rendering of sweep output.

One stepwise path per (principle, mode, role); values hold until the next
grid point, so jumps are drawn as vertical risers, never as slopes. The
output is plain SVG 1.1 with every coordinate explicitly formatted, which
keeps renders byte-for-byte deterministic for identical input.
"""

from __future__ import annotations

import math

_WIDTH, _HEIGHT = 860, 520
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 72, 24, 34, 48

_PRINCIPLE_COLORS = {
    "A": "#1f77b4",
    "B": "#d62728",
    "Aprime": "#2ca02c",
    "Adoubleprime": "#9467bd",
}
_FALLBACK_COLOR = "#7f7f7f"


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * magnitude:
            step = mult * magnitude
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-12 * step:
        ticks.append(0.0 if abs(value) < step * 1e-9 else value)
        value += step
    return ticks


def _tick_label(value: float) -> str:
    return f"{value:g}"


def _step_path(xs: list[float], ys: list[float], to_x, to_y) -> str:
    parts = [f"M {_fmt(to_x(xs[0]))} {_fmt(to_y(ys[0]))}"]
    for i in range(1, len(xs)):
        parts.append(f"H {_fmt(to_x(xs[i]))}")
        if ys[i] != ys[i - 1]:
            parts.append(f"V {_fmt(to_y(ys[i]))}")
    if len(xs) > 1:
        parts.append(f"H {_fmt(to_x(xs[-1] + (xs[-1] - xs[-2])))}")
    return " ".join(parts)


def render_sweep_svg(series: list[dict], title: str = "") -> str:
    """Render sweep curves to an SVG document string.

    Each series dict needs: label, principle, alphas (list), totals (list).
    NaN totals drop the series silently (a role that does not exist).
    """
    drawable = []
    for s in series:
        pairs = [(a, v) for a, v in zip(s["alphas"], s["totals"]) if not math.isnan(v)]
        if pairs:
            drawable.append((s, [p[0] for p in pairs], [p[1] for p in pairs]))
    if not drawable:
        raise ValueError("nothing to draw: every series is empty or NaN")

    x_lo = min(min(xs) for _, xs, _ in drawable)
    x_hi = max(max(xs) for _, xs, _ in drawable)
    y_lo = min(min(ys) for _, _, ys in drawable)
    y_hi = max(max(ys) for _, _, ys in drawable)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo) or 1.0
    y_lo, y_hi = y_lo - pad, y_hi + pad

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def to_x(a: float) -> float:
        return _MARGIN_L + (a - x_lo) / (x_hi - x_lo) * plot_w

    def to_y(v: float) -> float:
        return _MARGIN_T + (y_hi - v) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="#ffffff"/>',
    ]
    if title:
        out.append(
            f'<text x="{_WIDTH // 2}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>'
        )

    for tick in _nice_ticks(x_lo, x_hi):
        x = _fmt(to_x(tick))
        out.append(
            f'<line x1="{x}" y1="{_MARGIN_T}" x2="{x}" y2="{_MARGIN_T + plot_h}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{x}" y="{_MARGIN_T + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12">{_tick_label(tick)}</text>'
        )
    for tick in _nice_ticks(y_lo, y_hi):
        y = _fmt(to_y(tick))
        out.append(
            f'<line x1="{_MARGIN_L}" y1="{y}" x2="{_MARGIN_L + plot_w}" y2="{y}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_MARGIN_L - 8}" y="{y}" text-anchor="end" dy="4" '
            f'font-family="sans-serif" font-size="12">{_tick_label(tick)}</text>'
        )
    if y_lo < 0.0 < y_hi:
        y = _fmt(to_y(0.0))
        out.append(
            f'<line x1="{_MARGIN_L}" y1="{y}" x2="{_MARGIN_L + plot_w}" y2="{y}" '
            f'stroke="#999999" stroke-width="1" stroke-dasharray="5 4"/>'
        )

    out.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333333" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{_MARGIN_L + plot_w // 2}" y="{_HEIGHT - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">alpha</text>'
    )
    out.append(
        f'<text x="18" y="{_MARGIN_T + plot_h // 2}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_MARGIN_T + plot_h // 2})">total increment</text>'
    )

    legend_y = _MARGIN_T + 10
    for s, xs, ys in drawable:
        color = _PRINCIPLE_COLORS.get(s["principle"], _FALLBACK_COLOR)
        dash = ' stroke-dasharray="6 3"' if s.get("dashed") else ""
        out.append(
            f'<path d="{_step_path(xs, ys, to_x, to_y)}" fill="none" '
            f'stroke="{color}" stroke-width="1.6"{dash}/>'
        )
        lx = _MARGIN_L + plot_w - 170
        out.append(
            f'<line x1="{lx}" y1="{legend_y}" x2="{lx + 26}" y2="{legend_y}" '
            f'stroke="{color}" stroke-width="1.6"{dash}/>'
        )
        out.append(
            f'<text x="{lx + 32}" y="{legend_y}" dy="4" font-family="sans-serif" '
            f'font-size="12">{s["label"]}</text>'
        )
        legend_y += 18
    out.append("</svg>")
    return "\n".join(out) + "\n"
