"""Hand-rolled SVG emission: stacked error bars and boxplot panels.

Deliberately dependency-free and minimal; the CSV outputs carry the data,
these are quick visual companions.  Output is deterministic apart from the
embedded package version comment.
"""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

from .errors import ActorErrorProfile
from .simulate import SummaryRow

__all__ = ["stacked_bar_svg", "boxplot_svg"]

_TYPE1_COLOR = "#d95f02"
_TYPE2_COLOR = "#1b9e77"
_METHOD_COLORS = (
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
)


def _version_comment() -> str:
    try:
        v = version("cssnet")
    except PackageNotFoundError:
        v = "unknown"
    return f"<!-- cssnet {v} -->"


def _header(width: int, height: int) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        _version_comment(),
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]


def _f(x: float) -> str:
    return f"{x:.2f}"


def stacked_bar_svg(profiles: list[ActorErrorProfile], title: str = "") -> str:
    """One stacked bar per actor: type 1 count on top of type 2 count."""
    if not profiles:
        raise ValueError("no profiles to plot")
    left, bottom, top = 50, 40, 30
    bar_w, gap = 18, 4
    plot_h = 240
    width = left + len(profiles) * (bar_w + gap) + 20
    height = top + plot_h + bottom
    peak = max(p.total for p in profiles) or 1
    scale = plot_h / peak
    parts = _header(width, height)
    if title:
        parts.append(
            f'<text x="{left}" y="18" font-family="sans-serif" font-size="13">'
            f"{title}</text>"
        )
    axis_y = top + plot_h
    parts.append(
        f'<line x1="{left}" y1="{axis_y}" x2="{width - 10}" y2="{axis_y}" '
        'stroke="black"/>'
    )
    parts.append(
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{axis_y}" stroke="black"/>'
    )
    for frac in (0.0, 0.5, 1.0):
        value = frac * peak
        y = axis_y - frac * plot_h
        parts.append(
            f'<text x="{left - 6}" y="{_f(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{value:g}</text>'
        )
    x = left + gap
    for p in profiles:
        h2 = p.type2_count * scale
        h1 = p.type1_count * scale
        y2 = axis_y - h2
        y1 = y2 - h1
        if p.type2_count:
            parts.append(
                f'<rect x="{x}" y="{_f(y2)}" width="{bar_w}" height="{_f(h2)}" '
                f'fill="{_TYPE2_COLOR}"/>'
            )
        if p.type1_count:
            parts.append(
                f'<rect x="{x}" y="{_f(y1)}" width="{bar_w}" height="{_f(h1)}" '
                f'fill="{_TYPE1_COLOR}"/>'
            )
        parts.append(
            f'<text x="{_f(x + bar_w / 2)}" y="{axis_y + 14}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="9">{p.actor_id}</text>'
        )
        x += bar_w + gap
    legend_y = height - 12
    parts.append(
        f'<rect x="{left}" y="{legend_y - 9}" width="10" height="10" '
        f'fill="{_TYPE1_COLOR}"/>'
        f'<text x="{left + 14}" y="{legend_y}" font-family="sans-serif" '
        'font-size="10">type 1 (commission)</text>'
    )
    parts.append(
        f'<rect x="{left + 150}" y="{legend_y - 9}" width="10" height="10" '
        f'fill="{_TYPE2_COLOR}"/>'
        f'<text x="{left + 164}" y="{legend_y}" font-family="sans-serif" '
        'font-size="10">type 2 (omission)</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _series_label(method: str, params: str) -> str:
    if method == "rtm" and params == "w=auto":
        return "rtm"
    return f"{method} {params}" if params else method


def boxplot_svg(rows: list[SummaryRow], title: str = "") -> str:
    """Boxplots of similarity by sample size, one colored series per method.

    Boxes span q25..q75 with a median tick; whiskers reach min/max.
    """
    rows = [r for r in rows if r.count > 0]
    if not rows:
        raise ValueError("no non-degenerate summary rows to plot")
    methods = sorted({_series_label(r.method, r.params) for r in rows})
    sizes = sorted({r.n for r in rows})
    left, bottom, top, right = 60, 50, 30, 20
    slot = 16 * max(len(methods), 1) + 14
    plot_w = slot * len(sizes)
    plot_h = 260
    width = left + plot_w + right
    height = top + plot_h + bottom
    lo = min(min(r.min for r in rows), 0.0)
    hi = max(max(r.max for r in rows), 1.0)
    span = hi - lo or 1.0

    def ypix(v: float) -> float:
        return top + (hi - v) / span * plot_h

    parts = _header(width, height)
    if title:
        parts.append(
            f'<text x="{left}" y="18" font-family="sans-serif" font-size="13">'
            f"{title}</text>"
        )
    axis_y = top + plot_h
    parts.append(
        f'<line x1="{left}" y1="{axis_y}" x2="{left + plot_w}" y2="{axis_y}" '
        'stroke="black"/>'
    )
    parts.append(
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{axis_y}" stroke="black"/>'
    )
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        if lo <= tick <= hi:
            y = ypix(tick)
            parts.append(
                f'<line x1="{left - 4}" y1="{_f(y)}" x2="{left}" y2="{_f(y)}" '
                'stroke="black"/>'
                f'<text x="{left - 8}" y="{_f(y + 4)}" text-anchor="end" '
                f'font-family="sans-serif" font-size="10">{tick:g}</text>'
            )
    by_key = {(_series_label(r.method, r.params), r.n): r for r in rows}
    box_w = 10
    for si, n in enumerate(sizes):
        x0 = left + si * slot
        parts.append(
            f'<text x="{_f(x0 + slot / 2)}" y="{axis_y + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{n}</text>'
        )
        for mi, method in enumerate(methods):
            r = by_key.get((method, n))
            if r is None:
                continue
            color = _METHOD_COLORS[mi % len(_METHOD_COLORS)]
            cx = x0 + 10 + mi * 16
            y_min, y_max = ypix(r.min), ypix(r.max)
            y_q25, y_q75 = ypix(r.q25), ypix(r.q75)
            y_med = ypix(r.median)
            parts.append(
                f'<line x1="{_f(cx)}" y1="{_f(y_max)}" x2="{_f(cx)}" '
                f'y2="{_f(y_min)}" stroke="{color}"/>'
            )
            box_h = max(abs(y_q25 - y_q75), 0.5)
            parts.append(
                f'<rect x="{_f(cx - box_w / 2)}" y="{_f(y_q75)}" width="{box_w}" '
                f'height="{_f(box_h)}" fill="{color}" fill-opacity="0.45" '
                f'stroke="{color}"/>'
            )
            parts.append(
                f'<line x1="{_f(cx - box_w / 2)}" y1="{_f(y_med)}" '
                f'x2="{_f(cx + box_w / 2)}" y2="{_f(y_med)}" '
                f'stroke="{color}" stroke-width="2"/>'
            )
    legend_y = height - 12
    x = left
    for mi, method in enumerate(methods):
        color = _METHOD_COLORS[mi % len(_METHOD_COLORS)]
        parts.append(
            f'<rect x="{x}" y="{legend_y - 9}" width="10" height="10" fill="{color}"/>'
            f'<text x="{x + 14}" y="{legend_y}" font-family="sans-serif" '
            f'font-size="10">{method}</text>'
        )
        x += 14 + 7 * len(method) + 20
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
