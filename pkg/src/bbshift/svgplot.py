"""Minimal native SVG log-log chart, no plotting dependency.

Series are drawn as |value| on log axes; runs of negative values are drawn
dashed, positive runs solid, so sign information survives the magnitude
plot. Zeros and non-finite points break the line. Output is deterministic
text (fixed float formatting) so charts can be diffed.
"""

from __future__ import annotations

import math

__all__ = ["render_loglog"]

_W, _H = 640, 460
_ML, _MR, _MT, _MB = 64, 16, 28, 46
_COLORS = ("#1f6fb2", "#c44e1d", "#3a8f3a", "#7a4fa3")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _decades(lo: float, hi: float):
    first = math.floor(math.log10(lo))
    last = math.ceil(math.log10(hi))
    return [10.0**k for k in range(first, last + 1) if lo <= 10.0**k <= hi]


def _runs(xs, ys):
    """Split one series into sign-constant runs of plottable points."""
    run, sign = [], 0
    for x, y in zip(xs, ys):
        if not (math.isfinite(y) and y != 0.0 and x > 0.0):
            if len(run) > 1:
                yield sign, run
            run, sign = [], 0
            continue
        s = 1 if y > 0 else -1
        if sign != 0 and s != sign:
            if len(run) > 1:
                yield sign, run
            run = []
        sign = s
        run.append((x, abs(y)))
    if len(run) > 1:
        yield sign, run


def render_loglog(
    xs,
    series,
    title: str = "",
    x_label: str = "theta",
    y_label: str = "magnitude",
) -> str:
    """Render series = [(label, values), ...] against xs on log-log axes."""
    pts = [
        (x, abs(y))
        for _, ys in series
        for x, y in zip(xs, ys)
        if x > 0.0 and math.isfinite(y) and y != 0.0
    ]
    if not pts:
        raise ValueError("nothing to plot: no positive-x, nonzero, finite points")
    xlo, xhi = min(p[0] for p in pts), max(p[0] for p in pts)
    ylo, yhi = min(p[1] for p in pts), max(p[1] for p in pts)
    if xlo == xhi:
        xlo, xhi = xlo / 2.0, xhi * 2.0
    if ylo == yhi:
        ylo, yhi = ylo / 2.0, yhi * 2.0
    lx0, lx1 = math.log10(xlo), math.log10(xhi)
    ly0, ly1 = math.log10(ylo), math.log10(yhi)

    def px(x):
        return _ML + (math.log10(x) - lx0) / (lx1 - lx0) * (_W - _ML - _MR)

    def py(y):
        return _H - _MB - (math.log10(y) - ly0) / (ly1 - ly0) * (_H - _MT - _MB)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="monospace" font-size="11">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{_W / 2:.0f}" y="18" text-anchor="middle">{title}</text>'
        )
    # frame
    out.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_W - _ML - _MR}" '
        f'height="{_H - _MT - _MB}" fill="none" stroke="#333"/>'
    )
    for xt in _decades(xlo, xhi):
        out.append(
            f'<line x1="{_fmt(px(xt))}" y1="{_H - _MB}" x2="{_fmt(px(xt))}" '
            f'y2="{_H - _MB + 4}" stroke="#333"/>'
        )
        out.append(
            f'<text x="{_fmt(px(xt))}" y="{_H - _MB + 16}" '
            f'text-anchor="middle">1e{int(math.log10(xt))}</text>'
        )
    for yt in _decades(ylo, yhi):
        out.append(
            f'<line x1="{_ML - 4}" y1="{_fmt(py(yt))}" x2="{_ML}" '
            f'y2="{_fmt(py(yt))}" stroke="#333"/>'
        )
        out.append(
            f'<text x="{_ML - 6}" y="{_fmt(py(yt) + 3)}" '
            f'text-anchor="end">1e{int(math.log10(yt))}</text>'
        )
    out.append(
        f'<text x="{(_ML + _W - _MR) / 2:.0f}" y="{_H - 8}" '
        f'text-anchor="middle">{x_label}</text>'
    )
    out.append(
        f'<text x="14" y="{(_MT + _H - _MB) / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {(_MT + _H - _MB) / 2:.0f})">{y_label}</text>'
    )
    for i, (label, ys) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        for sign, run in _runs(xs, ys):
            path = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in run)
            dash = ' stroke-dasharray="6 4"' if sign < 0 else ""
            out.append(
                f'<polyline points="{path}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"{dash}/>'
            )
        ly = _MT + 14 + 14 * i
        dash = ""
        first = next(iter(_runs(xs, ys)), None)
        if first is not None and first[0] < 0:
            dash = ' stroke-dasharray="6 4"'
        out.append(
            f'<line x1="{_ML + 8}" y1="{ly}" x2="{_ML + 36}" y2="{ly}" '
            f'stroke="{color}" stroke-width="1.5"{dash}/>'
        )
        out.append(f'<text x="{_ML + 42}" y="{ly + 3}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
