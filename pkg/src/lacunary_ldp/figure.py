"""CSV and self-contained SVG output for sampled rate curves."""
from __future__ import annotations

import csv
import io
import math
from typing import Sequence
from xml.sax.saxutils import escape

from .ratefn import FIGURE1_SERIES, RateCurve, is_infinite

WIDTH, HEIGHT = 640, 440
MARGIN = 56


def _fmt(v) -> str:
    return "inf" if is_infinite(v) else repr(float(v))


def curves_csv(curves: Sequence[RateCurve]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x"] + [c.label for c in curves])
    for row in zip(*(c.samples for c in curves)):
        w.writerow([repr(float(row[0].x))] + [_fmt(s.value) for s in row])
    return buf.getvalue()


def curves_svg(curves: Sequence[RateCurve], colors: Sequence[str] | None = None,
               title: str = "Rate functions") -> str:
    """Polyline plot with axes and a legend; no external dependencies."""
    if colors is None:
        colors = [c for _, _, c in FIGURE1_SERIES]
    finite = [(s.x, s.value) for c in curves for s in c.samples if not is_infinite(s.value)]
    xs = [x for x, _ in finite] or [-1.0, 1.0]
    ys = [y for _, y in finite] or [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = 0.0, max(ys) if max(ys) > 0 else 1.0
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    pw, ph = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def px(x):
        return MARGIN + (x - x0) / (x1 - x0) * pw

    def py(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
        f'<line x1="{MARGIN}" y1="{py(y0):.2f}" x2="{WIDTH - MARGIN}" y2="{py(y0):.2f}" stroke="black"/>',
        f'<line x1="{px(max(x0, min(0.0, x1))):.2f}" y1="{MARGIN}" '
        f'x2="{px(max(x0, min(0.0, x1))):.2f}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    for t in (x0, 0.5 * (x0 + x1), x1):
        out.append(f'<text x="{px(t):.2f}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{t:.2f}</text>')
    for t in (y0, 0.5 * (y0 + y1), y1):
        out.append(f'<text x="{MARGIN - 6}" y="{py(t) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{t:.3f}</text>')
    for i, (curve, color) in enumerate(zip(curves, colors)):
        # break the line at infinite samples
        segments, cur = [], []
        for s in curve.samples:
            if is_infinite(s.value) or not math.isfinite(s.value):
                if cur:
                    segments.append(cur)
                cur = []
            else:
                cur.append(f"{px(s.x):.2f},{py(s.value):.2f}")
        if cur:
            segments.append(cur)
        for seg in segments:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" '
                       f'points="{" ".join(seg)}"/>')
        ly = MARGIN + 8 + 18 * i
        lx = MARGIN + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}" font-family="sans-serif" font-size="12">'
                   f'{escape(curve.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
