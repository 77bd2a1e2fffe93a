"""SVG diagrams of a polyomino with its interval family marked."""

from __future__ import annotations

from typing import Optional

from .grid import Polyomino
from .intervals import LambdaFamily

SCALE = 40
MARGIN = 20
COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def render_svg(p: Polyomino, lam: Optional[LambdaFamily] = None) -> str:
    """SVG text; output depends only on the arguments."""
    box = p.bounding_box
    w = (box.hi.x - box.lo.x) * SCALE + 2 * MARGIN
    h = (box.hi.y - box.lo.y) * SCALE + 2 * MARGIN

    def px(x):
        return MARGIN + (x - box.lo.x) * SCALE

    def py(y):
        return MARGIN + (box.hi.y - y) * SCALE

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
        '<g class="cells">',
    ]
    for c in p.sorted_cells():
        out.append(
            f'<rect class="cell" x="{px(c.x)}" y="{py(c.y + 1)}" width="{SCALE}" height="{SCALE}" '
            'fill="#e6e6e6" stroke="#555555" stroke-width="1"/>'
        )
    out.append("</g>")
    if lam is not None:
        out.append('<g class="lambda">')
        for k, iv in enumerate(lam.members):
            if lam.special is not None and k == 0:
                out.append(
                    f'<rect class="special" data-lambda="{k}" x="{px(iv.lo.x)}" y="{py(iv.hi.y)}" '
                    f'width="{(iv.hi.x - iv.lo.x) * SCALE}" height="{(iv.hi.y - iv.lo.y) * SCALE}" '
                    'fill="#ffd92f" fill-opacity="0.45" stroke="#b8860b" stroke-width="2"/>'
                )
                continue
            color = COLORS[k % len(COLORS)]
            out.append(
                f'<line class="edge-interval" data-lambda="{k}" x1="{px(iv.lo.x)}" y1="{py(iv.lo.y)}" '
                f'x2="{px(iv.hi.x)}" y2="{py(iv.hi.y)}" stroke="{color}" stroke-width="3" '
                'stroke-opacity="0.8"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
