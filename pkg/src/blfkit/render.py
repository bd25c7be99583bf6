"""Static SVG pictures of base diagrams.

Boundary circles are drawn as concentric curves (outermost first), corners
as dots spaced evenly along their circle, Lefschetz critical values as
crosses in the interior.  Output is byte-stable for a given diagram.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .diagram import FibrationDiagram, canonical_form

SIZE = 400
CENTER = SIZE / 2
OUTER = 160.0


def _f(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _radii(h: int) -> list[float]:
    if h == 0:
        return []
    if h == 1:
        return [OUTER]
    inner = 50.0
    step = (OUTER - inner) / (h - 1)
    return [OUTER - i * step for i in range(h)]


def _parity_label(circle) -> str:
    comp = circle.component
    sign = "+1" if comp.parity == 1 else "-1"
    kind = f"necklace({comp.k})" if comp.kind == "necklace" else comp.kind
    return f"{kind}, parity {sign}"


def render_svg(d: FibrationDiagram) -> str:
    d = canonical_form(d)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" '
        f'height="{SIZE + 40}" viewBox="0 0 {SIZE} {SIZE + 40}">',
        '<rect class="background" x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    radii = _radii(len(d.circles))
    if not d.circles:
        out.append(f'<text class="note" x="{_f(CENTER)}" y="{_f(CENTER)}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">closed base</text>')
    for i, (circ, r) in enumerate(zip(d.circles, radii)):
        fill = "#eef3fb" if i == 0 else "white"
        out.append(f'<circle class="boundary" cx="{_f(CENTER)}" cy="{_f(CENTER)}" r="{_f(r)}" '
                   f'fill="{fill}" stroke="black" stroke-width="2"/>')
        k = len(circ.corners)
        for j, cid in enumerate(circ.corners):
            ang = -math.pi / 2 + 2 * math.pi * j / k
            x, y = CENTER + r * math.cos(ang), CENTER + r * math.sin(ang)
            out.append(f'<circle class="corner" data-id="{escape(cid)}" cx="{_f(x)}" cy="{_f(y)}" '
                       f'r="5" fill="black"/>')
        out.append(f'<text class="parity" x="{_f(CENTER)}" y="{_f(CENTER - r + 18)}" '
                   f'text-anchor="middle" font-family="sans-serif" font-size="11">'
                   f'{escape(_parity_label(circ))}</text>')

    n = len(d.lefschetz)
    if n:
        # crosses sit between the outer curve and the next one (or the centre)
        ring = (radii[0] + radii[1]) / 2 if len(radii) > 1 else OUTER / 2
        for j, p in enumerate(d.lefschetz):
            ang = math.pi / 2 + 2 * math.pi * j / n
            x, y = CENTER + ring * math.cos(ang), CENTER + ring * math.sin(ang)
            s = 6
            out.append(f'<path class="lefschetz" data-id="{escape(p.id)}" '
                       f'd="M {_f(x - s)} {_f(y - s)} L {_f(x + s)} {_f(y + s)} '
                       f'M {_f(x - s)} {_f(y + s)} L {_f(x + s)} {_f(y - s)}" '
                       f'stroke="crimson" stroke-width="2"/>')
    caption = (f"genus {d.genus}, {len(d.circles)} boundary circle(s), "
               f"{d.corner_count} corner(s), {n} Lefschetz")
    out.append(f'<text class="caption" x="{_f(CENTER)}" y="{_f(SIZE + 25)}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13">{escape(caption)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
