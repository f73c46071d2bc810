"""SVG pictures of arrangements, for eyeballing results."""

from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from .arrangement import Arrangement
from .faces import build_subdivision, default_clip_box
from .model import Box

_FILLS = ("#dbe9f6", "#f6e3cf", "#dff2dc", "#f2dcef", "#f4f1cf", "#d9f0ef")
_STROKES = ("#1f4e89", "#b3541e", "#2c7a3a", "#8a2f7f", "#7a6d12", "#1d7470")


def _num(q) -> str:
    """Fixed-precision display coordinate; never read back."""
    s = f"{float(q):.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(arr: Arrangement, boxes=(), view: Optional[Box] = None) -> str:
    """One ``<path>`` per topoline, dots at intersection points, shaded faces.

    ``boxes`` are extra rectangles to outline, such as the squares used by
    projectivization.  The view defaults to a box around every feature and
    every extra rectangle.
    """
    boxes = tuple(boxes)
    if view is None:
        base = default_clip_box(arr)
        pts = base.corners + [c for b in boxes for c in b.corners]
        view = Box.around(pts, margin=1)
    sd = build_subdivision(arr, view)
    w = view.xmax - view.xmin
    h = view.ymax - view.ymin
    scale = 600 / max(w, h)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(w * scale)}" '
        f'height="{_num(h * scale)}" viewBox="{_num(view.xmin)} {_num(-view.ymax)} {_num(w)} {_num(h)}">',
        f'<g transform="scale(1,-1)" stroke-linejoin="round" stroke-width="{_num(2 / scale)}">',
        '<g class="faces" stroke="none">',
    ]
    for k, face in enumerate(f for f in sd.faces if f.bounded):
        pts = " ".join(f"{_num(p.x)},{_num(p.y)}" for p in sd.face_polygon(face))
        out.append(f'<polygon fill="{_FILLS[k % len(_FILLS)]}" points="{pts}"/>')
    out.append("</g>")
    for b in boxes:
        out.append(
            f'<rect class="box" x="{_num(b.xmin)}" y="{_num(b.ymin)}" width="{_num(b.xmax - b.xmin)}" '
            f'height="{_num(b.ymax - b.ymin)}" fill="none" stroke="#888888" stroke-dasharray="{_num(6 / scale)}"/>'
        )
    for k, t in enumerate(arr.lines):
        a = view.ray_exit(t.vertices[0], t.start_ray)
        b = view.ray_exit(t.vertices[-1], t.end_ray)
        chain = [a, *t.vertices, b]
        d = "M " + " L ".join(f"{_num(p.x)} {_num(p.y)}" for p in chain)
        out.append(
            f'<path class="topoline" id={quoteattr(t.id)} d="{d}" fill="none" '
            f'stroke="{_STROKES[k % len(_STROKES)]}"><title>{escape(t.id)}</title></path>'
        )
    r = _num(4 / scale)
    for p in arr.points:
        out.append(f'<circle class="point" cx="{_num(p.location.x)}" cy="{_num(p.location.y)}" r="{r}" fill="#000000"/>')
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)
