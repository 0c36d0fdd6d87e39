"""Static SVG 1.1 figures of arrangements, point configurations and instances.

Coordinates are converted to floats only when written out; nothing here is
used in a predicate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .arrangements import OrientedLine, chamber_witnesses, intersection_points, sign_vector, sv_to_str
from .numeric import sqrt_ceil

SIZE = 800
PAD = 20


def _num(x) -> str:
    return f"{float(x):.12g}"


class Canvas:
    """Maps a world box ``[x0, x1] x [y0, y1]`` to the picture with y pointing up."""

    def __init__(self, box):
        x0, x1, y0, y1 = (Fraction(v) for v in box)
        if x1 <= x0:
            x0, x1 = x0 - 1, x1 + 1
        if y1 <= y0:
            y0, y1 = y0 - 1, y1 + 1
        self.box = (x0, x1, y0, y1)
        self.scale = Fraction(SIZE - 2 * PAD) / max(x1 - x0, y1 - y0)
        self.items: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        x0, _, _, y1 = self.box
        return _num(PAD + (p[0] - x0) * self.scale), _num(PAD + (y1 - p[1]) * self.scale)

    def line(self, p, q, cls: str = "line") -> None:
        (a, b), (c, d) = self.xy(p), self.xy(q)
        self.items.append(f'<line class="{cls}" x1="{a}" y1="{b}" x2="{c}" y2="{d}"/>')

    def circle(self, c, r2, cls: str = "disk") -> None:
        x, y = self.xy(c)
        r = float(r2) ** 0.5 * float(self.scale)
        self.items.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="{r:.12g}"/>')

    def dot(self, c, cls: str = "point") -> None:
        x, y = self.xy(c)
        self.items.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="3"/>')

    def text(self, p, s: str, cls: str = "label") -> None:
        x, y = self.xy(p)
        self.items.append(f'<text class="{cls}" x="{x}" y="{y}">{escape(s)}</text>')

    def render(self, title: str = "") -> str:
        head = ('<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
                '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">\n')
        style = ("<style>.line{stroke:#222;stroke-width:1.2}.seg{stroke:#1f5fa8;stroke-width:1.5}"
                 ".disk{fill:#1f5fa8;fill-opacity:0.15;stroke:#1f5fa8;stroke-width:0.8}"
                 ".point{fill:#b22}.label{font:11px monospace;fill:#333}.chamber{font:10px monospace;fill:#666}</style>\n")
        t = f"<title>{escape(title)}</title>\n" if title else ""
        return head + t + style + "\n".join(self.items) + "\n</svg>\n"


def _clip_polygon(poly, ln: OrientedLine, side: int):
    """Keep the part of a convex polygon with ``side * value >= 0``."""
    out = []
    k = len(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        vp, vq = side * ln.value(p), side * ln.value(q)
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _box_poly(box):
    x0, x1, y0, y1 = box
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def arrangement_box(L: Sequence[OrientedLine], extra: Sequence = ()) -> tuple:
    """Bounding box of all intersection points (and extra points) with a 10% margin."""
    pts = list(intersection_points(L)) + list(extra)
    if not pts:
        pts = [ln.foot() for ln in L] or [(Fraction(0), Fraction(0))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    ext = max(x1 - x0, y1 - y0) or Fraction(1)
    mx = ext / 10
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    h = ext / 2 + mx
    return (cx - h, cx + h, cy - h, cy + h)


def _line_in_box(ln: OrientedLine, box):
    """Endpoints of the line clipped to the box, or None."""
    x0, x1, y0, y1 = box
    cand = []
    a, b, c = ln.a, ln.b, ln.c
    if b != 0:
        for x in (x0, x1):
            y = (c - a * x) / Fraction(b)
            if y0 <= y <= y1:
                cand.append((x, y))
    if a != 0:
        for y in (y0, y1):
            x = (c - b * y) / Fraction(a)
            if x0 <= x <= x1:
                cand.append((x, y))
    cand = sorted(set(cand))
    if len(cand) < 2:
        return None
    return cand[0], cand[-1]


def render_arrangement(L: Sequence[OrientedLine], points: Sequence = (), chambers: bool = True,
                       title: str = "arrangement") -> str:
    box = arrangement_box(L, points)
    cv = Canvas(box)
    for ln in L:
        seg = _line_in_box(ln, box)
        if seg is not None:
            cv.line(*seg)
    if chambers:
        for s in sorted(chamber_witnesses(L)):
            poly = _box_poly(box)
            for ln, si in zip(L, s):
                poly = _clip_polygon(poly, ln, si)
                if not poly:
                    break
            if poly:
                c = (sum(p[0] for p in poly) / len(poly), sum(p[1] for p in poly) / len(poly))
                cv.text(c, "".join(sv_to_str(s)), "chamber")
    for p in points:
        cv.dot(p)
        cv.text(p, "".join(sv_to_str(sign_vector(p, L))))
    return cv.render(title)


def render_configuration(cfg, title: str = "configuration") -> str:
    """Finite points with their labels and the two lines of every construction step."""
    finite = {i: p.euclidean() for i, p in enumerate(cfg.points) if p.is_finite}
    if not finite:
        return Canvas((0, 1, 0, 1)).render(title)
    xs = [p[0] for p in finite.values()]
    ys = [p[1] for p in finite.values()]
    ext = max(max(xs) - min(xs), max(ys) - min(ys)) or Fraction(1)
    m = ext / 10
    cv = Canvas((min(xs) - m, max(xs) + m, min(ys) - m, max(ys) + m))
    drawn = set()
    for step in cfg.steps:
        if step is None:
            continue
        for pair in ((step[0], step[1]), (step[2], step[3])):
            if pair[0] in finite and pair[1] in finite and pair not in drawn:
                drawn.add(pair)
                cv.line(finite[pair[0]], finite[pair[1]])
    for i, p in finite.items():
        cv.dot(p)
        cv.text(p, cfg.labels[i] or str(i))
    infinite = [cfg.labels[i] or str(i) for i, p in enumerate(cfg.points) if not p.is_finite]
    if infinite:
        cv.text((cv.box[0], cv.box[2]), "at infinity: " + ", ".join(infinite))
    return cv.render(title)


def render_instance(bundle, title: Optional[str] = None) -> str:
    if bundle.kind == "seg":
        pts = [p for s in bundle.segments for p in (s.a, s.b)]
    else:
        pts = []
        for d in bundle.disks:
            r = d.radius if d.radius is not None else sqrt_ceil(d.radius_sq, 20)
            pts += [(d.cx - r, d.cy - r), (d.cx + r, d.cy + r)]
    xs = [p[0] for p in pts] or [0]
    ys = [p[1] for p in pts] or [0]
    cv = Canvas((min(xs), max(xs), min(ys), max(ys)))
    if bundle.kind == "seg":
        for s in bundle.segments:
            cv.line(s.a, s.b, "seg")
    else:
        for d in bundle.disks:
            cv.circle(d.center, d.radius_sq)
    return cv.render(title or f"{bundle.kind} instance")
