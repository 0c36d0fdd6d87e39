"""Closed segments, orientation tests and segment intersection graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..graphs import Graph
from ..numeric import Q, fmt_rational, sign


def orient(a, b, c) -> int:
    """+1 for a counterclockwise turn a -> b -> c, -1 clockwise, 0 collinear."""
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def order_type(points: Sequence) -> dict[tuple[int, int, int], int]:
    return {t: orient(points[t[0]], points[t[1]], points[t[2]])
            for t in itertools.combinations(range(len(points)), 3)}


@dataclass(frozen=True)
class Segment:
    a: tuple[Fraction, Fraction]
    b: tuple[Fraction, Fraction]

    def __post_init__(self):
        a = (Q(self.a[0]), Q(self.a[1]))
        b = (Q(self.b[0]), Q(self.b[1]))
        if a == b:
            raise ValueError("degenerate segment")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def to_json(self) -> list:
        return [[fmt_rational(self.a[0]), fmt_rational(self.a[1])], [fmt_rational(self.b[0]), fmt_rational(self.b[1])]]

    @classmethod
    def from_json(cls, d) -> "Segment":
        return cls((Q(d[0][0]), Q(d[0][1])), (Q(d[1][0]), Q(d[1][1])))


def _on_segment(p, q, r) -> bool:
    """For collinear p, q, r: does q lie on the closed segment [p, r]?"""
    return min(p[0], r[0]) <= q[0] <= max(p[0], r[0]) and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])


def segments_intersect(s: Segment, t: Segment) -> bool:
    """Closed-segment intersection, including touching and collinear overlap."""
    p1, q1, p2, q2 = s.a, s.b, t.a, t.b
    o1, o2 = orient(p1, q1, p2), orient(p1, q1, q2)
    o3, o4 = orient(p2, q2, p1), orient(p2, q2, q1)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(p1, p2, q1):
        return True
    if o2 == 0 and _on_segment(p1, q2, q1):
        return True
    if o3 == 0 and _on_segment(p2, p1, q2):
        return True
    if o4 == 0 and _on_segment(p2, q1, q2):
        return True
    return False


def segment_line_point(seg: Segment, w, c):
    """Point where the segment meets ``w.z = c`` or None (no intersection or overlap)."""
    va = w[0] * seg.a[0] + w[1] * seg.a[1] - c
    vb = w[0] * seg.b[0] + w[1] * seg.b[1] - c
    if va == vb or va * vb > 0:
        return None
    t = va / (va - vb)
    return (seg.a[0] + t * (seg.b[0] - seg.a[0]), seg.a[1] + t * (seg.b[1] - seg.a[1]))


def segment_graph_edges(segs: Sequence[Segment]) -> set[tuple[int, int]]:
    boxes = [(min(s.a[0], s.b[0]), max(s.a[0], s.b[0]), min(s.a[1], s.b[1]), max(s.a[1], s.b[1])) for s in segs]
    order = sorted(range(len(segs)), key=lambda i: boxes[i][0])
    out = set()
    active: list[int] = []
    for i in order:
        x0 = boxes[i][0]
        active = [j for j in active if boxes[j][1] >= x0]
        for j in active:
            bj, bi = boxes[j], boxes[i]
            if bj[3] < bi[2] or bi[3] < bj[2]:
                continue
            if segments_intersect(segs[i], segs[j]):
                out.add((i, j) if i < j else (j, i))
        active.append(i)
    return out


def segment_graph(segs: Sequence[Segment], labels=None) -> Graph:
    return Graph(len(segs), segment_graph_edges(segs), list(labels or []))
