"""Exact open disks and their intersection graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..graphs import Graph
from ..numeric import Q, cmp_sqrt, fmt_rational, LT


@dataclass(frozen=True)
class Disk:
    """Open disk ``B(center, sqrt(radius_sq))``; ``radius`` is set when it is rational."""

    cx: Fraction
    cy: Fraction
    radius_sq: Fraction
    radius: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "cx", Q(self.cx))
        object.__setattr__(self, "cy", Q(self.cy))
        object.__setattr__(self, "radius_sq", Q(self.radius_sq))
        if self.radius is not None:
            r = Q(self.radius)
            if r <= 0 or r * r != self.radius_sq:
                raise ValueError("radius does not match radius_sq")
            object.__setattr__(self, "radius", r)
        if self.radius_sq <= 0:
            raise ValueError("disk radius must be positive")

    @classmethod
    def of(cls, center, radius) -> "Disk":
        r = Q(radius)
        return cls(Q(center[0]), Q(center[1]), r * r, r)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return (self.cx, self.cy)

    def contains_point(self, p) -> bool:
        dx, dy = p[0] - self.cx, p[1] - self.cy
        return dx * dx + dy * dy < self.radius_sq

    def scaled(self, lam, tx=0, ty=0) -> "Disk":
        """Image under ``z -> lam z + t``."""
        lam = Q(lam)
        r = None if self.radius is None else lam * self.radius
        return Disk(lam * self.cx + tx, lam * self.cy + ty, lam * lam * self.radius_sq, r)

    def to_json(self) -> dict:
        d = {"center": [fmt_rational(self.cx), fmt_rational(self.cy)], "radius_sq": fmt_rational(self.radius_sq)}
        if self.radius is not None:
            d["radius"] = fmt_rational(self.radius)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Disk":
        r = d.get("radius")
        return cls(Q(d["center"][0]), Q(d["center"][1]), Q(d["radius_sq"]), None if r is None else Q(r))


def disks_intersect(d1: Disk, d2: Disk) -> bool:
    """Do two open disks share a point?  ``D < (r1 + r2)^2`` decided exactly."""
    dx, dy = d1.cx - d2.cx, d1.cy - d2.cy
    D = dx * dx + dy * dy
    if d1.radius is not None and d2.radius is not None:
        s = d1.radius + d2.radius
        return D < s * s
    S = d1.radius_sq + d2.radius_sq
    if D < S:
        return True
    # D - S < 2 sqrt(r1^2 r2^2)
    return cmp_sqrt((D - S) / 2, d1.radius_sq * d2.radius_sq) == LT


def disk_inside(inner: Disk, outer: Disk) -> bool:
    """Closed containment ``inner ⊆ outer``: ``|c1 - c2| <= r_out - r_in``."""
    dx, dy = inner.cx - outer.cx, inner.cy - outer.cy
    D = dx * dx + dy * dy
    # r_out - r_in >= sqrt(D) with r_out = sqrt(Ro), r_in = sqrt(Ri)
    Ro, Ri = outer.radius_sq, inner.radius_sq
    if Ri > Ro:
        return False
    if outer.radius is not None and inner.radius is not None:
        gap = outer.radius - inner.radius
        return cmp_sqrt(gap, D) != LT
    # sqrt(Ro) >= sqrt(Ri) + sqrt(D)  <=>  Ro - Ri - D >= 2 sqrt(Ri D)
    t = Ro - Ri - D
    if t < 0:
        return False
    return cmp_sqrt(t / 2, Ri * D) != LT


def disk_in_halfplane(d: Disk, w, c, side: int) -> bool:
    """Is the open disk inside the closed half-plane ``side (w.z - c) >= 0``?"""
    v = w[0] * d.cx + w[1] * d.cy - c
    if v * side <= 0:
        return False
    return v * v >= d.radius_sq * (w[0] * w[0] + w[1] * w[1])


# ---------------------------------------------------------------------------
# intersection graph

class _IntDisks:
    """All disks rescaled by one integer so centers and squared radii are integers."""

    def __init__(self, disks: Sequence[Disk]):
        L = 1
        for d in disks:
            L = math.lcm(L, d.cx.denominator, d.cy.denominator, d.radius_sq.denominator)
        self.scale = L
        self.x = [int(d.cx * L) for d in disks]
        self.y = [int(d.cy * L) for d in disks]
        self.rsq = [int(d.radius_sq * L * L) for d in disks]
        self.rad: list[Optional[int]] = []
        for d in disks:
            r = d.radius
            self.rad.append(int(r * L) if r is not None and (r * L).denominator == 1 else None)
        self.ru = [math.isqrt(v) + 1 for v in self.rsq]

    def hit(self, i: int, j: int) -> bool:
        dx, dy = self.x[i] - self.x[j], self.y[i] - self.y[j]
        D = dx * dx + dy * dy
        ri, rj = self.rad[i], self.rad[j]
        if ri is not None and rj is not None:
            s = ri + rj
            return D < s * s
        S = self.rsq[i] + self.rsq[j]
        if D < S:
            return True
        t = D - S
        return t * t < 4 * self.rsq[i] * self.rsq[j]


class _Node:
    __slots__ = ("idx", "box", "left", "right")

    def __init__(self, idx, box, left=None, right=None):
        self.idx, self.box, self.left, self.right = idx, box, left, right


_LEAF = 16


def _build(D: _IntDisks, idx: list[int], depth: int = 0) -> _Node:
    box = (
        min(D.x[i] - D.ru[i] for i in idx), max(D.x[i] + D.ru[i] for i in idx),
        min(D.y[i] - D.ru[i] for i in idx), max(D.y[i] + D.ru[i] for i in idx),
    )
    if len(idx) <= _LEAF:
        return _Node(idx, box)
    xs = [D.x[i] for i in idx]
    ys = [D.y[i] for i in idx]
    key = D.x if (max(xs) - min(xs)) >= (max(ys) - min(ys)) else D.y
    idx = sorted(idx, key=lambda i: key[i])
    mid = len(idx) // 2
    return _Node(idx, box, _build(D, idx[:mid], depth + 1), _build(D, idx[mid:], depth + 1))


def _boxes_apart(a, b) -> bool:
    return a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2]


def _pairs(D: _IntDisks, A: _Node, B: _Node, out: set) -> None:
    if _boxes_apart(A.box, B.box):
        return
    if A is B:
        if A.left is None:
            ids = A.idx
            for p in range(len(ids)):
                for q in range(p + 1, len(ids)):
                    if D.hit(ids[p], ids[q]):
                        i, j = ids[p], ids[q]
                        out.add((i, j) if i < j else (j, i))
            return
        _pairs(D, A.left, A.left, out)
        _pairs(D, A.right, A.right, out)
        _pairs(D, A.left, A.right, out)
        return
    if A.left is None and B.left is None:
        for i in A.idx:
            for j in B.idx:
                if D.hit(i, j):
                    out.add((i, j) if i < j else (j, i))
        return
    if B.left is None or (A.left is not None and len(A.idx) >= len(B.idx)):
        _pairs(D, A.left, B, out)
        _pairs(D, A.right, B, out)
    else:
        _pairs(D, A, B.left, out)
        _pairs(D, A, B.right, out)


def _box_vs_disk(D: _IntDisks, i: int, box) -> int:
    """-1 if the box misses disk i, +1 if it lies strictly inside, 0 otherwise."""
    cx, cy, rsq = D.x[i], D.y[i], D.rsq[i]
    nx = min(max(cx, box[0]), box[1])
    ny = min(max(cy, box[2]), box[3])
    if (nx - cx) ** 2 + (ny - cy) ** 2 >= rsq:
        return -1
    fx = max(abs(box[0] - cx), abs(box[1] - cx))
    fy = max(abs(box[2] - cy), abs(box[3] - cy))
    if fx * fx + fy * fy < rsq:
        return 1
    return 0


def _big_vs_tree(D: _IntDisks, i: int, node: _Node, out: set) -> None:
    rel = _box_vs_disk(D, i, node.box)
    if rel < 0:
        return
    if rel > 0:
        for j in node.idx:
            if j != i:
                out.add((i, j) if i < j else (j, i))
        return
    if node.left is None:
        for j in node.idx:
            if j != i and D.hit(i, j):
                out.add((i, j) if i < j else (j, i))
        return
    _big_vs_tree(D, i, node.left, out)
    _big_vs_tree(D, i, node.right, out)


def disk_graph_edges(disks: Sequence[Disk]) -> set[tuple[int, int]]:
    """Exact edge set of the open-disk intersection graph."""
    n = len(disks)
    if n < 2:
        return set()
    D = _IntDisks(disks)
    extent = max(max(D.x) - min(D.x), max(D.y) - min(D.y), 1)
    big = [i for i in range(n) if 64 * D.ru[i] >= extent]
    small = [i for i in range(n) if 64 * D.ru[i] < extent]
    out: set[tuple[int, int]] = set()
    for p in range(len(big)):
        for q in range(p + 1, len(big)):
            if D.hit(big[p], big[q]):
                i, j = big[p], big[q]
                out.add((i, j) if i < j else (j, i))
    if small:
        root = _build(D, small)
        _pairs(D, root, root, out)
        for i in big:
            _big_vs_tree(D, i, root, out)
    return out


def disk_graph(disks: Sequence[Disk], labels: Optional[list[str]] = None) -> Graph:
    return Graph(len(disks), disk_graph_edges(disks), list(labels or []))


def disk_graph_bruteforce(disks: Sequence[Disk]) -> set[tuple[int, int]]:
    """Reference all-pairs evaluation used to cross-check the pruned version."""
    out = set()
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            if disks_intersect(disks[i], disks[j]):
                out.add((i, j))
    return out
