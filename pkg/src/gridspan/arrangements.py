"""Oriented line arrangements: sign vectors, exact feasibility, chambers and span."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .numeric import Q, fmt_rational, sign

Point = tuple[Fraction, Fraction]
SignVector = tuple[int, ...]

_SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}
_CHAR_SIGNS = {"-": -1, "0": 0, "+": 1}


class PreconditionError(ValueError):
    pass


def sv_to_str(s: SignVector) -> list[str]:
    return [_SIGN_CHARS[v] for v in s]


def sv_from_str(s: Iterable[str]) -> SignVector:
    return tuple(_CHAR_SIGNS[c] for c in s)


def pt(x, y) -> Point:
    return (Q(x), Q(y))


@dataclass(frozen=True, init=False)
class OrientedLine:
    """Line ``w . z = c`` with negative side ``w . z < c``.

    Coefficients are stored as coprime integers; only positive scaling is
    applied, so the orientation is carried by the signs.
    """

    a: int
    b: int
    c: int

    def __init__(self, w, c):
        wx, wy, cc = Q(w[0]), Q(w[1]), Q(c)
        if wx == 0 and wy == 0:
            raise ValueError("line normal must be nonzero")
        den = math.lcm(wx.denominator, wy.denominator, cc.denominator)
        a, b, k = int(wx * den), int(wy * den), int(cc * den)
        g = math.gcd(math.gcd(a, b), k)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "c", k // g)

    @property
    def w(self) -> tuple[int, int]:
        return (self.a, self.b)

    def value(self, p) -> Fraction:
        return self.a * p[0] + self.b * p[1] - self.c

    def side(self, p) -> int:
        return sign(self.value(p))

    def flipped(self) -> "OrientedLine":
        return OrientedLine((-self.a, -self.b), -self.c)

    def key(self) -> tuple[int, int, int]:
        """Orientation-free identity of the point set."""
        lead = self.a if self.a else self.b
        return (self.a, self.b, self.c) if lead > 0 else (-self.a, -self.b, -self.c)

    def norm2(self) -> int:
        return self.a * self.a + self.b * self.b

    def direction(self) -> tuple[int, int]:
        return (-self.b, self.a)

    def foot(self) -> Point:
        """Point of the line closest to the origin."""
        n2 = self.norm2()
        return (Fraction(self.a * self.c, n2), Fraction(self.b * self.c, n2))

    def dist2(self, p) -> Fraction:
        v = self.value(p)
        return v * v / self.norm2()

    @classmethod
    def through(cls, p, q, negative=None) -> "OrientedLine":
        """Line through ``p`` and ``q``; if ``negative`` is given it lands on the negative side."""
        if p[0] == q[0] and p[1] == q[1]:
            raise ValueError("line through coincident points")
        dx, dy = q[0] - p[0], q[1] - p[1]
        w = (-dy, dx)
        ln = cls(w, w[0] * p[0] + w[1] * p[1])
        if negative is not None:
            s = ln.side(negative)
            if s == 0:
                raise ValueError("orienting point lies on the line")
            if s > 0:
                ln = ln.flipped()
        return ln

    def to_json(self) -> dict:
        return {"w": [fmt_rational(self.a), fmt_rational(self.b)], "c": fmt_rational(self.c)}

    @classmethod
    def from_json(cls, d: dict) -> "OrientedLine":
        return cls((Q(d["w"][0]), Q(d["w"][1])), Q(d["c"]))

    def __repr__(self) -> str:
        return f"OrientedLine({self.a}x+{self.b}y<{self.c})"


class Arrangement(tuple):
    """Tuple of pairwise distinct oriented lines."""

    def __new__(cls, lines: Iterable[OrientedLine] = ()):
        obj = super().__new__(cls, lines)
        keys = [ln.key() for ln in obj]
        if len(set(keys)) != len(keys):
            raise ValueError("arrangement lines must be pairwise distinct")
        return obj

    def to_json(self) -> dict:
        return {"lines": [ln.to_json() for ln in self]}

    @classmethod
    def from_json(cls, d: dict) -> "Arrangement":
        return cls(OrientedLine.from_json(x) for x in d["lines"])


def as_arrangement(L) -> Arrangement:
    return L if isinstance(L, Arrangement) else Arrangement(L)


def sign_vector(p, L: Sequence[OrientedLine]) -> SignVector:
    return tuple(ln.side(p) for ln in L)


def sign_vectors(points: Iterable, L: Sequence[OrientedLine]) -> list[SignVector]:
    return [sign_vector(p, L) for p in points]


def meet(l1: OrientedLine, l2: OrientedLine) -> Optional[Point]:
    """Intersection point, or None for parallel lines."""
    det = l1.a * l2.b - l1.b * l2.a
    if det == 0:
        return None
    return (Fraction(l1.c * l2.b - l1.b * l2.c, det), Fraction(l1.a * l2.c - l1.c * l2.a, det))


def intersection_points(L: Sequence[OrientedLine]) -> list[Point]:
    """``I(L)``: distinct points lying on at least two lines."""
    seen: dict[Point, None] = {}
    for l1, l2 in itertools.combinations(L, 2):
        p = meet(l1, l2)
        if p is not None:
            seen.setdefault(p)
    return list(seen)


# ---------------------------------------------------------------------------
# feasibility

def _box_bound(L: Sequence[OrientedLine]) -> Fraction:
    m = Fraction(1)
    for p in intersection_points(L):
        m = max(m, abs(p[0]), abs(p[1]))
    for ln in L:
        f = ln.foot()
        m = max(m, abs(f[0]), abs(f[1]))
    return m + 1


def _clip(poly: list[Point], a, b, c) -> list[Point]:
    """Keep the closed half-plane ``a x + b y <= c``."""
    out: list[Point] = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp = a * p[0] + b * p[1] - c
        vq = a * q[0] + b * q[1] - c
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _area2(poly: list[Point]) -> Fraction:
    s = Fraction(0)
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        s += p[0] * q[1] - p[1] * q[0]
    return s


def strict_region(L: Sequence[OrientedLine], s: SignVector, bound: Optional[Fraction] = None) -> list[Point]:
    """Closure of the open region ``{s_i (w_i.z - c_i) > 0}`` clipped to a box holding every vertex."""
    M = _box_bound(L) if bound is None else bound
    poly: list[Point] = [(-M, -M), (M, -M), (M, M), (-M, M)]
    for ln, si in zip(L, s):
        if si < 0:
            poly = _clip(poly, ln.a, ln.b, ln.c)
        else:
            poly = _clip(poly, -ln.a, -ln.b, -ln.c)
        if len(poly) < 3:
            return []
    return poly


def _interval_nonempty(cons: list[tuple[Fraction, Fraction, int]]) -> bool:
    """Is there ``t`` with ``sign(a t + b) == s`` for all constraints?"""
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for a, b, s in cons:
        if a == 0:
            if sign(b) != s:
                return False
            continue
        root = -b / a
        # a t + b has sign s  <=>  t on one side of root
        if (a > 0) == (s > 0):
            lo = root if lo is None else max(lo, root)
        else:
            hi = root if hi is None else min(hi, root)
    return lo is None or hi is None or lo < hi


def sv_feasible(s: SignVector, L: Sequence[OrientedLine], bound: Optional[Fraction] = None) -> bool:
    """Exact test of ``s in D(L)``."""
    if len(s) != len(L):
        raise ValueError(f"sign vector of length {len(s)} for {len(L)} lines")
    zeros = [i for i, v in enumerate(s) if v == 0]
    if zeros:
        base = L[zeros[0]]
        point = None
        for i in zeros[1:]:
            p = meet(base, L[i])
            if p is not None:
                point = p
                break
            if L[i].key() != base.key():
                return False
        if point is not None:
            return sign_vector(point, L) == tuple(s)
        p0 = base.foot()
        d = base.direction()
        cons = []
        for ln, si in zip(L, s):
            a = ln.a * d[0] + ln.b * d[1]
            b = ln.value(p0)
            if si == 0:
                if a != 0 or b != 0:
                    return False
                continue
            cons.append((Fraction(a), b, si))
        return _interval_nonempty(cons)
    if not L:
        return True
    poly = strict_region(L, s, bound)
    return len(poly) >= 3 and _area2(poly) != 0


class FeasibilityOracle:
    """Reuses the box bound of one arrangement across many queries."""

    def __init__(self, L: Sequence[OrientedLine]):
        self.L = tuple(L)
        self.bound = _box_bound(self.L) if self.L else Fraction(1)

    def __call__(self, s: SignVector) -> bool:
        return sv_feasible(s, self.L, self.bound)


# ---------------------------------------------------------------------------
# chambers

def _half(d) -> int:
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_key(d):
    class K:
        __slots__ = ("d", "h")

        def __init__(s, d):
            s.d, s.h = d, _half(d)

        def __lt__(s, o):
            if s.h != o.h:
                return s.h < o.h
            return s.d[0] * o.d[1] - s.d[1] * o.d[0] > 0

    return K(d)


def chamber_witnesses(L: Sequence[OrientedLine]) -> dict[SignVector, Point]:
    """One rational point inside every chamber, keyed by its sign vector."""
    L = tuple(L)
    if not L:
        return {(): (Fraction(0), Fraction(0))}
    out: dict[SignVector, Point] = {}
    vertices: dict[Point, list[int]] = {}
    for i, j in itertools.combinations(range(len(L)), 2):
        p = meet(L[i], L[j])
        if p is not None:
            vertices.setdefault(p, [])
    if not vertices:
        # all lines parallel: order them along the common normal
        n = L[0].w
        d = L[0].direction()
        offs = sorted({Fraction(ln.c * (n[0] * ln.a + n[1] * ln.b), ln.norm2()) for ln in L})
        # point t*n/|n|^2 sits at offset t along n
        nn = n[0] * n[0] + n[1] * n[1]
        samples = [offs[0] - 1, offs[-1] + 1] + [(a + b) / 2 for a, b in zip(offs, offs[1:])]
        for t in samples:
            p = (t * n[0] / nn, t * n[1] / nn)
            out[sign_vector(p, L)] = p
        return out
    for v in vertices:
        vals = [ln.value(v) for ln in L]
        through = [i for i, x in enumerate(vals) if x == 0]
        dirs = []
        for i in through:
            dx, dy = L[i].direction()
            dirs.append((dx, dy))
            dirs.append((-dx, -dy))
        dirs.sort(key=_angle_key)
        for k in range(len(dirs)):
            d1, d2 = dirs[k], dirs[(k + 1) % len(dirs)]
            e = (d1[0] + d2[0], d1[1] + d2[1])
            lim = None
            for ln, r in zip(L, vals):
                if r == 0:
                    continue
                we = ln.a * e[0] + ln.b * e[1]
                if we != 0:
                    q = abs(r) / abs(we)
                    lim = q if lim is None or q < lim else lim
            delta = Fraction(1) if lim is None else lim / 2
            p = (v[0] + delta * e[0], v[1] + delta * e[1])
            out.setdefault(sign_vector(p, L), p)
    return out


def enumerate_chambers(L: Sequence[OrientedLine]) -> set[SignVector]:
    res = set(chamber_witnesses(L))
    assert all(0 not in s for s in res)
    return res


def is_simple(L: Sequence[OrientedLine]) -> bool:
    for i, j in itertools.combinations(range(len(L)), 2):
        p = meet(L[i], L[j])
        if p is None:
            return False
        for k in range(len(L)):
            if k != i and k != j and L[k].value(p) == 0:
                return False
    return True


# ---------------------------------------------------------------------------
# span

def _d2(p, q) -> Fraction:
    dx, dy = p[0] - q[0], p[1] - q[1]
    return dx * dx + dy * dy


def convex_hull(points: Sequence[Point]) -> list[Point]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def diameter2(points: Sequence[Point]) -> Fraction:
    hull = convex_hull(points)
    best = Fraction(0)
    for p, q in itertools.combinations(hull, 2):
        d = _d2(p, q)
        if d > best:
            best = d
    return best


def closest_pair2(points: Sequence[Point]) -> Fraction:
    """Smallest squared distance between distinct points (divide and conquer)."""
    px = sorted(set(points))
    if len(px) < 2:
        raise ValueError("need two distinct points")

    def rec(ps: list[Point]) -> tuple[Fraction, list[Point]]:
        n = len(ps)
        if n <= 3:
            best = min(_d2(p, q) for p, q in itertools.combinations(ps, 2)) if n > 1 else None
            return best, sorted(ps, key=lambda p: p[1])
        mid = n // 2
        xm = ps[mid][0]
        dl, yl = rec(ps[:mid])
        dr, yr = rec(ps[mid:])
        cands = [d for d in (dl, dr) if d is not None]
        best = min(cands) if cands else None
        # merge by y
        ys: list[Point] = []
        i = j = 0
        while i < len(yl) and j < len(yr):
            if yl[i][1] <= yr[j][1]:
                ys.append(yl[i]); i += 1
            else:
                ys.append(yr[j]); j += 1
        ys.extend(yl[i:]); ys.extend(yr[j:])
        strip = [p for p in ys if best is None or (p[0] - xm) ** 2 < best]
        for a in range(len(strip)):
            for b in range(a + 1, len(strip)):
                dy = strip[b][1] - strip[a][1]
                if best is not None and dy * dy >= best:
                    break
                d = _d2(strip[a], strip[b])
                if best is None or d < best:
                    best = d
        return best, ys

    return rec(px)[0]


def span_squared(L: Sequence[OrientedLine]) -> Fraction:
    """``span(L)^2`` over the intersection points ``I(L)``."""
    pts = intersection_points(L)
    if len(pts) < 2:
        raise ValueError(f"span needs at least two intersection points, found {len(pts)}")
    return diameter2(pts) / closest_pair2(pts)


def grid_span_bound(k: int) -> int:
    return 2 ** 9 * k ** 12


def grid_span_check(L: Sequence[OrientedLine], k: int) -> Fraction:
    """Check the grid span bound for coefficients in ``{-k..k}``; returns ``bound - span^2``."""
    if k < 1:
        raise PreconditionError("k must be positive")
    for ln in L:
        if max(abs(ln.a), abs(ln.b), abs(ln.c)) > k:
            raise PreconditionError(f"{ln} has a coefficient outside [-{k}, {k}]")
    margin = grid_span_bound(k) - span_squared(L)
    if margin < 0:
        raise AssertionError(f"grid span bound violated by {margin}")
    return margin
