"""Projective-plane kernel: homogeneous points and lines, cross ratios,
projective maps and constructible point configurations built from
Von Staudt sequences.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .numeric import Q


class DegenerateInput(ValueError):
    """Two inputs that should be distinct coincide, or a triple is collinear."""


class NotCollinear(ValueError):
    pass


class Indeterminate(ValueError):
    pass


INFINITY = "infinity"


def _canonical_triple(x, y, z) -> tuple[int, int, int]:
    x, y, z = Q(x), Q(y), Q(z)
    if x == 0 and y == 0 and z == 0:
        raise DegenerateInput("homogeneous coordinates (0,0,0)")
    den = math.lcm(x.denominator, y.denominator, z.denominator)
    a, b, c = int(x * den), int(y * den), int(z * den)
    g = math.gcd(math.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    lead = a if a else (b if b else c)
    if lead < 0:
        a, b, c = -a, -b, -c
    return a, b, c


@dataclass(frozen=True, init=False)
class HomPoint:
    """Point ``(x:y:z)`` of the real projective plane, stored canonically."""

    x: int
    y: int
    z: int

    def __init__(self, x, y, z=1):
        a, b, c = _canonical_triple(x, y, z)
        object.__setattr__(self, "x", a)
        object.__setattr__(self, "y", b)
        object.__setattr__(self, "z", c)

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    @property
    def is_finite(self) -> bool:
        return self.z != 0

    def euclidean(self) -> tuple[Fraction, Fraction]:
        if self.z == 0:
            raise ValueError(f"{self} lies on the line at infinity")
        return Fraction(self.x, self.z), Fraction(self.y, self.z)

    def __repr__(self) -> str:
        return f"({self.x}:{self.y}:{self.z})"


@dataclass(frozen=True, init=False)
class ProjLine:
    """Line ``{p : a p_x + b p_y + c p_z = 0}``; the line at infinity is (0:0:1)."""

    a: int
    b: int
    c: int

    def __init__(self, a, b, c):
        u, v, w = _canonical_triple(a, b, c)
        object.__setattr__(self, "a", u)
        object.__setattr__(self, "b", v)
        object.__setattr__(self, "c", w)

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def contains(self, p: HomPoint) -> bool:
        return self.a * p.x + self.b * p.y + self.c * p.z == 0

    def __repr__(self) -> str:
        return f"[{self.a}:{self.b}:{self.c}]"


LINE_AT_INFINITY = ProjLine(0, 0, 1)

P0 = HomPoint(0, 0, 1)
P_INF = HomPoint(1, 0, 0)
QPT = HomPoint(0, 1, 0)
RPT = HomPoint(1, 1, 1)


def P(a) -> HomPoint:
    """The point ``(a:0:1)`` encoding the number ``a`` on the x-axis."""
    return HomPoint(Q(a), 0, 1)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _det(u, v, w):
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def det3(u, v, w) -> Fraction:
    """Bracket ``[u,v,w]`` of three points (canonical representatives) or triples."""
    tr = [p.coords if isinstance(p, (HomPoint, ProjLine)) else tuple(Q(c) for c in p) for p in (u, v, w)]
    return Fraction(_det(*tr))


def collinear(p: HomPoint, q: HomPoint, r: HomPoint) -> bool:
    return _det(p.coords, q.coords, r.coords) == 0


def join(p: HomPoint, q: HomPoint) -> ProjLine:
    if p == q:
        raise DegenerateInput(f"join of coincident points {p}")
    return ProjLine(*_cross(p.coords, q.coords))


def meet(l1: ProjLine, l2: ProjLine) -> HomPoint:
    if l1 == l2:
        raise DegenerateInput(f"meet of coincident lines {l1}")
    return HomPoint(*_cross(l1.coords, l2.coords))


_REFERENCE_POINTS = (HomPoint(1, 0, 0), HomPoint(0, 1, 0), HomPoint(0, 0, 1), HomPoint(1, 1, 1))


def _common_line(points: Sequence[HomPoint]) -> ProjLine:
    distinct = list(dict.fromkeys(points))
    if len(distinct) < 2:
        raise Indeterminate("cross ratio of four equal points")
    line = join(distinct[0], distinct[1])
    for p in distinct[2:]:
        if not line.contains(p):
            raise NotCollinear(f"points {points} are not collinear")
    return line


def cross_ratio(a: HomPoint, b: HomPoint, c: HomPoint, d: HomPoint, ref: Optional[HomPoint] = None):
    """``[p,a,c][p,b,d] / ([p,a,d][p,b,c])`` for collinear a,b,c,d.

    ``p`` defaults to the first of e1, e2, e3, (1:1:1) off the common line.
    Returns ``INFINITY`` when only the denominator vanishes.
    """
    line = _common_line([a, b, c, d])
    if ref is None:
        ref = next(p for p in _REFERENCE_POINTS if not line.contains(p))
    elif line.contains(ref):
        raise DegenerateInput("reference point lies on the common line")
    num = det3(ref, a, c) * det3(ref, b, d)
    den = det3(ref, a, d) * det3(ref, b, c)
    if den == 0:
        if num == 0:
            raise Indeterminate("cross ratio 0/0")
        return INFINITY
    return num / den


@dataclass(frozen=True)
class ProjectiveMap:
    """Nonsingular 3x3 rational matrix acting on column vectors."""

    m: tuple[tuple[Fraction, Fraction, Fraction], ...]

    def __post_init__(self):
        rows = tuple(tuple(Q(v) for v in row) for row in self.m)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("projective map needs a 3x3 matrix")
        object.__setattr__(self, "m", rows)
        if self.det() == 0:
            raise DegenerateInput("singular projective map")

    @classmethod
    def identity(cls) -> "ProjectiveMap":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def det(self) -> Fraction:
        return Fraction(_det(*self.m))

    def __call__(self, p: HomPoint) -> HomPoint:
        return apply_map(self, p)

    def compose(self, other: "ProjectiveMap") -> "ProjectiveMap":
        """``self o other``."""
        a, b = self.m, other.m
        return ProjectiveMap(tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3)))

    def inverse(self) -> "ProjectiveMap":
        m = self.m
        adj = [[Fraction(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                minor = [[m[r][c] for c in range(3) if c != j] for r in range(3) if r != i]
                adj[j][i] = (-1) ** (i + j) * (minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0])
        d = self.det()
        return ProjectiveMap(tuple(tuple(v / d for v in row) for row in adj))


def apply_map(T: ProjectiveMap, p):
    """Image of a point, or of a line (via the inverse transpose)."""
    if isinstance(p, ProjLine):
        inv = T.inverse().m
        v = p.coords
        return ProjLine(*(sum(inv[k][j] * v[k] for k in range(3)) for j in range(3)))
    v = p.coords
    return HomPoint(*(sum(T.m[i][k] * v[k] for k in range(3)) for i in range(3)))


def _solve3(cols, rhs) -> list[Fraction]:
    """Solve ``[cols] x = rhs`` by Cramer's rule."""
    d = _det(*cols)
    if d == 0:
        raise DegenerateInput("singular 3x3 system")
    out = []
    for i in range(3):
        c = list(cols)
        c[i] = rhs
        out.append(Fraction(_det(*c)) / d)
    return out


def _frame_map(pts: Sequence[HomPoint]) -> ProjectiveMap:
    """Map e1, e2, e3, (1:1:1) onto ``pts``."""
    for i, j, k in itertools.combinations(range(4), 3):
        if collinear(pts[i], pts[j], pts[k]):
            raise DegenerateInput(f"points {i + 1},{j + 1},{k + 1} of the quadruple are collinear")
    vs = [tuple(Fraction(c) for c in p.coords) for p in pts]
    lam = _solve3(vs[:3], vs[3])
    # columns are lambda_i v_i
    cols = [[lam[i] * vs[i][r] for r in range(3)] for i in range(3)]
    return ProjectiveMap(tuple(tuple(cols[c][r] for c in range(3)) for r in range(3)))


def map_from_4_points(src: Sequence[HomPoint], dst: Sequence[HomPoint]) -> ProjectiveMap:
    """Projective map sending ``src[i]`` to ``dst[i]``; both in general position."""
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("need exactly four source and four target points")
    T = _frame_map(dst).compose(_frame_map(src).inverse())
    for s, t in zip(src, dst):
        if apply_map(T, s) != t:  # pragma: no cover - exact arithmetic
            raise AssertionError("four-point map failed post-check")
    return T


# ---------------------------------------------------------------------------
# constructible configurations

Step = Optional[tuple[int, int, int, int]]


@dataclass
class PointConfiguration:
    """Ordered points with construction steps.

    ``steps[i]`` is None for the four initial points, otherwise the 0-based
    quadruple ``(j1, j2, j3, j4)`` with ``p_i = l(p_j1,p_j2) meet l(p_j3,p_j4)``.
    """

    points: list[HomPoint] = field(default_factory=list)
    steps: list[Step] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p: HomPoint) -> int:
        return self.points.index(p)

    def copy(self) -> "PointConfiguration":
        return PointConfiguration(list(self.points), list(self.steps), list(self.labels))

    def extend(self, point: HomPoint, step: Step, label: str = "") -> int:
        """Append a point; a duplicate is not appended and its first index is returned."""
        if point in self.points:
            return self.points.index(point)
        self.points.append(point)
        self.steps.append(step)
        self.labels.append(label)
        return len(self.points) - 1

    def construct(self, q: tuple[int, int, int, int], label: str = "") -> int:
        j1, j2, j3, j4 = q
        pts = self.points
        l1 = join(pts[j1], pts[j2])
        l2 = join(pts[j3], pts[j4])
        if l1 == l2:
            raise DegenerateInput(f"construction lines of step {q} coincide")
        return self.extend(meet(l1, l2), q, label)

    def to_json(self) -> dict:
        from .numeric import fmt_rational

        return {
            "points": [[fmt_rational(c) for c in p.coords] for p in self.points],
            "steps": [None if s is None else list(s) for s in self.steps],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PointConfiguration":
        pts = [HomPoint(*(Q(c) for c in row)) for row in data["points"]]
        steps = [None if s is None else tuple(int(v) for v in s) for s in data["steps"]]
        labels = list(data.get("labels") or [""] * len(pts))
        return cls(pts, steps, labels)


@dataclass
class ConstructibilityReport:
    ok: bool
    index: Optional[int] = None
    condition: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_constructible(cfg: PointConfiguration) -> ConstructibilityReport:
    """Validate the frame condition and every intersection step exactly."""
    pts = cfg.points
    if len(pts) < 4:
        return ConstructibilityReport(False, len(pts), "fewer than four points")
    for i in range(4):
        if cfg.steps[i] is not None:
            return ConstructibilityReport(False, i, "initial point carries a step")
    for i, j in itertools.combinations(range(4), 2):
        if pts[i] == pts[j]:
            return ConstructibilityReport(False, j, "initial points coincide")
    for i, j, k in itertools.combinations(range(4), 3):
        if collinear(pts[i], pts[j], pts[k]):
            return ConstructibilityReport(False, k, "three initial points collinear")
    for i in range(4, len(pts)):
        step = cfg.steps[i]
        if step is None or len(step) != 4:
            return ConstructibilityReport(False, i, "missing construction step")
        if any(not 0 <= j < i for j in step):
            return ConstructibilityReport(False, i, "step refers to a later point")
        j1, j2, j3, j4 = step
        if pts[j1] == pts[j2] or pts[j3] == pts[j4]:
            return ConstructibilityReport(False, i, "step line through coincident points")
        l1, l2 = join(pts[j1], pts[j2]), join(pts[j3], pts[j4])
        if l1 == l2:
            return ConstructibilityReport(False, i, "step lines coincide")
        if meet(l1, l2) != pts[i]:
            return ConstructibilityReport(False, i, "point is not the intersection of its step lines")
    return ConstructibilityReport(True)


def frame_configuration() -> PointConfiguration:
    """``(P_0, P_inf, Q, R)``."""
    return PointConfiguration([P0, P_INF, QPT, RPT], [None] * 4, ["P0", "Pinf", "Q", "R"])


@dataclass
class Frame:
    """Indices of the distinguished points inside a configuration."""

    p0: int = 0
    pinf: int = 1
    q: int = 2
    r: int = 3


def von_staudt_extend(cfg: PointConfiguration, mode: str, a_idx: int = -1, b_idx: int = -1,
                      frame: Frame = Frame()) -> PointConfiguration:
    """Append the Von Staudt sequence for one, addition or multiplication.

    Returns a new configuration; the last appended (or reused) point is
    checked to be ``P_1``, ``P_{a+b}`` or ``P_{a*b}``.
    """
    out = cfg.copy()
    F = frame
    pts = out.points
    if mode == "one":
        last = out.construct((F.r, F.q, F.p0, F.pinf), "O1")
        expect = P(1)
    elif mode in ("add", "mul"):
        pa, pb = pts[a_idx], pts[b_idx]
        if pa.y != 0 or pa.z == 0 or pb.y != 0 or pb.z == 0:
            raise ValueError("operands must be finite points on l(P0, Pinf)")
        a, b = pa.euclidean()[0], pb.euclidean()[0]
        if mode == "add":
            a1 = out.construct((F.r, F.pinf, a_idx, F.q), "A1")
            a2 = out.construct((F.p0, a1, F.pinf, F.q), "A2")
            a3 = out.construct((b_idx, a2, F.r, F.pinf), "A3")
            last = out.construct((a3, F.q, F.p0, F.pinf), "A4")
            expect = P(a + b)
        else:
            m1 = out.construct((F.p0, F.r, b_idx, F.q), "M1")
            m2 = out.construct((a_idx, F.r, F.pinf, F.q), "M2")
            last = out.construct((m1, m2, F.p0, F.pinf), "M3")
            expect = P(a * b)
    else:
        raise ValueError(f"unknown Von Staudt mode {mode!r}")
    if out.points[last] != expect:  # pragma: no cover - would be a kernel bug
        raise AssertionError(f"Von Staudt {mode} ended at {out.points[last]}, expected {expect}")
    out.last = last  # type: ignore[attr-defined]
    return out


@dataclass
class GPSConfig:
    config: PointConfiguration
    i1: int
    i2: int
    i5: int
    i_last: int
    raw_count: int
    squarings: int

    @property
    def cross(self):
        p = self.config.points
        return cross_ratio(p[self.i5], p[self.i_last], p[self.i2], p[self.i1])


def build_gps_config(s: int) -> GPSConfig:
    """Frame, ``P_1``, ``P_{1+1}``, then ``s`` squarings ending at ``P_{2^(2^s)}``.

    ``raw_count`` counts the sequence before duplicate points were dropped.
    """
    if s < 0:
        raise ValueError("number of squarings must be >= 0")
    cfg = frame_configuration()
    raw = 4
    cfg = von_staudt_extend(cfg, "one")
    raw += 1
    one = cfg.last  # type: ignore[attr-defined]
    cfg = von_staudt_extend(cfg, "add", one, one)
    raw += 4
    cur = cfg.last  # type: ignore[attr-defined]
    for _ in range(s):
        cfg = von_staudt_extend(cfg, "mul", cur, cur)
        raw += 3
        cur = cfg.last  # type: ignore[attr-defined]
    out = GPSConfig(cfg, 0, 1, one, cur, raw, s)
    if out.cross != 2 ** (2 ** s):  # pragma: no cover
        raise AssertionError("GPS configuration has the wrong cross ratio")
    return out


def _chart_family():
    """Maps ``(x,y,z) -> (x, y, a x + b y + z)`` ordered by ``max(|a|,|b|)``."""
    yield ProjectiveMap.identity()
    for h in itertools.count(1):
        for a in range(-h, h + 1):
            for b in range(-h, h + 1):
                if max(abs(a), abs(b)) == h:
                    yield ProjectiveMap(((1, 0, 0), (0, 1, 0), (a, b, 1)))


def euclidean_chart(cfg: PointConfiguration, prefer_positive: bool = True):
    """Move every point off the line at infinity by the first suitable map.

    Any finite configuration is handled: each point excludes one line of
    ``(a, b)`` parameters, so the integer search terminates.
    """
    for T in _chart_family():
        imgs = [apply_map(T, p) for p in cfg.points]
        if all(p.z != 0 for p in imgs):
            return PointConfiguration(imgs, list(cfg.steps), list(cfg.labels)), T
    raise AssertionError("unreachable")  # pragma: no cover
