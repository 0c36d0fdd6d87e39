"""Segment-graph instance: a fixed base frame plus one segment per line and two legs per point.

The frame consists of two vertical rails y1 (x = 0) and y2 (x = 10), four
horizontal bars x1..x4 at heights 9, 6, 4, 1 and three short segments t, m, b
sitting in the three boxes between consecutive bars.  The hard pair is mapped
affinely so that its points lie in the middle box and each line crosses both
rails strictly between the bars x2 and x3.  The order-forcing supergraph that
makes the frame rigid in every realization is not built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..arrangements import OrientedLine, sign_vector
from ..errors import ConstructionFailure
from ..graphs import Graph
from ..numeric import pow2_floor
from .instances import InstanceBundle, source_digest
from .segments import Segment, orient, segment_graph_edges

F = Fraction

RAIL_X = (F(0), F(10))
BAR_Y = (F(9), F(6), F(4), F(1))
FRAME_LABELS = ("x1", "x2", "x3", "x4", "y1", "y2", "t", "m", "b")
CENTER = (F(5), F(5))


def frame_segments() -> dict[str, Segment]:
    out = {}
    for i, y in enumerate(BAR_Y):
        out[f"x{i + 1}"] = Segment((F(-1), y), (F(11), y))
    out["y1"] = Segment((RAIL_X[0], F(0)), (RAIL_X[0], F(10)))
    out["y2"] = Segment((RAIL_X[1], F(0)), (RAIL_X[1], F(10)))
    out["t"] = Segment((F(1), F(15, 2)), (F(9), F(15, 2)))
    out["m"] = Segment((F(5), F(9, 2)), (F(5), F(11, 2)))
    out["b"] = Segment((F(1), F(5, 2)), (F(9), F(5, 2)))
    return out


def _box(upper: int) -> list:
    """Corners (counterclockwise) of the quadrilateral between bars x_upper and x_{upper+1}."""
    y0, y1 = BAR_Y[upper + 1], BAR_Y[upper]
    return [(RAIL_X[0], y0), (RAIL_X[1], y0), (RAIL_X[1], y1), (RAIL_X[0], y1)]


def in_open_convex(poly, p) -> bool:
    k = len(poly)
    return all(orient(poly[i], poly[(i + 1) % k], p) > 0 for i in range(k))


def _rail_hits(seg: Segment, x) -> F:
    (ax, ay), (bx, by) = seg.a, seg.b
    return ay + (x - ax) * (by - ay) / (bx - ax)


@dataclass
class FrameCertificate:
    s1: bool
    s2: bool
    s3: bool
    details: list

    @property
    def ok(self) -> bool:
        return self.s1 and self.s2 and self.s3

    def to_json(self) -> dict:
        return {"S1": self.s1, "S2": self.s2, "S3": self.s3, "ok": self.ok, "details": self.details}


def certify_frame(S: dict[str, Segment]) -> FrameCertificate:
    """Check the three frame properties exactly.

    S1: t, m, b lie in the open top, middle and bottom boxes (both endpoints,
    boxes are convex).  S2: each rail meets x1..x4 in index order.  S3: a line
    crossing both rails strictly between x2 and x3 has, over the rail strip,
    height strictly between those bars (convex combination), so it suffices
    that t lies strictly above x2 and b strictly below x3 inside the strip.
    """
    details = []
    boxes = {"t": _box(0), "m": _box(1), "b": _box(2)}
    s1 = True
    for name, poly in boxes.items():
        seg = S[name]
        if not (in_open_convex(poly, seg.a) and in_open_convex(poly, seg.b)):
            s1 = False
            details.append(f"S1: {name} leaves its box")
    s2 = True
    for rail in ("y1", "y2"):
        r = S[rail]
        if r.a[0] != r.b[0]:
            s2 = False
            details.append(f"S2: {rail} not vertical")
            continue
        hs = []
        for i in range(4):
            bar = S[f"x{i + 1}"]
            lo, hi = sorted((r.a[1], r.b[1]))
            if bar.a[1] != bar.b[1] or not (min(bar.a[0], bar.b[0]) <= r.a[0] <= max(bar.a[0], bar.b[0])) \
                    or not (lo <= bar.a[1] <= hi):
                s2 = False
                details.append(f"S2: {rail} misses x{i + 1}")
            hs.append(bar.a[1])
        if s2 and not all(hs[i] > hs[i + 1] for i in range(3)):
            s2 = False
            details.append(f"S2: {rail} order wrong")
    s3 = True
    lo, hi = S["x3"].a[1], S["x2"].a[1]
    for name, above in (("t", True), ("b", False)):
        seg = S[name]
        for p in (seg.a, seg.b):
            if not (RAIL_X[0] <= p[0] <= RAIL_X[1]):
                s3 = False
            if above and not p[1] >= hi:
                s3 = False
            if not above and not p[1] <= lo:
                s3 = False
    if not s3:
        details.append("S3: t or b not separated from the middle band")
    return FrameCertificate(s1, s2, s3, details)


# ---------------------------------------------------------------------------
# affine normalisation

@dataclass(frozen=True)
class Affine:
    """z -> (alpha (x + h y - x0) + 5, beta (y - y0) + 5) with alpha, beta > 0."""
    h: int
    x0: F
    y0: F
    alpha: F
    beta: F

    def __call__(self, p):
        return (self.alpha * (p[0] + self.h * p[1] - self.x0) + CENTER[0], self.beta * (p[1] - self.y0) + CENTER[1])

    def line(self, ln: OrientedLine) -> OrientedLine:
        # a x + b y = c with x = (X - 5)/alpha + x0 - h y, y = (Y - 5)/beta + y0
        a, b, c = ln.a, ln.b, ln.c
        bb = b - a * self.h
        wx, wy = F(a) / self.alpha, F(bb) / self.beta
        cc = c - a * self.x0 - bb * self.y0 + wx * CENTER[0] + wy * CENTER[1]
        return OrientedLine((wx, wy), cc)


def _height_at(ln: OrientedLine, x) -> F:
    return (ln.c - ln.a * x) / F(ln.b)


def normalise(L: Sequence[OrientedLine], P: Sequence) -> Affine:
    """Affine map putting P in the middle box and every line through m and both rail windows."""
    bad = {F(ln.b, ln.a) for ln in L if ln.a != 0}
    h = 0
    while F(h) in bad:
        h += 1
    sheared = [(p[0] + h * p[1], p[1]) for p in P]
    xs = [p[0] for p in sheared]
    ys = [p[1] for p in P]
    x0, y0 = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    wx = max(max(xs) - x0, F(1))
    alpha = pow2_floor(1 / (2 * wx))
    ident = Affine(h, x0, y0, F(1), F(1))
    base = [ident.line(ln) for ln in L]      # sheared and centred, unit scale
    # each line in base coordinates: Y - 5 = s (X - 5) + d
    need = F(0)
    for ln in base:
        s = F(-ln.a, ln.b)
        d = _height_at(ln, CENTER[0]) - CENTER[1]
        need = max(need, abs(d) + abs(s) * 5 / alpha)
    wy = max(max(ys) - y0, F(1))
    beta = pow2_floor(min(F(1, 4) / need if need else F(1), F(1, 2) / wy, alpha))
    T = Affine(h, x0, y0, alpha, beta)
    _check_normalised(T, L, P)
    return T


def _check_normalised(T: Affine, L, P) -> None:
    mid = _box(1)
    for p in P:
        if not in_open_convex(mid, T(p)):
            raise ConstructionFailure("normalised point outside the middle box")
    m = frame_segments()["m"]
    for ln in L:
        lt = T.line(ln)
        if lt.b == 0:
            raise ConstructionFailure("normalised line is vertical")
        for x in RAIL_X:
            y = _height_at(lt, x)
            if not (BAR_Y[2] < y < BAR_Y[1]):
                raise ConstructionFailure("normalised line misses a rail window")
        ym = _height_at(lt, m.a[0])
        if not (min(m.a[1], m.b[1]) <= ym <= max(m.a[1], m.b[1])):
            raise ConstructionFailure("normalised line misses m")


# ---------------------------------------------------------------------------
# builder and read-back

def build_seg_instance(hp) -> tuple[InstanceBundle, FrameCertificate]:
    frame = frame_segments()
    cert = certify_frame(frame)
    if not cert.ok:
        raise ConstructionFailure(f"frame certificate failed: {cert.details}")
    L, P = list(hp.lines), list(hp.points)
    T = normalise(L, P)
    segs, roles = [], []
    for name in FRAME_LABELS:
        segs.append(frame[name])
        roles.append(["frame", name])
    for i, ln in enumerate(L):
        lt = T.line(ln)
        segs.append(Segment((RAIL_X[0], _height_at(lt, RAIL_X[0])), (RAIL_X[1], _height_at(lt, RAIL_X[1]))))
        roles.append(["line", i])
    ty, by = frame["t"].a[1], frame["b"].a[1]
    for j, p in enumerate(P):
        q = T(p)
        segs.append(Segment(q, (q[0], ty)))
        roles.append(["leg_t", j])
        segs.append(Segment(q, (q[0], by)))
        roles.append(["leg_b", j])
    graph = Graph(len(segs), segment_graph_edges(segs))
    t_side = [ln.side(_preimage_probe(T, frame["t"])) for ln in L]
    bundle = InstanceBundle("seg", graph, [], segs, roles, source_digest(hp),
                            {"affine": {"shear": T.h, "x0": str(T.x0), "y0": str(T.y0),
                                        "alpha": str(T.alpha), "beta": str(T.beta)},
                             "t_sides": t_side,
                             "order_forcing": "external: the rigidifying supergraph of the frame is not constructed"})
    return bundle, cert


def _preimage_probe(T: Affine, seg: Segment):
    """A point of the original plane mapping onto seg.a."""
    X, Y = seg.a
    y = (Y - CENTER[1]) / T.beta + T.y0
    x = (X - CENTER[0]) / T.alpha + T.x0 - T.h * y
    return (x, y)


def _segment_meet(s: Segment, t: Segment):
    (ax, ay), (bx, by) = s.a, s.b
    (cx, cy), (dx, dy) = t.a, t.b
    den = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx)
    if den == 0:
        for p in (s.a, s.b):
            if p in (t.a, t.b):
                return p
        return None
    u = ((cx - ax) * (dy - cy) - (cy - ay) * (dx - cx)) / den
    return (ax + u * (bx - ax), ay + u * (by - ay))


def read_back(bundle: InstanceBundle) -> tuple[list[OrientedLine], list]:
    """Lines through the v_i segments, oriented by the t-side rule, and leg meeting points."""
    segs = bundle.segments
    idx = {tuple(r): v for v, r in enumerate(bundle.roles)}
    t_seg = segs[idx[("frame", "t")]]
    lines = []
    for i, side in enumerate(bundle.meta["t_sides"]):
        s = segs[idx[("line", i)]]
        ln = OrientedLine.through(s.a, s.b)
        if ln.side(t_seg.a) != side:
            ln = ln.flipped()
        lines.append(ln)
    pts = []
    j = 0
    while ("leg_t", j) in idx:
        p = _segment_meet(segs[idx[("leg_t", j)]], segs[idx[("leg_b", j)]])
        if p is None:
            raise ConstructionFailure(f"legs of point {j} do not meet")
        pts.append(p)
        j += 1
    return lines, pts


def separates_t_b(bundle: InstanceBundle, lines: Sequence[OrientedLine]) -> bool:
    idx = {tuple(r): v for v, r in enumerate(bundle.roles)}
    t = bundle.segments[idx[("frame", "t")]]
    b = bundle.segments[idx[("frame", "b")]]
    for ln in lines:
        st = {ln.side(t.a), ln.side(t.b)}
        sb = {ln.side(b.a), ln.side(b.b)}
        if len(st) != 1 or len(sb) != 1 or 0 in st or st == sb:
            return False
    return True


def signs_preserved(hp, bundle: InstanceBundle) -> bool:
    lines, pts = read_back(bundle)
    return [sign_vector(p, hp.lines) for p in hp.points] == [sign_vector(q, lines) for q in pts]
