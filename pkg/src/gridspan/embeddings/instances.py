"""Compile a hard pair into disk-graph instances and read arrangements back.

Every coordinate produced here is dyadic, so a realization becomes integral
after multiplying by a single power of two.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..arrangements import Arrangement, OrientedLine, sign_vector, sv_to_str
from ..errors import ConstructionFailure
from ..graphs import Graph
from ..numeric import Q, cmp_sqrt, fmt_rational, GT, pow2_floor, sqrt_ceil
from .disks import Disk, disk_graph_edges, disk_inside, disk_in_halfplane
from .segments import Segment, segment_graph_edges

Point = tuple[Fraction, Fraction]


def _round_to(x: Fraction, g: int) -> Fraction:
    s = 1 << g
    return Fraction(round(x * s), s)


def _neg_log2(x: Fraction) -> int:
    """An integer at least -log2(x) for 0 < x."""
    return max(0, x.denominator.bit_length() - x.numerator.bit_length() + 1)


def min_line_distance2(L: Sequence[OrientedLine], P: Sequence[Point]) -> Fraction:
    return min(ln.dist2(p) for ln in L for p in P)


def dyadic_grid_bits(L: Sequence[OrientedLine], P: Sequence[Point]) -> int:
    """Grid exponent g with 2^-g far below every point-to-line distance."""
    return (_neg_log2(min_line_distance2(L, P)) + 1) // 2 + 8


def dyadic_points(L: Sequence[OrientedLine], P: Sequence[Point], g: int) -> list[Point]:
    """Round points to the 2^-g grid, checking that no sign vector changes."""
    out = []
    for p in P:
        q = (_round_to(p[0], g), _round_to(p[1], g))
        if sign_vector(q, L) != sign_vector(p, L):
            raise ConstructionFailure("dyadic rounding moved a point across a line")
        out.append(q)
    return out


# ---------------------------------------------------------------------------
# equal-radius half-plane disks

@dataclass
class HalfplaneDisks:
    radius: Fraction
    centers: list[tuple[Point, Point]]     # per line: (negative side, positive side)
    grid_bits: int

    @property
    def radius_sq(self) -> Fraction:
        return self.radius * self.radius

    def disk(self, i: int, s: int, radius: Optional[Fraction] = None) -> Disk:
        c = self.centers[i][0 if s < 0 else 1]
        return Disk.of(c, self.radius if radius is None else radius)

    def contains(self, i: int, s: int, p) -> bool:
        c = self.centers[i][0 if s < 0 else 1]
        dx, dy = p[0] - c[0], p[1] - c[1]
        return dx * dx + dy * dy < self.radius_sq


def r0_exceeded(L: Sequence[OrientedLine], P: Sequence[Point], R: Fraction) -> bool:
    """R > |p - z0|^2 / (2 y_p) for every point and both sides of every line.

    z0 is the foot of the line and y_p the distance of p from it, i.e. the
    tangent disk of radius R at z0 contains every point on its side.
    """
    R = Q(R)
    for ln in L:
        z0 = ln.foot()
        for p in P:
            v = ln.value(p)
            if v == 0:
                return False
            dx, dy = p[0] - z0[0], p[1] - z0[1]
            d2 = dx * dx + dy * dy
            # 2 R |v| / |w| > d2  <=>  2 R |v| / d2 > |w|
            if cmp_sqrt(2 * R * abs(v) / d2, ln.norm2()) != GT:
                return False
    return True


def _r0_upper(L, P) -> Fraction:
    best = Fraction(1)
    for ln in L:
        z0 = ln.foot()
        nw = sqrt_ceil(ln.norm2(), 16)
        for p in P:
            v = abs(ln.value(p))
            dx, dy = p[0] - z0[0], p[1] - z0[1]
            best = max(best, (dx * dx + dy * dy) * nw / (2 * v))
    return best


def _halfplane_center(ln: OrientedLine, s: int, R: Fraction, g: int) -> Point:
    n2 = ln.norm2()
    bits = R.numerator.bit_length() - R.denominator.bit_length() + g + 16
    u = sqrt_ceil(n2, max(bits, 16)) / n2              # >= 1/|w|
    t = (R + Fraction(2, 1 << g)) * u                   # rounding slack
    z0 = ln.foot()
    a, b = ln.w
    return (_round_to(z0[0] + s * t * a, g), _round_to(z0[1] + s * t * b, g))


def check_halfplane_disk(d: Disk, ln: OrientedLine, s: int, points: Sequence[Point]) -> bool:
    """``points on side s`` are inside ``d`` and ``d`` lies in the closed side."""
    if not disk_in_halfplane(d, ln.w, ln.c, s):
        return False
    return all(d.contains_point(p) for p in points if ln.side(p) == s)


def place_halfplane_disks(L: Sequence[OrientedLine], P: Sequence[Point], g: Optional[int] = None,
                          max_doublings: int = 4096) -> HalfplaneDisks:
    """Equal-radius disks D_i^s with P on side s inside D_i^s inside the closed side s."""
    if any(ln.value(p) == 0 for ln in L for p in P):
        raise ValueError("a point lies on a line")
    if g is None:
        g = dyadic_grid_bits(L, P)
    R = 2 * pow2_floor(_r0_upper(L, P))
    for _ in range(max_doublings):
        centers = [(_halfplane_center(ln, -1, R, g), _halfplane_center(ln, 1, R, g)) for ln in L]
        hd = HalfplaneDisks(R, centers, g)
        ok = r0_exceeded(L, P, R)
        if ok:
            for i, ln in enumerate(L):
                for s in (-1, 1):
                    if not check_halfplane_disk(hd.disk(i, s), ln, s, P):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return hd
        R *= 2
    raise ConstructionFailure("half-plane disk radius search did not terminate")


# ---------------------------------------------------------------------------
# bundles

@dataclass
class InstanceBundle:
    kind: str                      # udg | dg | seg
    graph: Graph
    disks: list[Disk] = field(default_factory=list)
    segments: list[Segment] = field(default_factory=list)
    roles: list[list] = field(default_factory=list)
    source: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def realization_json(self):
        if self.kind == "udg":
            return {"centers": [[fmt_rational(d.cx), fmt_rational(d.cy)] for d in self.disks],
                    "radius_sq": fmt_rational(self.disks[0].radius_sq) if self.disks else "1"}
        if self.kind == "dg":
            return {"disks": [d.to_json() for d in self.disks]}
        return {"segments": [s.to_json() for s in self.segments]}

    def to_json(self) -> dict:
        return {"kind": self.kind, "graph": self.graph.to_json(), "realization": self.realization_json(),
                "roles": self.roles, "source": self.source, "meta": self.meta}

    @classmethod
    def from_json(cls, d: dict) -> "InstanceBundle":
        kind = d["kind"]
        g = Graph.from_json(d["graph"])
        r = d["realization"]
        disks, segs = [], []
        if kind == "udg":
            rs = Q(r["radius_sq"])
            disks = [Disk(Q(c[0]), Q(c[1]), rs) for c in r["centers"]]
        elif kind == "dg":
            disks = [Disk.from_json(x) for x in r["disks"]]
        elif kind == "seg":
            segs = [Segment.from_json(x) for x in r["segments"]]
        else:
            raise ValueError(f"unknown instance kind {kind!r}")
        return cls(kind, g, disks, segs, [list(x) for x in d.get("roles", [])], dict(d.get("source", {})),
                   dict(d.get("meta", {})))

    def halfplane_vertices(self) -> dict[tuple[int, int], int]:
        return {(r[1], r[2]): v for v, r in enumerate(self.roles) if r[0] == "halfplane"}

    def witness_vertices(self) -> dict[int, int]:
        return {r[1]: v for v, r in enumerate(self.roles) if r[0] == "witness"}

    def realization_graph_edges(self) -> set[tuple[int, int]]:
        if self.kind == "seg":
            return segment_graph_edges(self.segments)
        return disk_graph_edges(self.disks)


def source_digest(hp) -> dict:
    blob = json.dumps(hp.to_json(), sort_keys=True).encode()
    return {"k": hp.k, "lines": len(hp.lines), "points": len(hp.points),
            "sha256": hashlib.sha256(blob).hexdigest()}


def _sign_strings(signs) -> list[str]:
    return ["".join(sv_to_str(s)) for s in signs]


def _signs_of(hp, P) -> list:
    return [sign_vector(p, hp.lines) for p in P]


def build_udg_instance(hp) -> InstanceBundle:
    """Disks of radius R/2 at the half-plane disk centres and at the witness points."""
    L = hp.lines
    g = dyadic_grid_bits(L, hp.points)
    P = dyadic_points(L, hp.points, g)
    hd = place_halfplane_disks(L, P, g)
    half = hd.radius / 2
    disks, roles = [], []
    for i in range(len(L)):
        for s in (-1, 1):
            disks.append(hd.disk(i, s, half))
            roles.append(["halfplane", i, s])
    for j, p in enumerate(P):
        disks.append(Disk.of(p, half))
        roles.append(["witness", j])
    graph = Graph(len(disks), disk_graph_edges(disks))
    bundle = InstanceBundle("udg", graph, disks, [], roles, source_digest(hp),
                            {"radius": fmt_rational(hd.radius), "grid_bits": g, "signs": _sign_strings(_signs_of(hp, P))})
    _check_halfplane_witness_edges(bundle, L, _signs_of(hp, P))
    return bundle


def _check_halfplane_witness_edges(bundle: InstanceBundle, L, signs) -> None:
    hv = bundle.halfplane_vertices()
    for j, u in bundle.witness_vertices().items():
        for (i, s), v in hv.items():
            if bundle.graph.has_edge(u, v) != (signs[j][i] == s):
                raise ConstructionFailure(f"witness {j} and half-plane ({i},{s}) disagree with the sign data")


# ---------------------------------------------------------------------------
# disk-graph instance with H gadgets

def h_extent(disks: Sequence[Disk]) -> Fraction:
    """Power of two R with every disk inside B(0, R), verified exactly."""
    best = Fraction(0)
    for d in disks:
        best = max(best, sqrt_ceil(d.cx * d.cx + d.cy * d.cy, 16) + sqrt_ceil(d.radius_sq, 16))
    R = 2 * pow2_floor(best)
    ball = Disk.of((0, 0), R)
    if not all(disk_inside(d, ball) for d in disks):
        raise ConstructionFailure("gadget extent bound is wrong")
    return R


def clearance_lower(p: Point, centers: Sequence[Point], R: Fraction, bits: int) -> Fraction:
    """A rational lower bound on min_c (R - |p - c|)."""
    worst = None
    for c in centers:
        dx, dy = p[0] - c[0], p[1] - c[1]
        v = R - sqrt_ceil(dx * dx + dy * dy, bits)
        worst = v if worst is None or v < worst else worst
    return worst


def build_dg_instance(hp, gadget=None) -> InstanceBundle:
    """Half-plane disks plus one shrunken copy of H per witness point."""
    from .gadgets import build_h_gadget

    H = gadget if gadget is not None else build_h_gadget()
    L = hp.lines
    g = dyadic_grid_bits(L, hp.points)
    P = dyadic_points(L, hp.points, g)
    signs = _signs_of(hp, P)
    hd = place_halfplane_disks(L, P, g)
    R = hd.radius
    ext = h_extent(H.disks)
    disks, roles = [], []
    for i in range(len(L)):
        for s in (-1, 1):
            disks.append(hd.disk(i, s))
            roles.append(["halfplane", i, s])
    bits = R.numerator.bit_length() + 2 * g + 16
    scales = []
    for j, p in enumerate(P):
        own = [hd.centers[i][0 if signs[j][i] < 0 else 1] for i in range(len(L))]
        delta = clearance_lower(p, own, R, bits)
        if delta <= 0:
            raise ConstructionFailure(f"empty cell region for witness {j}")
        lam = pow2_floor(delta / (2 * ext))
        bound = Disk.of(p, lam * ext)
        for i in range(len(L)):
            if not disk_inside(bound, hd.disk(i, signs[j][i])):
                raise ConstructionFailure(f"gadget copy {j} leaves D({i},{signs[j][i]})")
        scales.append(lam)
        for v, d in enumerate(H.disks):
            disks.append(d.scaled(lam, p[0], p[1]))
            roles.append(["gadget", j, v])
    graph = Graph(len(disks), disk_graph_edges(disks))
    bundle = InstanceBundle("dg", graph, disks, [], roles, source_digest(hp),
                            {"radius": fmt_rational(R), "grid_bits": g, "gadget_vertices": H.graph.n,
                             "gadget_extent": fmt_rational(ext), "scales": [fmt_rational(x) for x in scales],
                             "signs": _sign_strings(signs)})
    check_dg_structure(bundle, H.graph, signs)
    return bundle


def check_dg_structure(bundle: InstanceBundle, hgraph: Graph, signs) -> None:
    """Stored graph = halfplane part + gadget copies + (gadget, halfplane) iff p_j in D_i^s.

    The expected edges are enumerated without repetition and checked for
    membership; together with equal counts this is set equality.
    """
    E = bundle.graph.edges
    nh = sum(1 for r in bundle.roles if r[0] == "halfplane")
    hv = bundle.halfplane_vertices()
    first = {}
    for v, r in enumerate(bundle.roles):
        if r[0] == "gadget" and r[2] == 0:
            first[r[1]] = v
    m = hgraph.n
    count = sum(1 for e in E if e[1] < nh)
    for j, base in first.items():
        for u, v in hgraph.edges:
            if (base + u, base + v) not in E:
                raise ConstructionFailure(f"gadget copy {j} misses edge ({u},{v})")
            count += 1
        for (i, s), hvtx in hv.items():
            if signs[j][i] == s:
                for v in range(m):
                    if (hvtx, base + v) not in E:
                        raise ConstructionFailure(f"gadget copy {j} vertex {v} misses half-plane ({i},{s})")
                count += m
    if count != len(E):
        raise ConstructionFailure(f"disk-graph instance has {len(E) - count} unexpected edges")


# ---------------------------------------------------------------------------
# extraction

class DegenerateBisector(ValueError):
    pass


def extract_arrangement(disks: Sequence[Disk], bundle: InstanceBundle, mode: str) -> Arrangement:
    """Bisector (udg) or weighted divider (dg) lines of each pair D(v_i^-), D(v_i^+)."""
    hv = bundle.halfplane_vertices()
    nlines = 1 + max(i for i, _ in hv) if hv else 0
    out = []
    for i in range(nlines):
        dm, dp = disks[hv[(i, -1)]], disks[hv[(i, 1)]]
        pm, pp = dm.center, dp.center
        if pm == pp:
            raise DegenerateBisector(f"coincident centres for line {i}")
        if mode == "udg":
            w = (2 * (pp[0] - pm[0]), 2 * (pp[1] - pm[1]))
            c = (pp[0] - pm[0]) * (pp[0] + pm[0]) + (pp[1] - pm[1]) * (pp[1] + pm[1])
        elif mode == "dg":
            if dm.radius is None or dp.radius is None:
                raise ValueError("weighted divider needs rational radii")
            rm, rp = dm.radius, dp.radius
            w = (pp[0] - pm[0], pp[1] - pm[1])
            z = ((rp * pm[0] + rm * pp[0]) / (rp + rm), (rp * pm[1] + rm * pp[1]) / (rp + rm))
            c = w[0] * z[0] + w[1] * z[1]
            # clear the (r+ + r-) denominator as an integer multiple
            fac = rp + rm
            w, c = (w[0] * fac, w[1] * fac), c * fac
        else:
            raise ValueError("mode must be udg or dg")
        out.append(OrientedLine(w, c))
    return Arrangement(out)


def raw_bisector_coefficients(disks: Sequence[Disk], bundle: InstanceBundle, mode: str) -> list[tuple]:
    """Unreduced integer coefficients (w1, w2, c) as written before gcd normalisation."""
    hv = bundle.halfplane_vertices()
    nlines = 1 + max(i for i, _ in hv) if hv else 0
    out = []
    for i in range(nlines):
        dm, dp = disks[hv[(i, -1)]], disks[hv[(i, 1)]]
        pm, pp = dm.center, dp.center
        if mode == "udg":
            w = (2 * (pp[0] - pm[0]), 2 * (pp[1] - pm[1]))
            c = (pp[0] - pm[0]) * (pp[0] + pm[0]) + (pp[1] - pm[1]) * (pp[1] + pm[1])
        else:
            rm, rp = dm.radius, dp.radius
            w = ((rp + rm) * (pp[0] - pm[0]), (rp + rm) * (pp[1] - pm[1]))
            c = (pp[0] - pm[0]) * (rp * pm[0] + rm * pp[0]) + (pp[1] - pm[1]) * (rp * pm[1] + rm * pp[1])
        out.append((w[0], w[1], c))
    return out
