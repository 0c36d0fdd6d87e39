"""Certificate checks, grid-size accounting, small exhaustive searches and the audit chain."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arrangements import OrientedLine, span_squared, sv_feasible, sv_from_str
from .embeddings.disks import Disk, disk_graph_edges
from .embeddings.instances import InstanceBundle, extract_arrangement, raw_bisector_coefficients
from .embeddings.segments import Segment, segment_graph_edges
from .errors import VerificationFailure
from .graphs import Graph
from .numeric import LT, Q, cmp_sqrt, fmt_rational

Family = Union[Sequence[Disk], Sequence[Segment]]


# ---------------------------------------------------------------------------
# integer realizations

@dataclass
class GridRealization:
    kind: str                                   # udg | dg | seg
    centers: list[tuple[int, int]] = field(default_factory=list)
    radius: Optional[int] = None
    radii: list[int] = field(default_factory=list)
    segments: list[tuple[tuple[int, int], tuple[int, int]]] = field(default_factory=list)

    def __post_init__(self):
        vals = [v for c in self.centers for v in c] + list(self.radii)
        vals += [v for s in self.segments for p in s for v in p]
        if self.radius is not None:
            vals.append(self.radius)
        if any(not isinstance(v, int) or isinstance(v, bool) for v in vals):
            raise ValueError("grid realization needs integer data")
        if self.kind == "udg" and (self.radius is None or self.radius < 1):
            raise ValueError("udg realization needs an integer radius >= 1")
        if self.kind == "dg" and (len(self.radii) != len(self.centers) or any(r < 1 for r in self.radii)):
            raise ValueError("dg realization needs one integer radius >= 1 per center")

    def __len__(self) -> int:
        return len(self.segments) if self.kind == "seg" else len(self.centers)

    def objects(self) -> list:
        if self.kind == "udg":
            return [Disk.of(c, self.radius) for c in self.centers]
        if self.kind == "dg":
            return [Disk.of(c, r) for c, r in zip(self.centers, self.radii)]
        return [Segment(a, b) for a, b in self.segments]

    def to_json(self) -> dict:
        if self.kind == "seg":
            return {"kind": "seg", "segments": [[list(a), list(b)] for a, b in self.segments]}
        d = {"kind": self.kind, "centers": [list(c) for c in self.centers]}
        if self.kind == "udg":
            d["radius"] = self.radius
        else:
            d["radii"] = list(self.radii)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GridRealization":
        kind = d["kind"]
        if kind == "seg":
            return cls("seg", segments=[((int(a[0]), int(a[1])), (int(b[0]), int(b[1]))) for a, b in d["segments"]])
        centers = [(int(c[0]), int(c[1])) for c in d["centers"]]
        if kind == "udg":
            return cls("udg", centers, radius=int(d["radius"]))
        if kind == "dg":
            return cls("dg", centers, radii=[int(r) for r in d["radii"]])
        raise ValueError(f"unknown realization kind {kind!r}")

    @classmethod
    def from_objects(cls, kind: str, objs: Family) -> tuple["GridRealization", int]:
        """Integerize by one common scale factor (the lcm of all denominators)."""
        if kind == "seg":
            s = math.lcm(1, *(q.denominator for g in objs for p in (g.a, g.b) for q in p))
            segs = [((int(g.a[0] * s), int(g.a[1] * s)), (int(g.b[0] * s), int(g.b[1] * s))) for g in objs]
            return cls("seg", segments=segs), s
        if any(d.radius is None for d in objs):
            raise ValueError("integerization needs rational radii")
        s = math.lcm(1, *(q.denominator for d in objs for q in (d.cx, d.cy, d.radius)))
        centers = [(int(d.cx * s), int(d.cy * s)) for d in objs]
        radii = [int(d.radius * s) for d in objs]
        if kind == "udg":
            if len(set(radii)) > 1:
                raise ValueError("udg realization with unequal radii")
            return cls("udg", centers, radius=radii[0] if radii else 1), s
        return cls("dg", centers, radii=radii), s


def as_objects(realization) -> list:
    if isinstance(realization, GridRealization):
        return realization.objects()
    return list(realization)


def family_edges(objs: Family) -> set[tuple[int, int]]:
    if objs and isinstance(objs[0], Segment):
        return segment_graph_edges(objs)
    return disk_graph_edges(objs)


def intersection_graph(objs: Family) -> Graph:
    return Graph(len(objs), family_edges(objs))


@dataclass
class Discrepancy:
    u: int
    v: int
    expected: bool
    found: bool

    def to_json(self) -> dict:
        return {"u": self.u, "v": self.v, "expected": self.expected, "found": self.found}


@dataclass
class RealizationCheck:
    ok: bool
    discrepancy: Optional[Discrepancy] = None
    count: int = 0

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "mismatches": self.count,
                "discrepancy": None if self.discrepancy is None else self.discrepancy.to_json()}


def verify_realization(graph: Graph, realization) -> RealizationCheck:
    """Recompute the intersection graph exactly and report the first differing pair."""
    objs = as_objects(realization)
    if len(objs) != graph.n:
        raise ValueError(f"realization has {len(objs)} objects for {graph.n} vertices")
    found = family_edges(objs)
    if found == graph.edges:
        return RealizationCheck(True)
    diff = sorted(found ^ graph.edges)
    u, v = diff[0]
    exp = (u, v) in graph.edges
    return RealizationCheck(False, Discrepancy(u, v, exp, not exp), len(diff))


def _disk_k(d: Disk) -> int:
    """Least integer k with |cx| + r <= k and |cy| + r <= k."""
    c = max(abs(d.cx), abs(d.cy))
    k = math.floor(c + math.isqrt(math.floor(d.radius_sq)))
    k = max(k, 0)
    while cmp_sqrt(k - c, d.radius_sq) == LT:
        k += 1
    while k > 0 and cmp_sqrt(k - 1 - c, d.radius_sq) != LT:
        k -= 1
    return k


def k_of_family(realization) -> int:
    objs = as_objects(realization)
    if not objs:
        return 0
    if isinstance(objs[0], Segment):
        return max(math.ceil(abs(v)) for s in objs for p in (s.a, s.b) for v in p)
    return max(_disk_k(d) for d in objs)


# ---------------------------------------------------------------------------
# exhaustive minimal-grid search

_SYMS = [lambda x, y: (x, y), lambda x, y: (-x, y), lambda x, y: (x, -y), lambda x, y: (-x, -y),
         lambda x, y: (y, x), lambda x, y: (-y, x), lambda x, y: (y, -x), lambda x, y: (-y, -x)]


def _canonical_first(c) -> bool:
    """Is c the least point of its orbit under the square's symmetry group?"""
    return all(c <= f(*c) for f in _SYMS)


def _options(m: int, radii: Sequence[int]) -> list[tuple[int, int, int]]:
    out = []
    for r in radii:
        b = m - r
        for x in range(-b, b + 1):
            for y in range(-b, b + 1):
                out.append((x, y, r))
    return out


def _search_at(graph: Graph, kind: str, m: int):
    n = graph.n
    adj = [[graph.has_edge(i, j) for j in range(n)] for i in range(n)]

    def ok(place, i, c):
        for j in range(i):
            q = place[j]
            dx, dy = c[0] - q[0], c[1] - q[1]
            s = c[2] + q[2]
            if (dx * dx + dy * dy < s * s) != adj[i][j]:
                return False
        return True

    radius_sets = [[r] for r in range(1, m + 1)] if kind == "udg" else [list(range(1, m + 1))]
    for rs in radius_sets:
        opts = _options(m, rs)
        first = [o for o in opts if _canonical_first((o[0], o[1]))]
        place: list = [None] * n

        def rec(i):
            if i == n:
                return True
            for c in (first if i == 0 else opts):
                if ok(place, i, c):
                    place[i] = c
                    if rec(i + 1):
                        return True
            place[i] = None
            return False

        if n == 0 or rec(0):
            return list(place)
    return None


@dataclass
class SearchResult:
    found: bool
    m: Optional[int]
    witness: Optional[GridRealization]

    def to_json(self) -> dict:
        return {"found": self.found, "m": self.m, "witness": None if self.witness is None else self.witness.to_json()}


def search_min_grid(graph: Graph, kind: str, max_m: int) -> SearchResult:
    """Least m admitting an integer realization inside [-m, m]^2, by exhaustive search.

    The first object is restricted to canonical representatives of the
    dihedral symmetries of the square, which preserve the grid box.
    """
    if kind not in ("udg", "dg"):
        raise ValueError("search supports udg and dg")
    for m in range(1, max_m + 1):
        place = _search_at(graph, kind, m)
        if place is not None:
            centers = [(x, y) for x, y, _ in place]
            if kind == "udg":
                w = GridRealization("udg", centers, radius=place[0][2] if place else 1)
            else:
                w = GridRealization("dg", centers, radii=[r for _, _, r in place])
            if not verify_realization(graph, w) or k_of_family(w) > m:
                raise AssertionError("search produced an invalid witness")
            return SearchResult(True, m, w)
    return SearchResult(False, None, None)


# ---------------------------------------------------------------------------
# threshold systems for unit disk graphs
#
# A solution (x_i, y_i, r) realizes the graph with open disks of radius r/2:
#   strict system:  d_ij^2 < r^2 on edges, d_ij^2 >= r^2 on non-edges, r > 0
#   slack system:   d_ij^2 <= (r-10)^2 on edges, d_ij^2 >= (r+10)^2 on non-edges, r >= 100

@dataclass
class UDGSolution:
    graph: Graph
    x: list[Fraction]
    y: list[Fraction]
    r: Fraction

    def d2(self, i: int, j: int) -> Fraction:
        return (self.x[i] - self.x[j]) ** 2 + (self.y[i] - self.y[j]) ** 2

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(), "centers": [[fmt_rational(a), fmt_rational(b)] for a, b in zip(self.x, self.y)],
                "r": fmt_rational(self.r)}

    @classmethod
    def from_json(cls, d: dict) -> "UDGSolution":
        cs = d["centers"]
        return cls(Graph.from_json(d["graph"]), [Q(c[0]) for c in cs], [Q(c[1]) for c in cs], Q(d["r"]))


class SystemViolation(ValueError):
    pass


def strict_violations(sol: UDGSolution) -> list[str]:
    out = []
    if not sol.r > 0:
        out.append("r > 0")
    r2 = sol.r * sol.r
    for i, j in itertools.combinations(range(sol.graph.n), 2):
        d = sol.d2(i, j)
        if sol.graph.has_edge(i, j) and not d < r2:
            out.append(f"edge {i}-{j}: d^2 < r^2")
        if not sol.graph.has_edge(i, j) and not d >= r2:
            out.append(f"non-edge {i}-{j}: d^2 >= r^2")
    return out


def slack_violations(sol: UDGSolution) -> list[str]:
    out = []
    if not sol.r >= 100:
        out.append("r >= 100")
        return out
    lo, hi = (sol.r - 10) ** 2, (sol.r + 10) ** 2
    for i, j in itertools.combinations(range(sol.graph.n), 2):
        d = sol.d2(i, j)
        if sol.graph.has_edge(i, j) and not d <= lo:
            out.append(f"edge {i}-{j}: d^2 <= (r-10)^2")
        if not sol.graph.has_edge(i, j) and not d >= hi:
            out.append(f"non-edge {i}-{j}: d^2 >= (r+10)^2")
    return out


def round_udg_solution(sol: UDGSolution) -> UDGSolution:
    """Floor every variable of a slack solution; the result is re-checked against the strict system."""
    bad = slack_violations(sol)
    if bad:
        raise SystemViolation(f"slack precondition fails: {bad[0]}")
    out = UDGSolution(sol.graph, [Fraction(math.floor(v)) for v in sol.x], [Fraction(math.floor(v)) for v in sol.y],
                      Fraction(math.floor(sol.r)))
    bad = strict_violations(out)
    if bad:
        raise AssertionError(f"rounded solution violates the strict system: {bad[0]}")
    return out


def scale_to_slack(sol: UDGSolution) -> UDGSolution:
    """Dilate the centres slightly, then scale everything by a power of two until the slack system holds."""
    if not sol.r > 0:
        raise SystemViolation("r must be positive")
    r2 = sol.r * sol.r
    slack = Fraction(1, 4)
    for i, j in itertools.combinations(range(sol.graph.n), 2):
        d = sol.d2(i, j)
        if sol.graph.has_edge(i, j):
            if not d < r2:
                raise SystemViolation(f"edge {i}-{j} is not strict")
            slack = min(slack, (r2 - d) / (4 * r2))
        elif not d > r2:
            raise SystemViolation(f"non-edge {i}-{j} is not strict")
    lam = 1 + slack / 2
    cur = UDGSolution(sol.graph, [lam * v for v in sol.x], [lam * v for v in sol.y], sol.r)
    if strict_violations(cur):
        raise AssertionError("dilation broke the strict system")
    mu = 1
    while True:
        s = UDGSolution(sol.graph, [mu * v for v in cur.x], [mu * v for v in cur.y], mu * cur.r)
        if not slack_violations(s):
            return s
        mu *= 2


def udg_solution_from_realization(graph: Graph, disks: Sequence[Disk]) -> UDGSolution:
    r = disks[0].radius
    if r is None or any(d.radius != r for d in disks):
        raise ValueError("need a common rational radius")
    return UDGSolution(graph, [d.cx for d in disks], [d.cy for d in disks], 2 * r)


# ---------------------------------------------------------------------------
# audit

@dataclass
class Inequality:
    name: str
    lhs: Fraction
    rhs: Fraction     # holds iff lhs <= rhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": fmt_rational(self.lhs), "rhs": fmt_rational(self.rhs),
                "holds": self.holds, "margin_bits": _margin_bits(self.lhs, self.rhs)}


def _margin_bits(lhs: Fraction, rhs: Fraction) -> Optional[float]:
    if lhs <= 0 or rhs <= 0:
        return None
    return (math.log2(rhs.numerator) - math.log2(rhs.denominator)) - (math.log2(lhs.numerator) - math.log2(lhs.denominator))


@dataclass
class AuditReport:
    kind: str
    digest: str
    m: int
    span_squared: Fraction
    sign_vectors_ok: bool
    inequalities: list[Inequality]

    @property
    def ok(self) -> bool:
        return self.sign_vectors_ok and all(q.holds for q in self.inequalities)

    def to_json(self) -> dict:
        return {"kind": self.kind, "arrangement_digest": self.digest, "m": self.m,
                "span_squared": fmt_rational(self.span_squared), "sign_vectors_ok": self.sign_vectors_ok,
                "inequalities": [q.to_json() for q in self.inequalities], "pass": self.ok}


def _digest(lines: Sequence[OrientedLine]) -> str:
    import hashlib
    blob = ";".join(f"{l.a},{l.b},{l.c}" for l in lines).encode()
    return hashlib.sha256(blob).hexdigest()


def span_upper_bound(kind: str, m: int) -> int:
    """Upper bound on span^2 for an arrangement extracted from a realization in [-m, m]^2."""
    if kind == "udg":
        return 2 ** 45 * m ** 24
    if kind == "dg":
        return 2 ** 9 * (8 * m ** 3) ** 12
    raise ValueError("audit supports udg and dg")


def lower_bound_audit(bundle: InstanceBundle, realization: GridRealization) -> AuditReport:
    if bundle.kind not in ("udg", "dg") or realization.kind != bundle.kind:
        raise ValueError("audit needs a udg or dg bundle with a matching realization")
    chk = verify_realization(bundle.graph, realization)
    if not chk:
        raise VerificationFailure(f"realization does not match the bundle graph: {chk.to_json()}")
    disks = realization.objects()
    L = extract_arrangement(disks, bundle, bundle.kind)
    signs = [sv_from_str(s) for s in bundle.meta.get("signs", [])]
    sv_ok = bool(signs) and all(sv_feasible(s, L) for s in signs)
    m = k_of_family(realization)
    sp = span_squared(L)
    coef = max(abs(v) for t in raw_bisector_coefficients(disks, bundle, bundle.kind) for v in t)
    coef_bound = 8 * m ** 2 if bundle.kind == "udg" else 8 * m ** 3
    ineqs = [Inequality("coefficient bound", Fraction(coef), Fraction(coef_bound)),
             Inequality("span^2 upper bound", sp, Fraction(span_upper_bound(bundle.kind, m)))]
    k = bundle.source.get("k")
    if k is not None:
        ineqs.append(Inequality("span^2 lower bound", Fraction(2 ** (2 ** (int(k) + 1))), sp))
    return AuditReport(bundle.kind, _digest(L), m, sp, sv_ok, ineqs)
