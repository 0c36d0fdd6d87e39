"""Generator for oriented arrangements whose sign data force a huge span.

Every point ``p_i`` of a constructible configuration gets a block of four
oriented lines: two thin wedges, one along each of the two lines that
define ``p_i``, whose intersection is a small quadrilateral cell ``E_i``
around ``p_i``.  Eleven witness points, one per chamber of the block, and
four extra points around the first two points make up the point list.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arrangements import (
    Arrangement,
    OrientedLine,
    SignVector,
    chamber_witnesses,
    enumerate_chambers,
    meet,
    sign_vector,
    sv_from_str,
    sv_to_str,
)
from .errors import ConstructionFailure, max_halvings
from .numeric import Q, fmt_rational, pow2_floor, sqrt_ceil, sqrt_floor
from .projective import build_gps_config, euclidean_chart

Point = tuple[Fraction, Fraction]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _mul(t, p):
    return (t * p[0], t * p[1])


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1]


def _d2(p, q):
    d = _sub(p, q)
    return _dot(d, d)


def _ball_positive(line: OrientedLine, p, r) -> bool:
    """Is the open ball ``B(p, r)`` inside the positive side?"""
    v = line.value(p)
    return v > 0 and v * v > r * r * line.norm2()


# ---------------------------------------------------------------------------
# reference block and its symmetries

_BLOCK_PERMS = [
    (0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
    (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0),
]


def _permute(s: SignVector, perm) -> SignVector:
    return tuple(s[j] for j in perm)


@functools.lru_cache(maxsize=None)
def reference_block() -> tuple[OrientedLine, ...]:
    """Two thin wedges crossing at the origin, oriented with the origin negative."""
    o = (Fraction(0), Fraction(0))
    X, Y = (Fraction(-8), Fraction(0)), (Fraction(0), Fraction(-8))
    q = Fraction(1, 4)
    lines = [
        OrientedLine.through(X, _add(X, (1, q)), negative=o),
        OrientedLine.through(X, _add(X, (1, -q)), negative=o),
        OrientedLine.through(Y, _add(Y, (q, 1)), negative=o),
        OrientedLine.through(Y, _add(Y, (-q, 1)), negative=o),
    ]
    return tuple(lines)


@functools.lru_cache(maxsize=None)
def reference_block_chambers() -> frozenset:
    return frozenset(enumerate_chambers(reference_block()))


def corner_cells() -> frozenset:
    """Block chambers sharing a corner with the all-negative cell."""
    out = set()
    for s in itertools.product((-1, 1), repeat=4):
        if s[0] + s[1] <= 0 and s[2] + s[3] <= 0:
            out.add(s)
    return frozenset(out)


def matches_reference(chambers) -> bool:
    ref = reference_block_chambers()
    ch = frozenset(chambers)
    return any(frozenset(_permute(s, p) for s in ch) == ref for p in _BLOCK_PERMS)


# ---------------------------------------------------------------------------
# data

@dataclass
class HardPair:
    k: int
    lines: Arrangement
    points: list[Point]
    signs: list[SignVector]
    base_points: list[Point]
    aux_points: list[Point]
    f: list[tuple[int, int, int, int]]
    epsilons: list[Fraction]
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.base_points)

    @property
    def S(self) -> set[SignVector]:
        return set(self.signs)

    def all_points(self) -> list[Point]:
        return list(self.base_points) + list(self.aux_points)

    def block_lines(self, i: int) -> tuple[OrientedLine, ...]:
        return tuple(self.lines[4 * i: 4 * i + 4])

    def block_points(self, i: int) -> list[Point]:
        return self.points[11 * i: 11 * i + 11]

    def qe(self, i: int) -> list[Point]:
        return self.points[11 * i: 11 * i + 9]

    def straddle_points(self) -> list[Point]:
        return self.points[11 * self.n: 11 * self.n + 4]

    def to_json(self) -> dict:
        def P(p):
            return [fmt_rational(p[0]), fmt_rational(p[1])]

        d = self.lines.to_json()
        d.update({
            "k": self.k,
            "n": self.n,
            "points": [P(p) for p in self.points],
            "signs": [sv_to_str(s) for s in self.signs],
            "epsilons": [fmt_rational(e) for e in self.epsilons],
            "config_points": [P(p) for p in self.base_points],
            "aux_points": [P(p) for p in self.aux_points],
            "f": [list(t) for t in self.f],
        })
        return d

    @classmethod
    def from_json(cls, d: dict) -> "HardPair":
        def P(p):
            return (Q(p[0]), Q(p[1]))

        return cls(
            k=int(d["k"]),
            lines=Arrangement.from_json(d),
            points=[P(p) for p in d["points"]],
            signs=[sv_from_str(s) for s in d["signs"]],
            base_points=[P(p) for p in d["config_points"]],
            aux_points=[P(p) for p in d["aux_points"]],
            f=[tuple(int(v) for v in t) for t in d["f"]],
            epsilons=[Q(e) for e in d["epsilons"]],
        )


# ---------------------------------------------------------------------------
# construction helpers

_AUX_DIRS = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2), (3, 1), (1, 3), (3, -1), (1, -3)]


def _collinear(a, b, c) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0


def auxiliary_points(P: Sequence[Point]) -> list[Point]:
    """Four points per initial point, pairwise crossing at it, no three collinear."""
    sep2 = min(_d2(p, q) for p, q in itertools.combinations(P, 2))
    h = pow2_floor(sqrt_floor(sep2)) / 16
    aux: list[Point] = []
    for i in range(4):
        for u, v in itertools.combinations(_AUX_DIRS, 2):
            cand = [_add(P[i], _mul(h, u)), _sub(P[i], _mul(h, u)),
                    _add(P[i], _mul(h, v)), _sub(P[i], _mul(h, v))]
            l1 = OrientedLine.through(cand[0], cand[1])
            l2 = OrientedLine.through(cand[2], cand[3])
            if any(l.value(P[j]) == 0 for l in (l1, l2) for j in range(len(P)) if j != i):
                continue
            pool = aux + cand
            if any(_collinear(a, b, c) for a, b, c in itertools.combinations(pool, 3)):
                continue
            aux.extend(cand)
            break
        else:  # pragma: no cover - direction list is ample
            raise ConstructionFailure(f"no auxiliary points found for initial point {i}")
    return aux


def _pivot(pi, qa, qb) -> tuple[Point, bool]:
    """Crossing point of the wedge along ``l(qa, qb)``, and whether ``pi`` is on the segment."""
    d = _sub(qb, qa)
    t = _dot(_sub(pi, qa), d)
    on_seg = 0 <= t <= _dot(d, d)
    if on_seg:
        near, far = (qa, qb) if _d2(pi, qa) <= _d2(pi, qb) else (qb, qa)
        return _sub(_mul(2, near), far), True
    return _mul(Fraction(1, 2), _add(qa, qb)), False


def _wedge(X, d, tau, pi) -> list[OrientedLine]:
    nrm = (-d[1], d[0])
    out = []
    for s in (1, -1):
        e = (d[0] + s * tau * nrm[0], d[1] + s * tau * nrm[1])
        out.append(OrientedLine.through(X, _add(X, e), negative=pi))
    return out


@dataclass
class _BlockPlan:
    lines: list[OrientedLine]
    pivots: tuple[Point, Point]
    on_segment: tuple[bool, bool]
    tau: Fraction
    halvings: int


def _plan_block(i, P, allpts, fi, eps_i, base, limit) -> _BlockPlan:
    pi = P[i]
    pairs = [(allpts[fi[0]], allpts[fi[1]]), (allpts[fi[2]], allpts[fi[3]])]
    geo = [_pivot(pi, a, b) for a, b in pairs]
    dirs = [_sub(b, a) for a, b in pairs]
    tmax = max(sqrt_ceil(_d2(X, pi)) for X, _ in geo)
    tau = pow2_floor(eps_i / (8 * tmax))
    lim2 = (eps_i / 2) ** 2
    others = [j for j in range(len(P)) if j != i]
    reason = ""
    for h in range(limit + 1):
        lines = _wedge(geo[0][0], dirs[0], tau, pi) + _wedge(geo[1][0], dirs[1], tau, pi)
        reason = ""
        corners = [meet(a, b) for a in lines[:2] for b in lines[2:]]
        if any(c is None or _d2(c, pi) >= lim2 for c in corners):
            reason = "cell E not inside B(p_i, eps_i/2)"
        elif not matches_reference(enumerate_chambers(lines)):
            reason = "block is not isomorphic to the reference block"
        else:
            for j in others:
                if not any(_ball_positive(ln, P[j], base[j]) for ln in lines):
                    reason = f"ball around point {j} not on a positive side"
                    break
        if not reason:
            return _BlockPlan(lines, (geo[0][0], geo[1][0]), (geo[0][1], geo[1][1]), tau, h)
        tau /= 2
    raise ConstructionFailure(f"block {i}: {reason} after {limit} halvings")


def _qe_witnesses(pi, eps, B, L, limit) -> list[Point]:
    targets = sorted(corner_cells(), key=lambda s: (sum(s), s))
    dirs = [ln.direction() for ln in B]
    corners = [(meet(B[x], B[y]), x, y) for x in (0, 1) for y in (2, 3)]
    scale = max(abs(c) for d in dirs for c in d)
    delta = pow2_floor(eps / (8 * scale))
    eps2 = eps * eps
    for _ in range(limit + 1):
        found: dict[SignVector, Point] = {}
        for v, x, y in corners:
            for s1, s2 in itertools.product((1, -1), repeat=2):
                e = (s1 * dirs[x][0] + s2 * dirs[y][0], s1 * dirs[x][1] + s2 * dirs[y][1])
                p = _add(v, _mul(delta, e))
                sv = sign_vector(p, B)
                if sv in found or 0 in sv or _d2(p, pi) >= eps2:
                    continue
                if any(ln.value(p) == 0 for ln in L):
                    continue
                found[sv] = p
        if all(t in found for t in targets):
            return [found[t] for t in targets]
        delta /= 2
    raise ConstructionFailure("could not place the nine corner-cell witnesses")


def _nudged(p, B, L, limit) -> Point:
    """Move a strict block-chamber point off every line of ``L``."""
    margin = min(abs(ln.value(p)) / (abs(ln.a) + abs(ln.b)) for ln in B)
    eta = margin / 2
    steps = [(0, 0), (1, 0), (0, 1), (1, 1), (1, -1)]
    for _ in range(limit + 1):
        for sx, sy in steps:
            q = (p[0] + sx * eta, p[1] + sy * eta)
            if all(ln.value(q) != 0 for ln in L):
                return q
        eta /= 2
    raise ConstructionFailure("could not move a witness off the arrangement")


def _straddle(p, eps, B, last, L, limit) -> tuple[Point, Point]:
    w = last.w
    eta = pow2_floor(eps / (4 * (abs(w[0]) + abs(w[1]))))
    for _ in range(limit + 1):
        qm, qp = _sub(p, _mul(eta, w)), _add(p, _mul(eta, w))
        ok = all(all(ln.side(q) < 0 for ln in B) for q in (qm, qp))
        ok = ok and all(ln.value(q) != 0 for ln in L for q in (qm, qp))
        if ok and last.side(qm) < 0 < last.side(qp):
            return qm, qp
        eta /= 2
    raise ConstructionFailure("could not place the points straddling the last line")


def build_hard_pair(k: int) -> HardPair:
    if k < 1:
        raise ValueError("k must be >= 1")
    limit = max_halvings()
    gps = build_gps_config(k + 1)
    eu, _T = euclidean_chart(gps.config)
    P = [p.euclidean() for p in eu.points]
    n = len(P)
    aux = auxiliary_points(P)
    allpts = P + aux
    f: list[tuple[int, int, int, int]] = []
    for i in range(n):
        if i < 4:
            f.append((n + 4 * i, n + 4 * i + 1, n + 4 * i + 2, n + 4 * i + 3))
        else:
            f.append(tuple(eu.steps[i]))  # type: ignore[arg-type]

    construction_lines = []
    for t in f:
        construction_lines.append(OrientedLine.through(allpts[t[0]], allpts[t[1]]))
        construction_lines.append(OrientedLine.through(allpts[t[2]], allpts[t[3]]))
    base: list[Fraction] = []
    for j in range(n):
        m2 = min(_d2(P[j], P[l]) for l in range(n) if l != j)
        for ln in construction_lines:
            if ln.value(P[j]) != 0:
                m2 = min(m2, ln.dist2(P[j]))
        base.append(pow2_floor(sqrt_floor(m2)) / 4)

    cap: list[Optional[Fraction]] = [None] * n
    eps: list[Fraction] = [Fraction(0)] * n
    plans: list[Optional[_BlockPlan]] = [None] * n
    for i in reversed(range(n)):
        eps[i] = base[i] if cap[i] is None else min(base[i], cap[i])
        plan = _plan_block(i, P, allpts, f[i], eps[i], base, limit)
        plans[i] = plan
        for slot, j in enumerate(f[i]):
            if j >= n:
                continue
            pair = plan.lines[:2] if slot < 2 else plan.lines[2:]
            d2 = min(ln.dist2(P[j]) for ln in pair)
            c = pow2_floor(sqrt_floor(d2)) / 2
            cap[j] = c if cap[j] is None else min(cap[j], c)

    block_lines = [ln for plan in plans for ln in plan.lines]  # type: ignore[union-attr]
    last = OrientedLine.through(P[0], P[1])
    L = Arrangement(block_lines + [last])

    points: list[Point] = []
    for i in range(n):
        B = plans[i].lines  # type: ignore[union-attr]
        qe = _qe_witnesses(P[i], eps[i], B, L, limit)
        wit = chamber_witnesses(B)
        extra = [_nudged(wit[s], B, L, limit) for s in sorted(wit) if s not in corner_cells()]
        if len(qe) != 9 or len(extra) != 2:
            raise ConstructionFailure(f"block {i} has {len(qe) + len(extra)} chambers, expected 11")
        points.extend(qe + extra)
    for idx in (0, 1):
        points.extend(_straddle(P[idx], eps[idx], plans[idx].lines, last, L, limit))  # type: ignore[union-attr]

    signs = [sign_vector(p, L) for p in points]
    hp = HardPair(k, L, points, signs, P, aux, f, eps,
                  meta={"squarings": k + 1, "raw_count": gps.raw_count,
                        "halvings": [p.halvings for p in plans],  # type: ignore[union-attr]
                        "on_segment": [p.on_segment for p in plans]})  # type: ignore[union-attr]
    report = verify_hard_pair(hp)
    if not report.ok:
        raise ConstructionFailure("hard pair failed verification: " + "; ".join(report.violations[:5]))
    return hp


# ---------------------------------------------------------------------------
# verification

@dataclass
class HardPairReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def verify_hard_pair(hp: HardPair) -> HardPairReport:
    rep = HardPairReport()
    v = rep.violations
    n = hp.n
    L = hp.lines
    if len(L) != 4 * n + 1:
        v.append(f"arrangement has {len(L)} lines, expected {4 * n + 1}")
    if len(hp.points) != 11 * n + 4:
        v.append(f"{len(hp.points)} points, expected {11 * n + 4}")
    if v:
        return rep
    if [sign_vector(p, L) for p in hp.points] != list(hp.signs):
        v.append("stored sign vectors differ from the points' sign vectors")
    P = hp.base_points
    allpts = hp.all_points()
    eps = hp.epsilons
    targets = corner_cells()
    for i in range(n):
        B = hp.block_lines(i)
        ch = enumerate_chambers(B)
        if not matches_reference(ch):
            v.append(f"block {i}: chamber pattern differs from the reference block")
        bsv = [sign_vector(p, B) for p in hp.block_points(i)]
        if set(bsv) != ch or len(set(bsv)) != 11:
            v.append(f"block {i}: witnesses do not cover the 11 chambers once each")
        if set(sign_vector(p, B) for p in hp.qe(i)) != targets:
            v.append(f"block {i}: corner witnesses are not in the corner cells")
        if any(ln.side(P[i]) >= 0 for ln in B):
            v.append(f"block {i}: point not in the central cell")
        e2 = eps[i] * eps[i]
        if any(_d2(q, P[i]) >= e2 for q in hp.qe(i)):
            v.append(f"Lcon1 violated at block {i}")
        for j in range(n):
            if j != i and not any(_ball_positive(ln, P[j], eps[j]) for ln in B):
                v.append(f"Lcon2 violated for block {i}, point {j}")
        for j in hp.f[i]:
            group = hp.qe(j) if j < n else [allpts[j]]
            cells = {sign_vector(q, B) for q in group}
            if len(cells) != 1 or 0 in next(iter(cells)):
                v.append(f"block {i}: witnesses of defining point {j} span several cells")
    last = L[4 * n]
    if last.value(P[0]) != 0 or last.value(P[1]) != 0:
        v.append("last line does not pass through the first two points")
    st = hp.straddle_points()
    for (qm, qp), b in ((st[0:2], 0), (st[2:4], 1)):
        B = hp.block_lines(b)
        if not (all(ln.side(qm) < 0 for ln in B) and all(ln.side(qp) < 0 for ln in B)):
            v.append(f"straddle points of block {b} leave the central cell")
        if not (last.side(qm) < 0 < last.side(qp)):
            v.append(f"straddle points of block {b} are not on opposite sides")
    return rep
