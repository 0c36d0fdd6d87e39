"""The onion graph O_k, the rotated family Y and the disk gadget H.

Frame units: the onion disk of ``a`` has radius 161/256 and the middle path
vertex ``c`` sits at distance 1 below it.  The four-cycle F consists of four
disks of radius 141/2 centred at (+-64, +-64); the bounded hole between them
contains the inscribed circle of radius about 20 around the origin.

The first copy of Y sits at the origin of the hole.  The second copy is built
off-centre in another copy of the hole frame and then inverted in the circle
about the origin that maps every disk of F onto itself, which carries it into
the unbounded region.  Paths are chains of disks along polyline routes: a
radial exit from Y followed by a polar interpolation that keeps the cyclic
order of the four paths of one family, so no two of them cross.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import ConstructionFailure
from ..graphs import Graph
from ..numeric import Q
from .disks import Disk, disk_graph_edges, disks_intersect

# ---------------------------------------------------------------------------
# O_k

ONION3 = {
    "a": ((0, 0), Fraction(161, 256)),
    "c": ((0, -1), Fraction(45, 128)),
    "b": ((0, Fraction(-267, 64)), Fraction(717, 256)),
    "u2": ((Fraction(-121, 256), Fraction(-123, 128)), Fraction(119, 256)),
    "u4": ((Fraction(121, 256), Fraction(-123, 128)), Fraction(119, 256)),
    "u0": ((Fraction(-1345, 256), Fraction(83, 64)), Fraction(1229, 256)),
    "u6": ((Fraction(1345, 256), Fraction(83, 64)), Fraction(1229, 256)),
    "u1": ((Fraction(-125, 128), Fraction(-5, 16)), Fraction(97, 256)),
    "u5": ((Fraction(125, 128), Fraction(-5, 16)), Fraction(97, 256)),
}
ONION3["u3"] = ONION3["c"]


def onion_labels(k: int) -> list[str]:
    return ["a", "b"] + [f"u{j}" for j in range(2 * k + 1)]


def onion_graph(k: int) -> Graph:
    """Path u_0..u_2k plus a, b joined to every even u_j."""
    if k < 1 or k % 2 == 0:
        raise ValueError("onion parameter must be odd and positive")
    labels = onion_labels(k)
    pos = {s: i for i, s in enumerate(labels)}
    es = {(pos[f"u{j}"], pos[f"u{j + 1}"]) for j in range(2 * k)}
    for j in range(0, 2 * k + 1, 2):
        es.add((pos["a"], pos[f"u{j}"]))
        es.add((pos["b"], pos[f"u{j}"]))
    return Graph(len(labels), es, labels)


def onion_realization(k: int = 3) -> list[Disk]:
    if k != 3:
        raise ValueError("only the k=3 onion has a stored canonical layout")
    return [Disk.of(ONION3[s][0], ONION3[s][1]) for s in onion_labels(3)]


# ---------------------------------------------------------------------------
# rational rotations

def rotation_for(N: int) -> tuple[Fraction, Fraction]:
    """(cos, sin) of a rational rotation close to 2*pi/(N+1), from a tan half-angle."""
    t = Fraction(math.tan(math.pi / (N + 1))).limit_denominator(32)
    den = 1 + t * t
    return (1 - t * t) / den, 2 * t / den


def _rot(p, cs, times: int):
    x, y = Q(p[0]), Q(p[1])
    c, s = cs
    for _ in range(times):
        x, y = c * x - s * y, s * x + c * y
    return (x, y)


# ---------------------------------------------------------------------------
# frame constants

F_OFFSET = Fraction(64)
F_RADIUS = Fraction(141, 2)
INVERSION_K2 = 2 * F_OFFSET ** 2 - F_RADIUS ** 2   # power of the origin w.r.t. each F disk
F_CENTERS = [(F_OFFSET, F_OFFSET), (-F_OFFSET, F_OFFSET), (-F_OFFSET, -F_OFFSET), (F_OFFSET, -F_OFFSET)]
F_ANGLES = [math.pi / 4 + m * math.pi / 2 for m in range(4)]
HOLE = math.sqrt(2) * float(F_OFFSET) - float(F_RADIUS)

EXIT_RADIUS = (11.5, 10.0)     # radial exit length for Y^(1) (around O) and Y^(2) (around its centre)
SPIRAL_END = 17.0              # distance from O where the final radial approach begins
Y2_SCALE = Fraction(1, 4)
Y2_DISTANCE = 5.5
KAPPA = 0.1                    # chain radius cap relative to the distance from O
BETA = 0.4                     # chain radius cap relative to obstacle clearance
GRID = 2 ** 20                 # dyadic grid for float-derived coordinates


def _dyadic(x: float, grid: int = GRID) -> Fraction:
    return Fraction(round(x * grid), grid)


def invert_disk(d: Disk, k2: Fraction = INVERSION_K2) -> Disk:
    """Image of an open disk not containing the origin under z -> k2 z / |z|^2."""
    if d.radius is None:
        raise ValueError("inversion needs a rational radius")
    p = d.cx * d.cx + d.cy * d.cy - d.radius_sq
    if p <= 0:
        raise ConstructionFailure("inversion centre lies in a gadget disk")
    f = k2 / p
    return Disk.of((d.cx * f, d.cy * f), d.radius * f)


# ---------------------------------------------------------------------------
# float routing helpers

def _fl(d: Disk) -> tuple[float, float, float]:
    return (float(d.cx), float(d.cy), math.sqrt(float(d.radius_sq)))


def _norm_angle(a: float) -> float:
    while a <= -math.pi:
        a += 2 * math.pi
    while a > math.pi:
        a -= 2 * math.pi
    return a


def assign_cyclic(starts: Sequence[float], targets: Sequence[float]) -> list[tuple[int, float]]:
    """Match starts to targets keeping cyclic order; returns (target, lifted angle) per start.

    Lifted angles differ from their start angle by less than pi and remain in the
    cyclic order of the starts, so linear interpolation never makes two routes meet.
    """
    n = len(starts)
    two_pi = 2 * math.pi
    order = sorted(range(n), key=lambda i: starts[i] % two_pi)
    torder = sorted(range(len(targets)), key=lambda i: targets[i] % two_pi)
    best = None
    for r in range(len(targets)):
        lift = []
        for k, i in enumerate(order):
            t = torder[(k + r) % len(targets)]
            delta = _norm_angle(targets[t] - starts[i])
            lift.append((i, t, starts[i] + delta, delta))
        # unwrapped positions measured from the first start must stay increasing
        base = starts[order[0]]
        L = [base + (starts[i] - base) % two_pi + x[3] for i, x in zip(order, lift)]
        if any(L[k] >= L[k + 1] for k in range(n - 1)) or L[-1] - L[0] >= two_pi:
            continue
        score = max(abs(x[3]) for x in lift)
        if best is None or score < best[0]:
            best = (score, lift)
    if best is None:
        raise ConstructionFailure("no order-preserving assignment of paths to F")
    out: list[tuple[int, float]] = [(0, 0.0)] * n
    for i, t, ang, _ in best[1]:
        out[i] = (t, ang)
    return out


@dataclass
class _Route:
    pts: list[tuple[float, float]]
    obstacles: list[tuple[float, float, float]]
    fan: list[tuple[float, float]]        # per point: centre used for the radius cap
    start_len: float = 0.0


def _polyline_len(pts) -> list[float]:
    acc = [0.0]
    for i in range(1, len(pts)):
        acc.append(acc[-1] + math.dist(pts[i - 1], pts[i]))
    return acc


def _seg_dist(p, a, b) -> float:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    L = dx * dx + dy * dy
    t = 0.0 if L == 0 else max(0.0, min(1.0, ((p[0] - ax) * dx + (p[1] - ay) * dy) / L))
    return math.hypot(p[0] - ax - t * dx, p[1] - ay - t * dy)


def _clearance(p, obstacles, others) -> float:
    c = math.inf
    for (x, y, r) in obstacles:
        c = min(c, math.hypot(p[0] - x, p[1] - y) - r)
    for pl in others:
        for q in pl:
            c = min(c, math.hypot(p[0] - q[0], p[1] - q[1]))
    return c


def _radius_at(route: _Route, idx: int, others) -> float:
    p = route.pts[idx]
    fx, fy = route.fan[idx]
    cap = KAPPA * max(math.hypot(p[0] - fx, p[1] - fy), 1e-9)
    cl = _clearance(p, route.obstacles, others)
    return min(cap, BETA * cl)


def _place_chain(route: _Route, others, step: float = 1.5) -> list[tuple[float, float, float]]:
    """Centres and radii along the route with spacing about ``step`` local radii."""
    acc = _polyline_len(route.pts)
    rad = [_radius_at(route, i, others) for i in range(len(route.pts))]
    if min(rad) <= 0:
        raise ConstructionFailure("path route touches an obstacle")
    # radii may change by at most KAPPA per unit length, in both directions
    for i in range(1, len(rad)):
        rad[i] = min(rad[i], rad[i - 1] + KAPPA * (acc[i] - acc[i - 1]))
    for i in range(len(rad) - 2, -1, -1):
        rad[i] = min(rad[i], rad[i + 1] + KAPPA * (acc[i + 1] - acc[i]))
    # cumulative "radius-normalised" length
    u = [0.0]
    for i in range(1, len(acc)):
        u.append(u[-1] + (acc[i] - acc[i - 1]) / (step * min(rad[i], rad[i - 1])))
    n = max(4, math.ceil(u[-1]))
    out = []
    j = 0
    for k in range(n + 1):
        target = u[-1] * k / n
        while j < len(u) - 2 and u[j + 1] < target:
            j += 1
        span = u[j + 1] - u[j]
        t = 0.0 if span == 0 else (target - u[j]) / span
        t = max(0.0, min(1.0, t))
        p0, p1 = route.pts[j], route.pts[j + 1]
        x = p0[0] + t * (p1[0] - p0[0])
        y = p0[1] + t * (p1[1] - p0[1])
        r = min(rad[j], rad[j + 1])
        out.append((x, y, r))
    return out


def _ray(p0, d, length, n=60):
    return [(p0[0] + d[0] * length * k / n, p0[1] + d[1] * length * k / n) for k in range(n + 1)]


def _unit(v):
    n = math.hypot(v[0], v[1])
    return (v[0] / n, v[1] / n)


def _build_route(start_disk, direction, fan_center, exit_radius, target_m, lifted_angle,
                 obstacles) -> _Route:
    """Exit ray from the start disk, polar spiral about O, radial approach to F_m."""
    cx, cy, r = start_disk
    d = _unit(direction)
    fx, fy = fan_center
    b0 = (cx + d[0] * r, cy + d[1] * r)
    r0 = min(KAPPA * math.hypot(b0[0], b0[1]), BETA * _clearance(b0, obstacles, ()))
    b0 = (b0[0] + 0.5 * r0 * d[0], b0[1] + 0.5 * r0 * d[1])
    # ray from b0 along d until distance exit_radius from the fan centre
    rel = (b0[0] - fx, b0[1] - fy)
    proj = rel[0] * d[0] + rel[1] * d[1]
    disc = proj * proj - (rel[0] ** 2 + rel[1] ** 2 - exit_radius ** 2)
    length = -proj + math.sqrt(max(disc, 0.0))
    if length <= 0:
        raise ConstructionFailure("exit ray starts outside the exit circle")
    pts = _ray(b0, d, length, 120)
    fans = [(0.0, 0.0)] * len(pts)
    E = pts[-1]
    rho0, phi0 = math.hypot(*E), math.atan2(E[1], E[0])
    # lifted_angle is measured on the branch of phi0
    n = 120
    for k in range(1, n + 1):
        t = k / n
        rho = rho0 + (SPIRAL_END - rho0) * t
        w = t * t * (3 - 2 * t)          # leave and arrive radially
        phi = phi0 + (lifted_angle - phi0) * w
        pts.append((rho * math.cos(phi), rho * math.sin(phi)))
        fans.append((0.0, 0.0))
    ang = F_ANGLES[target_m]
    u = (math.cos(ang), math.sin(ang))
    end = HOLE - 0.5 * KAPPA * HOLE
    for k in range(1, 11):
        rho = SPIRAL_END + (end - SPIRAL_END) * k / 10
        pts.append((rho * u[0], rho * u[1]))
        fans.append((0.0, 0.0))
    return _Route(pts, obstacles, fans)


def _finish_chain(route: _Route, others, target_m: int) -> list[tuple[float, float, float]]:
    """Chain whose first disk overlaps the start disk and last disk overlaps F_m."""
    chain = _place_chain(route, others)
    x, y, _ = chain[-1]
    chain[-1] = (x, y, KAPPA * HOLE)
    return chain


def _exact_chain(chain) -> list[Disk]:
    return [Disk.of((_dyadic(x), _dyadic(y)), _dyadic(r)) for x, y, r in chain]


# ---------------------------------------------------------------------------
# H

@dataclass
class HGadget:
    graph: Graph
    disks: list[Disk]
    a1: int
    k_onion: int
    N: int
    F: list[int]
    Y: list[dict] = field(default_factory=list)    # per copy: {"a", "C", "X": [[...]], "gaps"}
    P: list[list[int]] = field(default_factory=list)
    Q: dict = field(default_factory=dict)           # (i, j) -> four paths, start .. F vertex

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        """Canonical centre of D(a^(1))."""
        return self.disks[self.a1].center

    def z_vertices(self) -> list[int]:
        vs = {self.Y[0]["a"], self.Y[1]["a"], *self.F}
        for y in self.Y:
            vs.update(y["C"])
        for p in self.P:
            vs.update(p)
        return sorted(vs)

    def h_vertices(self, i: int, j: int) -> list[int]:
        vs = set(self.F) | set(self.Y[j]["X"][i])
        for p in self.Q[(i, j)]:
            vs.update(p)
        return sorted(vs)

    def to_json(self) -> dict:
        return {
            "k_onion": self.k_onion, "N": self.N,
            "graph": self.graph.to_json(), "labels": self.graph.labels,
            "disks": [d.to_json() for d in self.disks],
            "a1": self.a1, "F": self.F, "Y": self.Y, "P": self.P,
            "Q": [[i, j, paths] for (i, j), paths in sorted(self.Q.items())],
        }

    @classmethod
    def from_json(cls, d: dict) -> "HGadget":
        g = Graph.from_json({**d["graph"], "labels": d.get("labels")})
        return cls(g, [Disk.from_json(x) for x in d["disks"]], d["a1"], d["k_onion"], d["N"], list(d["F"]),
                   [dict(y) for y in d["Y"]], [list(p) for p in d["P"]],
                   {(i, j): [list(p) for p in paths] for i, j, paths in d["Q"]})


class _Builder:
    def __init__(self):
        self.disks: list[Disk] = []
        self.labels: list[str] = []

    def add(self, d: Disk, label: str) -> int:
        self.disks.append(d)
        self.labels.append(label)
        return len(self.disks) - 1


def _y_disks(N: int, scale: Fraction, center) -> tuple[Disk, list[dict[str, Disk]]]:
    """D(a) and the N+1 rotated onion copies, mapped by z -> scale z + center."""
    cs = rotation_for(N)
    zx, zy = Q(center[0]), Q(center[1])
    a = Disk.of((zx, zy), ONION3["a"][1] * scale)
    copies = []
    for i in range(N + 1):
        X = {}
        for s in onion_labels(3)[1:]:
            c, r = ONION3[s]
            p = _rot(c, cs, i)
            X[s] = Disk.of((zx + scale * p[0], zy + scale * p[1]), r * scale)
        copies.append(X)
    return a, copies


def _y2_center(N: int) -> tuple[Fraction, Fraction]:
    """Offset of the second copy: O must sit in the widest gap between exit rays."""
    cs = rotation_for(N)
    angles = []
    for i in range(N + 1):
        for s in ("b", "u0", "u6", "c"):
            p = _rot(ONION3[s][0], cs, i)
            angles.append(math.atan2(float(p[1]), float(p[0])))
        p = _rot(ONION3["c"][0], cs, i)
        angles.append(math.atan2(-float(p[1]), -float(p[0])))
    angles = sorted(a % (2 * math.pi) for a in angles)
    gaps = [((angles[(k + 1) % len(angles)] - angles[k]) % (2 * math.pi), k) for k in range(len(angles))]
    g, k = max(gaps)
    beta = angles[k] + g / 2          # direction from the copy centre towards O
    return (_dyadic(-Y2_DISTANCE * math.cos(beta), 64), _dyadic(-Y2_DISTANCE * math.sin(beta), 64))


def _frame_side(N: int, second: bool, F: list[Disk]):
    """Disks of one side (Y copy, gaps, P and Q chains) in hole-frame coordinates.

    Returns a dictionary with the exact disks, keyed structures and, for the
    second side, the list to be inverted.
    """
    scale = Y2_SCALE if second else Fraction(1)
    center = _y2_center(N) if second else (Fraction(0), Fraction(0))
    a, copies = _y_disks(N, scale, center)
    fan = (float(center[0]), float(center[1]))
    exit_r = EXIT_RADIUS[1] if second else EXIT_RADIUS[0]
    Ff = [_fl(d) for d in F]
    origin_guard = [(0.0, 0.0, 0.0)] if second else []
    af = _fl(a)

    # gap disks between a and the chosen c_i, then P routes
    c_dirs = []
    for X in copies:
        c = X["u3"]
        c_dirs.append(math.atan2(float(c.cy - a.cy), float(c.cx - a.cx)))
    chosen = []
    for m in range(4):
        # copy whose centre direction, seen from O after the exit, is nearest F_m
        best = None
        for i, X in enumerate(copies):
            if i in chosen:
                continue
            cx, cy, cr = _fl(X["u3"])
            d = _unit((cx - fan[0], cy - fan[1]))
            ex = (fan[0] + d[0] * exit_r, fan[1] + d[1] * exit_r)
            dev = abs(_norm_angle(math.atan2(ex[1], ex[0]) - F_ANGLES[m]))
            if best is None or dev < best[0]:
                best = (dev, i)
        chosen.append(best[1])
    gap = 1 - ONION3["a"][1] - ONION3["c"][1]
    gaps = []
    for i in chosen:
        u = _rot((0, -1), rotation_for(N), i)
        t = (ONION3["a"][1] + gap / 2) * scale
        gaps.append(Disk.of((center[0] + t * u[0], center[1] + t * u[1]), 3 * gap / 4 * scale))
    cf = [_fl(X["u3"]) for X in copies]

    p_starts = []
    for i in chosen:
        cx, cy, cr = cf[i]
        d = _unit((cx - fan[0], cy - fan[1]))
        p_starts.append(((cx, cy, cr), d))
    p_assign = assign_cyclic([_exit_angle(s, d, fan, exit_r) for s, d in p_starts], F_ANGLES)
    p_obst_base = [af] + origin_guard + [_fl(g) for g in gaps]
    p_routes = []
    for idx, ((sd, d), (m, ang)) in enumerate(zip(p_starts, p_assign)):
        obst = p_obst_base + [cf[i] for i in range(len(copies)) if i != chosen[idx]] + [Ff[q] for q in range(4) if q != m]
        p_routes.append((_build_route(sd, d, fan, exit_r, m, ang, obst), m))
    p_chains = []
    for idx, (route, m) in enumerate(p_routes):
        others = [r.pts for k, (r, _) in enumerate(p_routes) if k != idx]
        p_chains.append((_exact_chain(_finish_chain(route, others, m)), m))

    # Q routes per copy
    q_chains = {}
    for i, X in enumerate(copies):
        Xf = {s: _fl(d) for s, d in X.items()}
        starts = []
        cx, cy, _ = Xf["u3"]
        away = _unit((af[0] - cx, af[1] - cy))
        starts.append(("a", af, away))
        for s in ("b", "u0", "u6"):
            x, y, r = Xf[s]
            starts.append((s, Xf[s], _unit((x - fan[0], y - fan[1]))))
        assign = assign_cyclic([_exit_angle(sd, d, fan, exit_r) for _, sd, d in starts], F_ANGLES)
        routes = []
        for (s, sd, d), (m, ang) in zip(starts, assign):
            obst = [Xf[t] for t in Xf if t != s] + ([af] if s != "a" else []) + origin_guard
            obst += [Ff[q] for q in range(4) if q != m]
            routes.append((s, _build_route(sd, d, fan, exit_r, m, ang, obst), m))
        out = []
        for idx, (s, route, m) in enumerate(routes):
            others = [r.pts for k, (_, r, _) in enumerate(routes) if k != idx]
            out.append((s, _exact_chain(_finish_chain(route, others, m)), m))
        q_chains[i] = out
    return {"a": a, "copies": copies, "chosen": chosen, "gaps": gaps, "P": p_chains, "Q": q_chains}


def _exit_angle(start_disk, d, fan, exit_r) -> float:
    cx, cy, r = start_disk
    b0 = (cx + d[0] * r, cy + d[1] * r)
    rel = (b0[0] - fan[0], b0[1] - fan[1])
    proj = rel[0] * d[0] + rel[1] * d[1]
    disc = proj * proj - (rel[0] ** 2 + rel[1] ** 2 - exit_r ** 2)
    length = -proj + math.sqrt(max(disc, 0.0))
    E = (b0[0] + d[0] * length, b0[1] + d[1] * length)
    return math.atan2(E[1], E[0])


def build_h_gadget(k_onion: int = 3, N: int = 8, verify: bool = True) -> HGadget:
    if k_onion != 3:
        raise ValueError("supported onion parameter: 3")
    if not 8 <= N <= 16:
        raise ValueError("supported rotation counts: 8..16")
    B = _Builder()
    Fd = [Disk.of(c, F_RADIUS) for c in F_CENTERS]
    F = [B.add(d, f"F{m}") for m, d in enumerate(Fd)]
    sides = [_frame_side(N, False, Fd), _frame_side(N, True, Fd)]

    def place(d: Disk, j: int) -> Disk:
        if j == 0:
            return d
        inv = invert_disk(d)
        r = inv.radius
        return Disk.of((_dyadic(float(inv.cx)), _dyadic(float(inv.cy))), _dyadic(float(r)))

    Y = []
    P_half = []
    Qs = {}
    for j, side in enumerate(sides):
        tag = f"Y{j + 1}"
        a = B.add(place(side["a"], j), f"{tag}.a")
        Xs = []
        for i, X in enumerate(side["copies"]):
            ids = []
            for s in onion_labels(3):
                if s == "a":
                    ids.append(a)
                else:
                    ids.append(B.add(place(X[s], j), f"{tag}.X{i}.{s}"))
            Xs.append(ids)
        C = [Xs[i][onion_labels(3).index("u3")] for i in range(N + 1)]
        gap_ids = [B.add(place(g, j), f"{tag}.gap{k}") for k, g in enumerate(side["gaps"])]
        halves = {}
        for k, (chain, m) in enumerate(side["P"]):
            ids = [B.add(place(d, j), f"{tag}.P{m}.{t}") for t, d in enumerate(chain)]
            i = side["chosen"][k]
            halves[m] = [a, gap_ids[k], C[i]] + ids
        P_half.append(halves)
        for i, paths in side["Q"].items():
            lab = onion_labels(3)
            plist = []
            for s, chain, m in paths:
                ids = [B.add(place(d, j), f"{tag}.Q{i}.{s}.{t}") for t, d in enumerate(chain)]
                plist.append([Xs[i][lab.index(s)]] + ids + [F[m]])
            Qs[(i, j)] = plist
        Y.append({"a": a, "C": C, "X": Xs, "gaps": gap_ids})
    P = []
    for m in range(4):
        if m not in P_half[0] or m not in P_half[1]:
            raise ConstructionFailure(f"no P path reaches F{m}")
        P.append(P_half[0][m] + [F[m]] + list(reversed(P_half[1][m])))
    edges = disk_graph_edges(B.disks)
    g = Graph(len(B.disks), edges, B.labels)
    h = HGadget(g, B.disks, Y[0]["a"], k_onion, N, F, Y, P, Qs)
    if verify:
        problems = verify_h_gadget(h)
        if problems:
            raise ConstructionFailure("H gadget invariant failed: " + "; ".join(problems[:5]))
    return h


# ---------------------------------------------------------------------------
# checks

def verify_h_gadget(h: HGadget) -> list[str]:
    """All structural invariants; returns the list of violations (empty when valid)."""
    bad: list[str] = []
    g = h.graph
    if disk_graph_edges(h.disks) != g.edges:
        bad.append("stored graph differs from the disk intersection graph")
    Fd = [h.disks[v] for v in h.F]
    if len({d.radius_sq for d in Fd}) != 1:
        bad.append("F disks differ in size")
    if not g.is_induced_cycle(h.F):
        bad.append("F is not an induced 4-cycle")
    O = onion_graph(h.k_onion)
    for j, y in enumerate(h.Y):
        if not g.is_induced_cycle(y["C"]):
            bad.append(f"C^({j + 1}) is not an induced cycle")
        for c in y["C"]:
            if disks_intersect(h.disks[y["a"]], h.disks[c]):
                bad.append(f"D(a^({j + 1})) meets D({g.labels[c]})")
        for i, X in enumerate(y["X"]):
            sub, _ = g.induced(X)
            # induced() sorts vertices; compare under that relabelling
            pos = {v: k for k, v in enumerate(sorted(X))}
            want = {tuple(sorted((pos[X[u]], pos[X[v]]))) for u, v in O.edges}
            if sub.edges != want:
                bad.append(f"X_{i}^({j + 1}) does not realise the onion graph")
            Hij, _ = g.induced(h.h_vertices(i, j))
            if not Hij.is_triangle_free():
                bad.append(f"H^({i},{j + 1}) has a triangle")
            if Hij.min_degree() < 2:
                bad.append(f"H^({i},{j + 1}) has minimum degree below two")
            qs = h.Q[(i, j)]
            if sorted(p[0] for p in qs) != sorted(X[onion_labels(h.k_onion).index(s)] for s in ("a", "b", "u0", "u6")):
                bad.append(f"Q paths of X_{i}^({j + 1}) start at the wrong vertices")
            if sorted(p[-1] for p in qs) != sorted(h.F):
                bad.append(f"Q paths of X_{i}^({j + 1}) do not end at distinct F vertices")
            inner = [v for p in qs for v in p[1:-1]]
            if len(inner) != len(set(inner)):
                bad.append(f"Q paths of X_{i}^({j + 1}) share vertices")
            for p in qs:
                if not g.is_path(p):
                    bad.append(f"Q path from {g.labels[p[0]]} is broken")
    a1, a2 = h.Y[0]["a"], h.Y[1]["a"]
    for p in h.P:
        if p[0] != a1 or p[-1] != a2 or not g.is_path(p):
            bad.append("P path does not join a^(1) to a^(2)")
        if not (set(p) & set(h.Y[0]["C"]) and set(p) & set(h.F) and set(p) & set(h.Y[1]["C"])):
            bad.append("P path misses C^(1), F or C^(2)")
    inner = [v for p in h.P for v in p[1:-1]]
    if len(inner) != len(set(inner)):
        bad.append("P paths are not internally disjoint")
    Z, _ = g.induced(h.z_vertices())
    if not Z.is_triangle_free():
        bad.append("Z has a triangle")
    if Z.min_degree() < 2:
        bad.append("Z has minimum degree below two")
    return bad


# ---------------------------------------------------------------------------
# straight-line drawing check

class FaryPreconditionError(ValueError):
    pass


@dataclass
class FaryReport:
    ok: bool
    crossing: Optional[tuple[tuple[int, int], tuple[int, int]]] = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "crossing": None if self.crossing is None else [list(e) for e in self.crossing]}


def check_fary(disks: Sequence[Disk], graph: Graph) -> FaryReport:
    """Is the drawing with vertices at disk centres and straight edges plane?"""
    from .segments import Segment, orient, segments_intersect

    if len(disks) != graph.n:
        raise FaryPreconditionError("realization and graph sizes differ")
    if not graph.is_triangle_free():
        raise FaryPreconditionError("graph has a triangle")
    if graph.n and graph.min_degree() < 2:
        raise FaryPreconditionError("graph has a vertex of degree below two")
    pts = [d.center for d in disks]
    edges = sorted(graph.edges)
    segs = []
    for u, v in edges:
        if pts[u] == pts[v]:
            return FaryReport(False, ((u, v), (u, v)))
        segs.append(Segment(pts[u], pts[v]))
    box = [(min(s.a[0], s.b[0]), max(s.a[0], s.b[0]), min(s.a[1], s.b[1]), max(s.a[1], s.b[1])) for s in segs]
    order = sorted(range(len(segs)), key=lambda i: box[i][0])
    active: list[int] = []
    for i in order:
        active = [j for j in active if box[j][1] >= box[i][0]]
        for j in active:
            if box[j][3] < box[i][2] or box[i][3] < box[j][2]:
                continue
            e, f = edges[i], edges[j]
            shared = set(e) & set(f)
            if not shared:
                if segments_intersect(segs[i], segs[j]):
                    return FaryReport(False, (min(e, f), max(e, f)))
                continue
            # adjacent edges only meet at the common end unless they overlap collinearly
            c = shared.pop()
            x = e[0] if e[1] == c else e[1]
            y = f[0] if f[1] == c else f[1]
            if orient(pts[c], pts[x], pts[y]) == 0:
                dx = (pts[x][0] - pts[c][0], pts[x][1] - pts[c][1])
                dy = (pts[y][0] - pts[c][0], pts[y][1] - pts[c][1])
                if dx[0] * dy[0] + dx[1] * dy[1] > 0:
                    return FaryReport(False, (min(e, f), max(e, f)))
        active.append(i)
    return FaryReport(True)
