import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gridspan.embeddings.disks import Disk
from gridspan.embeddings.instances import build_udg_instance
from gridspan.embeddings.segments import Segment
from gridspan.errors import VerificationFailure
from gridspan.graphs import Graph
from gridspan.verification import (GridRealization, SystemViolation, UDGSolution, k_of_family, lower_bound_audit,
                                   round_udg_solution, scale_to_slack, search_min_grid, slack_violations,
                                   span_upper_bound, strict_violations, udg_solution_from_realization,
                                   verify_realization)

from oracles import brute_udg_min_grid
from test_instances import TOY

K2 = Graph(2, {(0, 1)})
K1K1 = Graph(2)
K3 = Graph(3, {(0, 1), (1, 2), (0, 2)})
P3 = Graph(3, {(0, 1), (1, 2)})


def test_verify_realization_examples(udg1):
    assert verify_realization(udg1.graph, udg1.disks)
    u, v = min(udg1.graph.edges)
    g = Graph(udg1.graph.n, set(udg1.graph.edges) - {(u, v)})
    chk = verify_realization(g, udg1.disks)
    assert not chk.ok and (chk.discrepancy.u, chk.discrepancy.v) == (u, v) and chk.count == 1
    touching = GridRealization("udg", [(0, 0), (2, 0)], radius=1)
    assert not verify_realization(K2, touching)
    assert verify_realization(K1K1, touching)
    with pytest.raises(ValueError):
        verify_realization(K3, touching)


def test_grid_realization_validation():
    with pytest.raises(ValueError):
        GridRealization("udg", [(0, 0)], radius=0)
    with pytest.raises(ValueError):
        GridRealization("dg", [(0, 0)], radii=[])
    with pytest.raises(ValueError):
        GridRealization("udg", [(Fraction(1, 2), 0)], radius=1)
    r = GridRealization("dg", [(0, 0), (3, 1)], radii=[1, 2])
    assert GridRealization.from_json(r.to_json()) == r


def test_from_objects_scales_by_lcm():
    g, s = GridRealization.from_objects("udg", [Disk.of((Fraction(1, 2), 0), Fraction(1, 3))])
    assert s == 6 and g.centers == [(3, 0)] and g.radius == 2


def test_k_of_family_examples():
    assert k_of_family([Disk.of((0, 0), 1)]) == 1
    assert k_of_family([Disk.of((1, 0), 1)]) == 2
    assert k_of_family([Segment((-3, 2), (1, -1))]) == 3
    assert k_of_family([Disk(0, 0, 2)]) == 2     # sqrt 2 rounds up


def test_search_regressions():
    assert search_min_grid(K2, "udg", 3).m == 1
    assert search_min_grid(K1K1, "udg", 3).m == 2
    assert search_min_grid(K3, "udg", 3).m == 1


@pytest.mark.parametrize("g", [K2, K1K1, K3, P3, Graph(3), Graph(3, {(0, 1)})])
def test_search_matches_plain_enumeration(g):
    got = search_min_grid(g, "udg", 3)
    assert got.m == brute_udg_min_grid(g.edges, g.n, 3)
    if got.found:
        w = got.witness
        assert verify_realization(g, w) and k_of_family(w) <= got.m
        # monotone: the same witness fits the next box too
        assert k_of_family(w) <= got.m + 1


def test_search_dg_and_errors():
    assert search_min_grid(K1K1, "dg", 3).m == 2
    with pytest.raises(ValueError):
        search_min_grid(K2, "seg", 2)
    assert not search_min_grid(Graph(6), "udg", 1).found


def test_round_examples():
    sol = UDGSolution(K2, [Fraction(0), Fraction(50)], [Fraction(0), Fraction(0)], Fraction(100))
    assert slack_violations(sol) == []
    out = round_udg_solution(sol)
    assert out.x == sol.x and out.r == 100 and strict_violations(out) == []
    with pytest.raises(SystemViolation):
        round_udg_solution(UDGSolution(K2, [Fraction(0)] * 2, [Fraction(0)] * 2, Fraction(50)))


def slack_instance(rng, n):
    """Random rational positions with no pair in the forbidden band; graph read off the distances."""
    while True:
        r = Fraction(rng.randint(100 * 7, 300 * 7), 7)
        xs = [Fraction(rng.randint(-3000, 3000), rng.randint(1, 9)) for _ in range(n)]
        ys = [Fraction(rng.randint(-3000, 3000), rng.randint(1, 9)) for _ in range(n)]
        E, ok = set(), True
        for i, j in itertools.combinations(range(n), 2):
            d = (xs[i] - xs[j]) ** 2 + (ys[i] - ys[j]) ** 2
            if d <= (r - 10) ** 2:
                E.add((i, j))
            elif d < (r + 10) ** 2:
                ok = False
                break
        if ok:
            return UDGSolution(Graph(n, E), xs, ys, r)


def test_round_random_sweep():
    rng = random.Random(11)
    for _ in range(100):
        sol = slack_instance(rng, rng.randint(4, 6))
        assert slack_violations(sol) == []
        assert strict_violations(round_udg_solution(sol)) == []


def test_scale_examples():
    # disks of radius 1 at (0,0), (1,0): the system threshold is the diameter 2
    sol = udg_solution_from_realization(K2, [Disk.of((0, 0), 1), Disk.of((1, 0), 1)])
    assert sol.r == 2
    s = scale_to_slack(sol)
    assert s.r >= 100 and slack_violations(s) == []
    tangent = udg_solution_from_realization(K1K1, [Disk.of((0, 0), 1), Disk.of((2, 0), 1)])
    with pytest.raises(SystemViolation):
        scale_to_slack(tangent)


@settings(max_examples=40)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.lists(st.tuples(st.fractions(-4, 4, max_denominator=5), st.fractions(-4, 4, max_denominator=5)),
             min_size=n, max_size=n),
    st.fractions(Fraction(1, 2), 3, max_denominator=4))))
def test_scale_then_round_reproduces_graph(data):
    pts, r = data
    n = len(pts)
    d2 = {(i, j): (pts[i][0] - pts[j][0]) ** 2 + (pts[i][1] - pts[j][1]) ** 2
          for i, j in itertools.combinations(range(n), 2)}
    if any(v == r * r for v in d2.values()):
        return
    g = Graph(n, {e for e, v in d2.items() if v < r * r})
    sol = UDGSolution(g, [p[0] for p in pts], [p[1] for p in pts], r)
    out = round_udg_solution(scale_to_slack(sol))
    rad = out.r / 2
    disks = [Disk(x, y, rad * rad) for x, y in zip(out.x, out.y)]
    assert verify_realization(g, disks)


def test_solution_from_realization(udg1):
    sol = udg_solution_from_realization(udg1.graph, udg1.disks)
    assert strict_violations(sol) == []


def test_span_upper_bound_values():
    assert span_upper_bound("udg", 1) == 2 ** 45
    assert span_upper_bound("dg", 2) == 2 ** 9 * 64 ** 12
    with pytest.raises(ValueError):
        span_upper_bound("seg", 1)


def toy_integer_bundle():
    b = build_udg_instance(TOY)
    real, _ = GridRealization.from_objects("udg", b.disks)
    b.source = dict(b.source, k=None)
    return b, real


def test_audit_toy():
    b, real = toy_integer_bundle()
    rep = lower_bound_audit(b, real)
    assert rep.ok and rep.sign_vectors_ok
    names = [q.name for q in rep.inequalities]
    assert names == ["coefficient bound", "span^2 upper bound"]
    assert all(q.to_json()["margin_bits"] > 0 for q in rep.inequalities)


def test_audit_rejects_tampered_realization():
    b, real = toy_integer_bundle()
    real.centers[-1] = (real.centers[-1][0] + 10 ** 9, real.centers[-1][1])
    with pytest.raises(VerificationFailure):
        lower_bound_audit(b, real)
