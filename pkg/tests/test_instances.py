import types
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from gridspan.arrangements import Arrangement, OrientedLine, sign_vector
from gridspan.embeddings.disks import Disk, disk_graph_edges, disk_inside, disks_intersect
from gridspan.embeddings.instances import (DegenerateBisector, InstanceBundle, build_dg_instance,
                                           build_udg_instance, check_halfplane_disk, dyadic_grid_bits,
                                           dyadic_points, extract_arrangement, place_halfplane_disks,
                                           r0_exceeded, raw_bisector_coefficients)
from gridspan.graphs import Graph

Y0 = OrientedLine((0, 1), 0)


def toy_pair(lines, points):
    L = Arrangement(lines)
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    return types.SimpleNamespace(k=0, lines=L, points=pts,
                                 to_json=lambda: {"lines": L.to_json(), "points": [list(map(str, p)) for p in pts]})


TOY = toy_pair([OrientedLine((1, 0), 0), OrientedLine((0, 1), 0), OrientedLine((1, 1), 3)],
               [(1, 1), (-1, 2), (2, -3), (-2, -2)])


def test_halfplane_disk_example():
    # centre (0, 2) radius 2 holds (0, 1) and (0, 3) and stays above y = 0
    d = Disk.of((0, 2), 2)
    assert check_halfplane_disk(d, Y0, 1, [(0, 1), (0, 3)])
    assert not check_halfplane_disk(Disk.of((0, 2), 3), Y0, 1, [(0, 1), (0, 3)])


def test_one_line_two_sides():
    P = [(Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1))]
    hd = place_halfplane_disks([Y0], P)
    dm, dp = hd.disk(0, -1), hd.disk(0, 1)
    assert dp.contains_point(P[0]) and dm.contains_point(P[1])
    assert not disks_intersect(dm, dp)


def test_radius_exceeds_threshold_and_contains():
    L, P = TOY.lines, TOY.points
    hd = place_halfplane_disks(L, P)
    assert r0_exceeded(L, P, hd.radius)
    for i, ln in enumerate(L):
        for s in (-1, 1):
            assert check_halfplane_disk(hd.disk(i, s), ln, s, P)


def test_point_on_line_rejected():
    with pytest.raises(ValueError):
        place_halfplane_disks([Y0], [(Fraction(1), Fraction(0))])


@settings(max_examples=25)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=3),
       st.lists(st.tuples(st.fractions(-6, 6, max_denominator=5), st.fractions(-6, 6, max_denominator=5)),
                min_size=1, max_size=5))
def test_halfplane_disks_property(lines, pts):
    ls = []
    for a, b, c in lines:
        assume(a or b)
        ls.append(OrientedLine((a, b), c))
    assume(len({l.key() for l in ls}) == len(ls))
    assume(all(l.value(p) != 0 for l in ls for p in pts))
    hd = place_halfplane_disks(ls, pts)
    for i, ln in enumerate(ls):
        for s in (-1, 1):
            assert check_halfplane_disk(hd.disk(i, s), ln, s, pts)


def test_dyadic_rounding_keeps_signs():
    g = dyadic_grid_bits(TOY.lines, TOY.points)
    Pq = dyadic_points(TOY.lines, TOY.points, g)
    assert all(p[0].denominator <= 2 ** g and p[1].denominator <= 2 ** g for p in Pq)
    assert [sign_vector(p, TOY.lines) for p in Pq] == [sign_vector(p, TOY.lines) for p in TOY.points]


def check_udg_bundle(bundle, L, signs):
    assert bundle.graph.n == 2 * len(L) + len(signs)
    assert disk_graph_edges(bundle.disks) == bundle.graph.edges
    assert len({d.radius_sq for d in bundle.disks}) == 1
    hv, wv = bundle.halfplane_vertices(), bundle.witness_vertices()
    for j, u in wv.items():
        for (i, s), v in hv.items():
            assert bundle.graph.has_edge(u, v) == (signs[j][i] == s)
    Lt = extract_arrangement(bundle.disks, bundle, "udg")
    for j, u in wv.items():
        assert sign_vector(bundle.disks[u].center, Lt) == signs[j]


def test_udg_toy():
    b = build_udg_instance(TOY)
    check_udg_bundle(b, TOY.lines, [sign_vector(p, TOY.lines) for p in TOY.points])


def test_udg_k1(udg1, hp1):
    check_udg_bundle(udg1, hp1.lines, hp1.signs)


def test_bundle_json_round_trip():
    b = build_udg_instance(TOY)
    back = InstanceBundle.from_json(b.to_json())
    assert back.graph == b.graph and back.disks == [Disk(d.cx, d.cy, d.radius_sq) for d in b.disks]
    assert back.roles == b.roles


def test_dg_toy(h_gadget):
    b = build_dg_instance(TOY, h_gadget)
    L, signs = TOY.lines, [sign_vector(p, TOY.lines) for p in TOY.points]
    assert b.graph.n == 2 * len(L) + h_gadget.graph.n * len(signs)
    assert disk_graph_edges(b.disks) == b.graph.edges
    hv = b.halfplane_vertices()
    for v, role in enumerate(b.roles):
        if role[0] != "gadget":
            continue
        j = role[1]
        for (i, s), u in hv.items():
            assert b.graph.has_edge(u, v) == (signs[j][i] == s)
            if signs[j][i] == s:
                assert disk_inside(b.disks[v], b.disks[u])
    Lt = extract_arrangement(b.disks, b, "dg")
    firsts = {r[1]: v for v, r in enumerate(b.roles) if r[0] == "gadget" and r[2] == h_gadget.a1}
    for j, v in firsts.items():
        assert sign_vector(b.disks[v].center, Lt) == signs[j]


def mini_bundle(disks):
    roles = [["halfplane", 0, -1], ["halfplane", 0, 1]]
    return InstanceBundle("udg", Graph(2), list(disks), [], roles)


def test_extraction_example():
    ds = [Disk.of((-1, 0), 1), Disk.of((1, 0), 1)]
    (ln,) = extract_arrangement(ds, mini_bundle(ds), "udg")
    assert (ln.a, ln.b, ln.c) == (1, 0, 0)
    assert ln.side((-1, 0)) < 0


def test_extraction_degenerate():
    ds = [Disk.of((1, 1), 1), Disk.of((1, 1), 2)]
    with pytest.raises(DegenerateBisector):
        extract_arrangement(ds, mini_bundle(ds), "udg")


coords = st.integers(-30, 30)


@given(st.integers(1, 30).flatmap(lambda m: st.tuples(
    st.just(m), st.lists(st.integers(-m, m), min_size=4, max_size=4), st.integers(1, m), st.integers(1, m))))
def test_coefficient_bounds(data):
    m, (x1, y1, x2, y2), r1, r2 = data
    assume((x1, y1) != (x2, y2))
    ds = [Disk.of((x1, y1), r1), Disk.of((x2, y2), r2)]
    (u,) = raw_bisector_coefficients([ds[0], Disk.of((x2, y2), r1)], mini_bundle(ds), "udg")
    assert all(abs(v) <= 8 * m * m for v in u)
    (g,) = raw_bisector_coefficients(ds, mini_bundle(ds), "dg")
    assert all(isinstance(v, int) or v.denominator == 1 for v in g)
    assert all(abs(v) <= 8 * m ** 3 for v in g)
