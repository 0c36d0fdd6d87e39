import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from gridspan.embeddings.disks import (Disk, disk_graph, disk_graph_bruteforce, disk_graph_edges,
                                       disk_in_halfplane, disk_inside, disks_intersect)
from gridspan.embeddings.segments import Segment, order_type, orient, segment_graph, segments_intersect

from oracles import decimal_disks_intersect, param_segments_intersect

small = st.fractions(min_value=-20, max_value=20, max_denominator=9)
pos = st.fractions(min_value=Fraction(1, 9), max_value=20, max_denominator=9)
disks = st.builds(lambda x, y, r: Disk(x, y, r), small, small, pos)
points = st.tuples(small, small)
segments = st.tuples(points, points).filter(lambda t: t[0] != t[1]).map(lambda t: Segment(*t))


def test_disk_examples():
    a, b = Disk.of((0, 0), 1), Disk.of((1, 0), 1)
    assert disks_intersect(a, b)
    assert not disks_intersect(a, Disk.of((2, 0), 1))
    # r1^2 = 2, r2^2 = 3, D = 10 > 5 + 2 sqrt 6
    assert not disks_intersect(Disk(0, 0, 2), Disk(3, 1, 3))
    assert disks_intersect(Disk(0, 0, 2), Disk(3, 0, 3))      # D = 9 < 5 + 2 sqrt 6
    with pytest.raises(ValueError):
        Disk(0, 0, 0)
    with pytest.raises(ValueError):
        Disk(0, 0, 4, 3)


def test_disk_containment_examples():
    assert disk_inside(Disk.of((1, 0), 1), Disk.of((0, 0), 2))          # internally tangent
    assert not disk_inside(Disk.of((Fraction(11, 10), 0), 1), Disk.of((0, 0), 2))
    assert disk_inside(Disk(0, 0, 1), Disk(0, 0, 2))
    assert disk_in_halfplane(Disk.of((0, 2), 2), (0, 1), 0, 1)
    assert not disk_in_halfplane(Disk.of((0, 2), 2), (0, 1), 0, -1)
    assert not disk_in_halfplane(Disk(0, 2, 5), (0, 1), 0, 1)


@given(disks, disks)
def test_disks_intersect_symmetric_and_matches_decimal(d1, d2):
    got = disks_intersect(d1, d2)
    assert got == disks_intersect(d2, d1)
    want = decimal_disks_intersect(d1, d2)
    if want is not None:
        assert got == want


def test_float_filter_ten_thousand_pairs():
    rng = random.Random(7)
    checked = 0
    for _ in range(10_000):
        d = [Disk(Fraction(rng.randint(-400, 400), 20), Fraction(rng.randint(-400, 400), 20),
                  Fraction(rng.randint(1, 900), 9)) for _ in range(2)]
        fx, fy = float(d[0].cx - d[1].cx), float(d[0].cy - d[1].cy)
        gap = float(d[0].radius_sq) ** 0.5 + float(d[1].radius_sq) ** 0.5 - (fx * fx + fy * fy) ** 0.5
        if abs(gap) < 1e-9:
            continue
        checked += 1
        assert disks_intersect(*d) == (gap > 0)
        assert disks_intersect(d[1], d[0]) == (gap > 0)
    assert checked > 9_900


@settings(max_examples=50)
@given(st.lists(disks, min_size=0, max_size=25))
def test_tree_edges_match_brute_force(ds):
    assert disk_graph_edges(ds) == disk_graph_bruteforce(ds)


def test_tree_edges_mixed_sizes():
    rng = random.Random(3)
    ds = [Disk(rng.randint(-200, 200), rng.randint(-200, 200), rng.choice([1, 4, 25, 2, 10_000]))
          for _ in range(300)]
    assert disk_graph_edges(ds) == disk_graph_bruteforce(ds)


def test_disk_graph_examples():
    assert disk_graph([Disk.of((0, 0), 1), Disk.of((5, 0), 1)]).edges == set()


def test_segment_examples():
    assert segment_graph([Segment((0, 0), (2, 0)), Segment((1, -1), (1, 1))]).edges == {(0, 1)}
    assert segments_intersect(Segment((0, 0), (2, 0)), Segment((2, 0), (3, 5)))      # touching end
    assert segments_intersect(Segment((0, 0), (2, 0)), Segment((1, 0), (3, 0)))      # overlap
    assert not segments_intersect(Segment((0, 0), (1, 0)), Segment((2, 0), (3, 0)))
    with pytest.raises(ValueError):
        Segment((1, 1), (1, 1))


@given(segments, segments)
def test_segment_predicate_matches_parametric_oracle(s, t):
    assert segments_intersect(s, t) == param_segments_intersect(s, t)


@given(segments, segments)
def test_segment_endpoint_swap(s, t):
    want = segments_intersect(s, t)
    assert segments_intersect(Segment(s.b, s.a), t) == want
    assert segments_intersect(t, s) == want


@given(segments, segments, st.tuples(small, small, small, small, small, small))
def test_segment_affine_invariance(s, t, m):
    a, b, c, d, e, f = m
    assume(a * d - b * c > 0)

    def A(p):
        return (a * p[0] + b * p[1] + e, c * p[0] + d * p[1] + f)

    assert segments_intersect(Segment(A(s.a), A(s.b)), Segment(A(t.a), A(t.b))) == segments_intersect(s, t)


def test_order_type_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (1, 1), (2, 2)) == 0
    ot = order_type([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert len(ot) == 4 and set(ot.values()) == {1}
