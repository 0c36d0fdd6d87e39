import pytest
from hypothesis import given, strategies as st

from gridspan.graphs import Graph


def test_normalises_edges():
    g = Graph(3, {(2, 0), (1, 2)})
    assert g.edges == {(0, 2), (1, 2)}
    assert g.labels == ["", "", ""]


@pytest.mark.parametrize("edges", [{(1, 1)}, {(0, 3)}])
def test_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        Graph(3, edges)


def test_triangle_and_degree():
    c4 = Graph(4, {(0, 1), (1, 2), (2, 3), (0, 3)})
    assert c4.is_triangle_free() and c4.min_degree() == 2
    assert c4.is_induced_cycle([0, 1, 2, 3])
    c4.add_edge(0, 2)
    assert c4.find_triangle() is not None
    assert not c4.is_induced_cycle([0, 1, 2, 3])


def test_path_and_induced():
    g = Graph(4, {(0, 1), (1, 2), (2, 3)})
    assert g.is_path([0, 1, 2, 3]) and not g.is_path([0, 2])
    h, back = g.induced([1, 2, 3])
    assert h.edges == {(0, 1), (1, 2)} and back == [1, 2, 3]


def test_dimacs():
    g = Graph(3, {(0, 1)})
    text = g.to_dimacs()
    assert text.splitlines()[0] == "p edge 3 1"
    assert "e 1 2" in text


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])))))
def test_json_round_trip(data):
    n, edges = data
    g = Graph(n, edges)
    assert Graph.from_json(g.to_json()) == g
