from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddminor.graph import (
    Graph,
    Graph6Error,
    GraphFormatError,
    complement,
    connected_components,
    induced_subgraph,
    parse_edge_list,
    parse_graph6,
    read_graph,
    to_graph6,
)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_graph6_single_vertex():
    g = parse_graph6("@")
    assert g.n == 1 and g.edge_count() == 0


def test_graph6_c5_matches_reference_codec():
    ref = nx.to_graph6_bytes(nx.cycle_graph(5), header=False).decode().strip()
    g = parse_graph6(ref)
    assert g == Graph.cycle(5)
    assert sorted(g.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert to_graph6(g) == ref


def test_graph6_prefix_accepted():
    assert parse_graph6(">>graph6<<Dhc\n") == Graph.cycle(5)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("D", 1),  # payload missing
        ("Dhcc", 3),  # one byte too many
        ("D h", 1),  # out-of-range character
        ("~?", 2),  # truncated long header
    ],
)
def test_graph6_errors_carry_offsets(text, offset):
    with pytest.raises(Graph6Error) as err:
        parse_graph6(text)
    assert err.value.offset == offset


def test_graph6_empty_message():
    with pytest.raises(GraphFormatError, match="empty"):
        parse_graph6("")


def test_graph6_long_header_round_trip():
    g = Graph.cycle(70)
    text = to_graph6(g)
    assert text.startswith("~")
    assert parse_graph6(text) == g
    assert text == nx.to_graph6_bytes(nx.cycle_graph(70), header=False).decode().strip()


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_graph6_round_trip(g):
    text = to_graph6(g)
    assert parse_graph6(text) == g
    assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_edge_list_examples():
    assert parse_edge_list("2\n0 1") == Graph.complete(2)
    assert parse_edge_list("5\n0 1\n1 2\n2 3\n3 4\n4 0") == Graph.cycle(5)
    assert parse_edge_list("3\n0 1\n1 0\n0 1  # again") == Graph.from_edges(3, [(0, 1)])


@pytest.mark.parametrize(
    "text, message",
    [
        ("3\n0 3", "out of range"),
        ("3\n1 1", "self-loop"),
        ("3\n0 x", "non-integer"),
        ("three\n0 1", "vertex count"),
        ("3\n0 1 2", "dangling"),
        ("", "empty"),
    ],
)
def test_edge_list_errors(text, message):
    with pytest.raises(GraphFormatError, match=message):
        parse_edge_list(text)


def test_dimacs_is_one_based_and_keeps_labels():
    g = parse_edge_list("c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    assert g == Graph.cycle(5)
    assert list(g.labels) == [1, 2, 3, 4, 5]
    with pytest.raises(GraphFormatError, match="out of range"):
        parse_edge_list("p edge 2 1\ne 0 1")


def test_read_graph_auto_detects():
    assert read_graph("Dhc\n") == Graph.cycle(5)
    assert read_graph("2\n0 1\n") == Graph.complete(2)
    assert read_graph("p edge 2 1\ne 1 2\n", "dimacs") == Graph.complete(2)
    with pytest.raises(ValueError):
        read_graph("Dhc", "nope")


def test_complement_examples():
    assert complement(Graph.complete(3)) == Graph.empty(3)
    assert complement(Graph.cycle(5)) == Graph.from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])
    c7 = Graph.cycle(7)
    assert complement(complement(c7)) == c7


def test_induced_subgraph_examples():
    sub, mapping = induced_subgraph(Graph.cycle(5), [0, 1, 2])
    assert sub == Graph.path(3)
    assert mapping == {0: 0, 1: 1, 2: 2}
    assert induced_subgraph(Graph.petersen(), [])[0] == Graph.empty(0)
    sub, mapping = induced_subgraph(complement(Graph.cycle(7)), {1, 3, 5, 6})
    assert mapping == {1: 0, 3: 1, 5: 2, 6: 3}
    assert sorted(sub.edges()) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    with pytest.raises(ValueError):
        induced_subgraph(Graph.cycle(5), [5])


def test_components_examples():
    c5 = Graph.cycle(5)
    assert connected_components(c5) == [frozenset(range(5))]
    rest, mapping = induced_subgraph(c5, [0, 2, 3])
    inverse = {new: old for old, new in mapping.items()}
    comps = [frozenset(inverse[v] for v in c) for c in connected_components(rest)]
    assert comps == [frozenset({0}), frozenset({2, 3})]
    assert connected_components(Graph.empty(3)) == [frozenset({0}), frozenset({1}), frozenset({2})]


def test_constructor_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0])  # asymmetric
    with pytest.raises(ValueError):
        Graph(2, [0b01, 0])  # loop


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_graph_properties(g):
    for v in range(g.n):
        assert not g.has_edge(v, v)
        for w in g.neighbors(v):
            assert g.has_edge(w, v)
    assert g.max_degree() == max((g.degree(v) for v in range(g.n)), default=0)
    assert complement(complement(g)) == g
    assert induced_subgraph(g, range(g.n))[0] == g
    comps = connected_components(g)
    seen = set()
    for c in comps:
        assert not seen & c
        seen |= c
        for v in c:
            assert g.neighbors(v) <= c
    assert seen == set(range(g.n))
    assert [min(c) for c in comps] == sorted(min(c) for c in comps)
    assert len(comps) == nx.number_connected_components(to_nx(g))
