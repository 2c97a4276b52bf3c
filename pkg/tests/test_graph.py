import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from linkbomb import DirectedMultigraph, dumps_edgelist, loads_edgelist

from util import bfs_distance_oracle


def test_new_graph_basics():
    g = DirectedMultigraph(1)
    assert g.node_count == 1
    assert g.edge_count == 0

    g = DirectedMultigraph(1000)
    assert g.node_count == 1000
    assert g.edge_count == 0
    assert all(g.out_degree(v) == 0 for v in (0, 500, 999))


def test_zero_nodes_rejected():
    with pytest.raises(ValueError):
        DirectedMultigraph(0)


def test_add_edge_accumulates_multiplicity():
    g = DirectedMultigraph(3).add_edge(0, 1).add_edge(0, 1)
    assert g.multiplicity(0, 1) == 2
    assert g.out_degree(0) == 2
    assert g.in_degree(1) == 2


def test_add_edge_degree_sum():
    g = DirectedMultigraph(3).add_edge(0, 1, 2).add_edge(0, 2)
    assert g.out_degree(0) == 3


def test_self_loop_rejected():
    g = DirectedMultigraph(5)
    with pytest.raises(ValueError):
        g.add_edge(3, 3)


def test_bad_node_ids_rejected():
    g = DirectedMultigraph(3)
    with pytest.raises(ValueError):
        g.add_edge(0, 3)
    with pytest.raises(ValueError):
        g.add_edge(-1, 0)
    with pytest.raises(ValueError):
        g.out_degree(7)


def test_edits_do_not_mutate_original():
    g = DirectedMultigraph(3).add_edge(0, 1)
    g2 = g.add_edge(1, 2)
    assert g.edge_count == 1
    assert g2.edge_count == 2
    g3 = g2.remove_out_edges(0)
    assert g2.multiplicity(0, 1) == 1
    assert g3.multiplicity(0, 1) == 0


def test_k_neighborhood():
    chain = DirectedMultigraph.from_edges(3, [(0, 1), (1, 2)])
    assert chain.k_neighborhood(0, 0) == {0}
    assert chain.k_neighborhood(0, 1) == {1}
    assert chain.k_neighborhood(0, 2) == {2}
    assert chain.k_neighborhood(0, 3) == set()

    two_cycle = DirectedMultigraph.from_edges(2, [(0, 1), (1, 0)])
    assert two_cycle.k_neighborhood(0, 2) == {0}


def test_shortest_distance():
    chain = DirectedMultigraph.from_edges(3, [(0, 1), (1, 2)])
    assert chain.shortest_distance(0, 0) == 0
    assert chain.shortest_distance(0, 2) == 2
    isolated = DirectedMultigraph(2)
    assert isolated.shortest_distance(0, 1) == math.inf


def test_remove_out_edges():
    g = DirectedMultigraph(3)
    assert g.remove_out_edges(0) == g  # no-op on a dangling node

    star = DirectedMultigraph.from_edges(6, [(0, v) for v in range(1, 6)] + [(3, 0)])
    stripped = star.remove_out_edges(0)
    assert stripped.out_degree(0) == 0
    assert stripped.in_degree(0) == 1  # in-edges preserved
    assert stripped.edge_count == 1


def test_distances_to_reverse_bfs():
    g = DirectedMultigraph.from_edges(4, [(0, 1), (1, 3), (2, 3)])
    assert g.distances_to(3) == [2, 1, 1, 0]


edit_steps = st.lists(
    st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(1, 3)), max_size=25
)


@given(edit_steps, st.sets(st.integers(0, 5), max_size=3))
def test_degree_sums_conserved(steps, removals):
    g = DirectedMultigraph(6)
    for u, v, m in steps:
        if u != v:
            g = g.add_edge(u, v, m)
    for v in removals:
        g = g.remove_out_edges(v)
    total = g.edge_count
    assert sum(g.out_degree(v) for v in range(6)) == total
    assert sum(g.in_degree(v) for v in range(6)) == total


@given(edit_steps, st.integers(0, 5), st.integers(0, 4))
def test_k_neighborhood_matches_matrix_power(steps, v, k):
    g = DirectedMultigraph(6)
    for a, b, m in steps:
        if a != b:
            g = g.add_edge(a, b, m)
    adj = np.zeros((6, 6), dtype=bool)
    for (a, b, _m) in g.edges():
        adj[a, b] = True
    reach = np.zeros(6, dtype=bool)
    reach[v] = True
    for _ in range(k):
        reach = adj.T @ reach
    assert g.k_neighborhood(v, k) == set(np.flatnonzero(reach))


@given(edit_steps, st.integers(0, 5), st.integers(0, 5))
def test_shortest_distance_matches_enumeration(steps, u, v):
    g = DirectedMultigraph(6)
    for a, b, m in steps:
        if a != b:
            g = g.add_edge(a, b, m)
    assert g.shortest_distance(u, v) == bfs_distance_oracle(g, u, v)


def test_edgelist_round_trip():
    g = DirectedMultigraph.from_edges(7, {(0, 1): 2, (3, 2): 1, (5, 0): 3})
    text = dumps_edgelist(g)
    g2 = loads_edgelist(text)
    assert g2 == g
    assert dumps_edgelist(g2) == text  # canonical form is a fixed point


def test_edgelist_preserves_isolated_nodes():
    g = DirectedMultigraph(9).add_edge(0, 1)
    assert loads_edgelist(dumps_edgelist(g)).node_count == 9


def test_edgelist_parsing():
    text = "# a comment\n0 1\n1 2 3  # trailing comment\n\n2 0\n"
    g = loads_edgelist(text)
    assert g.node_count == 3
    assert g.multiplicity(1, 2) == 3
    assert g.multiplicity(0, 1) == 1


def test_edgelist_errors():
    with pytest.raises(ValueError):
        loads_edgelist("0 1 2 3\n")
    with pytest.raises(ValueError):
        loads_edgelist("# only comments\n")
    with pytest.raises(ValueError):
        loads_edgelist("0 0\n")  # self-loop
