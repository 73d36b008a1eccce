import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chordless.graph import (
    BOTH,
    IN,
    OUT,
    Graph,
    GraphError,
    MalformedSolution,
    all_pairs_distances,
    canonical_cycle,
    complete_bipartite,
    complete_graph,
    cut_edges,
    cycle_components,
    cycle_graph,
    delta_arc,
    delta_cut,
    delta_vertex,
    density,
    disjoint_union,
    induced_subgraph,
    is_acyclic,
    is_chordless,
    is_clique,
    is_connected,
    is_tree,
    maximal_cliques,
    path_graph,
    petersen_graph,
    star_graph,
    symmetric_arcs,
)

from .conftest import graphs, to_nx


def pairs(arcs):
    return {(a.tail, a.head) for a in arcs}


def test_from_edges_normalises_and_counts_drops():
    g = Graph.from_edges(3, [(2, 1), (1, 2), (3, 3), (2, 3)])
    assert g.edges == ((1, 2), (2, 3))
    assert g.dropped == 2


def test_from_edges_rejects_out_of_range():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(1, 3)])


def test_symmetric_arcs_examples(triangle):
    assert len(symmetric_arcs(triangle)) == 6
    assert pairs(symmetric_arcs(Graph.from_edges(2, [(1, 2)]))) == {(1, 2), (2, 1)}
    assert symmetric_arcs(Graph.from_edges(3, [])) == []


def test_delta_vertex_examples(triangle):
    assert pairs(delta_vertex(path_graph(3), 2, OUT)) == {(2, 1), (2, 3)}
    assert delta_vertex(Graph.from_edges(3, [(1, 2)]), 3) == []
    assert len(delta_vertex(triangle, 1, BOTH)) == 4


def test_delta_arc_examples(triangle):
    arcs = {(a.tail, a.head): a for a in symmetric_arcs(triangle)}
    assert pairs(delta_arc(triangle, arcs[(1, 2)], OUT)) == {(1, 3), (2, 3)}
    single = Graph.from_edges(2, [(1, 2)])
    assert delta_arc(single, symmetric_arcs(single)[0]) == []
    star = star_graph(3)
    a12 = [a for a in symmetric_arcs(star) if (a.tail, a.head) == (1, 2)][0]
    assert pairs(delta_arc(star, a12, OUT)) == {(1, 3), (1, 4)}


def test_delta_cut_examples():
    assert pairs(delta_cut(path_graph(3), {1})) == {(1, 2), (2, 1)}
    assert len(delta_cut(cycle_graph(4), {1, 2})) == 4
    two = Graph.from_edges(4, [(1, 2), (3, 4)])
    assert delta_cut(two, {1, 2}) == []


@given(graphs(max_n=8), st.data())
def test_arc_operator_invariants(g, data):
    arcs = symmetric_arcs(g)
    assert len(arcs) == 2 * g.m
    for a in arcs:
        # reverse is an involution and maps to the opposite orientation
        b = arcs[a.reverse_id]
        assert (b.tail, b.head) == (a.head, a.tail) and arcs[b.reverse_id] == a
    for v in g.vertices:
        assert len(delta_vertex(g, v, OUT)) == len(delta_vertex(g, v, IN)) == g.degree(v)
        assert set(delta_vertex(g, v)) == set(delta_vertex(g, v, OUT)) | set(delta_vertex(g, v, IN))
    if g.n < 2:
        return
    c = set(data.draw(st.sets(st.sampled_from(list(g.vertices)), min_size=1, max_size=g.n - 1)))
    comp = set(g.vertices) - c
    assert pairs(delta_cut(g, c)) == pairs(delta_cut(g, comp))
    assert len(delta_cut(g, c, OUT)) == len(delta_cut(g, c, IN)) == len(cut_edges(g, c))


def test_induced_subgraph_examples():
    tri, labels = induced_subgraph(complete_graph(4), {1, 3, 4})
    assert tri == complete_graph(3) and labels == [1, 3, 4]
    empty, _ = induced_subgraph(complete_graph(4), set())
    assert empty.n == 0 and empty.m == 0
    outer, _ = induced_subgraph(petersen_graph(), {1, 2, 3, 4, 5})
    assert outer == cycle_graph(5)


def test_cycle_components_examples():
    c5 = cycle_graph(5)
    assert cycle_components(c5, c5.edges) == [(1, 2, 3, 4, 5)]
    two_tri = disjoint_union(complete_graph(3), complete_graph(3))
    assert [len(c) for c in cycle_components(two_tri, two_tri.edges)] == [3, 3]
    big = disjoint_union(cycle_graph(5), cycle_graph(5), path_graph(3))
    big = Graph.from_edges(big.n, list(big.edges) + [(1, 7), (5, 11)])
    sel = [e for e in big.edges if e[0] <= 10 and e[1] <= 10 and e != (1, 7)]
    assert cycle_components(big, sel) == [(1, 2, 3, 4, 5), (6, 7, 8, 9, 10)]


def test_delta_cut_needs_proper_subset():
    with pytest.raises(GraphError):
        delta_cut(path_graph(3), set())
    with pytest.raises(GraphError):
        delta_cut(path_graph(3), {1, 2, 3})


def test_cycle_components_rejects_bad_degree():
    with pytest.raises(MalformedSolution):
        cycle_components(path_graph(3), path_graph(3).edges)


def test_canonical_cycle():
    assert canonical_cycle([3, 4, 5, 1, 2]) == (1, 2, 3, 4, 5)
    assert canonical_cycle([1, 5, 4, 3, 2]) == (1, 2, 3, 4, 5)


def test_distance_examples():
    assert all_pairs_distances(path_graph(3))[0, 2] == 2
    assert all_pairs_distances(Graph.from_edges(2, []))[0, 1] == np.inf
    assert all_pairs_distances(cycle_graph(6))[0, 3] == 3


@given(graphs(max_n=9))
def test_distances_match_bfs_and_triangle_inequality(g):
    d = all_pairs_distances(g)
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for i in g.vertices:
        for j in g.vertices:
            assert d[i - 1, j - 1] == ref[i].get(j, np.inf)
    assert np.array_equal(d, d.T)
    for k in range(g.n):
        assert np.all(d <= d[:, k : k + 1] + d[k : k + 1, :])


def test_tree_and_acyclic_examples():
    assert is_tree(star_graph(3))
    assert not is_acyclic(cycle_graph(3))
    two = Graph.from_edges(4, [(1, 2), (3, 4)])
    assert is_acyclic(two) and not is_tree(two)


@given(graphs(max_n=9))
def test_acyclic_matches_networkx(g):
    h = to_nx(g)
    assert is_acyclic(g) == nx.is_forest(h)
    assert is_connected(g) == (g.n == 0 or nx.is_connected(h))


def test_clique_examples():
    assert maximal_cliques(complete_graph(4)) == [(1, 2, 3, 4)]
    tri_pendant = Graph.from_edges(4, [(1, 2), (2, 3), (1, 3), (3, 4)])
    assert maximal_cliques(tri_pendant, 3) == [(1, 2, 3)]
    diamond = Graph.from_edges(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
    assert maximal_cliques(diamond) == [(1, 2, 3), (2, 3, 4)]


@given(graphs(max_n=9))
def test_cliques_match_networkx(g):
    ours = maximal_cliques(g, 3)
    ref = sorted(tuple(sorted(q)) for q in nx.find_cliques(to_nx(g)) if len(q) >= 3)
    assert ours == ref
    for q in ours:
        assert is_clique(g, q)
        # maximal: no outside vertex is adjacent to all of q
        assert not any(all(g.has_edge(v, u) for u in q) for v in g.vertices if v not in q)


def test_density_examples():
    assert density(complete_graph(4)) == 1.0
    assert density(Graph.from_edges(4, [])) == 0.0
    assert density(cycle_graph(5)) == 0.5


def test_chordless_check():
    assert is_chordless(cycle_graph(5), (1, 2, 3, 4, 5))
    assert not is_chordless(complete_graph(4), (1, 2, 3, 4))
    assert not is_chordless(complete_bipartite(2, 3), (1, 3, 2, 4, 1))


@given(graphs(max_n=7), st.permutations(range(1, 8)))
def test_relabel_is_isomorphism(g, perm):
    perm = [p for p in perm if p <= g.n]
    h = g.relabel(perm)
    assert h.m == g.m
    assert sorted(h.degree(perm[v - 1]) for v in g.vertices) == sorted(g.degree(v) for v in g.vertices)
    assert all(h.has_edge(perm[i - 1], perm[j - 1]) for i, j in g.edges)


def test_petersen_is_cubic_girth_five():
    p = petersen_graph()
    assert p.m == 15 and all(p.degree(v) == 3 for v in p.vertices)
    assert nx.girth(to_nx(p)) == 5
    assert all(not is_clique(p, q) for q in itertools.combinations(p.vertices, 3))
