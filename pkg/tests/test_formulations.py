import pytest

from chordless.engine.bnb import STATUS_CUTOFF_EXHAUSTED, STATUS_INFEASIBLE, STATUS_OPTIMAL, branch_and_bound
from chordless.engine.model import ModelError
from chordless.formulations import (
    CCP,
    CEC,
    ILPCUT,
    LIC,
    LIC2,
    add_clique_cuts,
    build,
    build_ccp,
    build_cec,
    build_ilp_cut,
    build_lic,
    extract_cycle,
    warm_start_bound,
)
from chordless.graph import (
    Graph,
    GraphError,
    MalformedSolution,
    complete_graph,
    cycle_graph,
    disjoint_union,
    maximal_cliques,
    petersen_graph,
    star_graph,
)
from chordless.oracle import brute_force_longest_induced_cycle
from chordless.solver import solve

from .conftest import point


C6_LONG_CHORD = Graph.from_edges(6, list(cycle_graph(6).edges) + [(1, 4)])
C5_CHORD = Graph.from_edges(5, list(cycle_graph(5).edges) + [(1, 3)])


def test_lic_sizes_and_triangle_optimum():
    h = build_lic(complete_graph(3))
    assert (len(h.x), len(h.y), len(h.u), len(h.w)) == (6, 3, 3, 3)
    out = branch_and_bound(h.model)
    assert out.status == STATUS_OPTIMAL
    assert extract_cycle(h, out.x, out.objective) == (3, (1, 2, 3))


def test_lic_accepts_hand_built_cycle():
    g = cycle_graph(5)
    h = build_lic(g)
    x = point(h, [(1, 2, 3, 4, 5)])
    assert h.model.max_violation(x) <= 1e-9


def test_lic_acyclic_has_no_cycle():
    r = solve(star_graph(3), LIC, "direct")
    assert r.length == 0 and r.status == STATUS_INFEASIBLE


@pytest.mark.parametrize("kind", [LIC, LIC2])
def test_lic_family_small_examples(kind):
    assert solve(complete_graph(3), kind, "direct").length == 3
    assert solve(C5_CHORD, kind, "direct").length == 4


def test_ilp_cut_examples():
    assert solve(cycle_graph(4), ILPCUT, "soft").length == 4
    two = disjoint_union(complete_graph(3), complete_graph(3))
    h = build_ilp_cut(two)
    # without lazy rows the integer optimum takes both triangles
    assert branch_and_bound(h.model).objective == 6
    assert solve(two, ILPCUT, "soft").length == 3
    assert solve(two, ILPCUT, "tough").length == 3


def test_ilp_cut_induced_rows_allow_every_chordless_cycle():
    g = petersen_graph()
    h = build_ilp_cut(g)
    _, optima = brute_force_longest_induced_cycle(g)
    for cyc in optima:
        assert h.model.max_violation(point(h, [cyc])) <= 1e-9


def test_cec_examples():
    assert solve(complete_graph(3), CEC, "soft").length == 3
    g = petersen_graph()
    assert solve(g, CEC, "tough").length == brute_force_longest_induced_cycle(g)[0]


def test_ccp_examples():
    assert solve(cycle_graph(4), CCP, "tough").length == 4
    r = solve(complete_graph(4), CCP, "soft")
    assert r.length == 0 and r.status == STATUS_INFEASIBLE
    assert solve(C6_LONG_CHORD, CCP, "soft").length == 4
    with pytest.raises(GraphError):
        build_ccp(complete_graph(3))


def test_clique_cuts():
    h = build_ccp(complete_graph(4))
    assert add_clique_cuts(h, [(1, 2, 3, 4)]) == 2
    row = h.model.constraints[-2]
    assert row.rhs == 2 and len(row.terms) == 4
    h = build_ccp(cycle_graph(6))
    assert add_clique_cuts(h, maximal_cliques(h.graph)) == 0
    diamond = Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (4, 5)])
    h = build_ccp(diamond)
    assert add_clique_cuts(h, maximal_cliques(diamond)) == 4
    with pytest.raises(ModelError):
        add_clique_cuts(build_cec(diamond), [(1, 2, 3)])
    with pytest.raises(ModelError):
        add_clique_cuts(h, [(1, 4, 5)])


def test_clique_cuts_keep_the_optimum():
    g = Graph.from_edges(7, list(cycle_graph(6).edges) + [(1, 7), (2, 7), (1, 3)])
    L = brute_force_longest_induced_cycle(g)[0]
    assert solve(g, CCP, "tough", clique_cuts=True).length == L
    assert solve(g, CCP, "soft", clique_cuts=True).length == L


def test_warm_start_bound():
    g = petersen_graph()
    L = brute_force_longest_induced_cycle(g)[0]
    assert solve(g, CEC, "tough", warm_start=0).length == L
    r = solve(g, CEC, "soft", warm_start=L)
    assert r.length == L and r.status == STATUS_OPTIMAL
    r = solve(g, CEC, "soft", warm_start=L + 1)
    assert r.status == STATUS_CUTOFF_EXHAUSTED and r.length == 0
    h = build_cec(g)
    with pytest.raises(ValueError):
        warm_start_bound(h, -1)


def test_extract_cycle_ilpcut_counts_half_arcs():
    g = cycle_graph(4)
    h = build_ilp_cut(g)
    x = point(h, [(1, 2, 3, 4)])
    assert h.model.objective_value(x) == 4  # eight arcs at weight one half
    assert extract_cycle(h, x, 4) == (4, (1, 2, 3, 4))


def test_extract_cycle_rejects_two_cycles_and_chords():
    two = disjoint_union(cycle_graph(3), cycle_graph(3))
    h = build_cec(two)
    with pytest.raises(MalformedSolution):
        extract_cycle(h, point(h, [(1, 2, 3), (4, 5, 6)]))
    h = build_cec(complete_graph(4))
    with pytest.raises(MalformedSolution):
        extract_cycle(h, point(h, [(1, 2, 3, 4)]))


def test_build_dispatch():
    for kind in (LIC, LIC2, ILPCUT, CEC, CCP):
        assert build(kind, cycle_graph(5)).kind == kind
    with pytest.raises(ValueError):
        build("mtz", cycle_graph(5))


def test_every_model_is_a_valid_lp_and_keeps_chordless_cycles():
    g = C6_LONG_CHORD
    for kind in (CEC, CCP):
        h = build(kind, g)
        assert h.model.max_violation(point(h, [(1, 2, 3, 4)])) <= 1e-9
        # the 6-cycle has a chord and must break an induced row
        assert h.model.max_violation(point(h, [(1, 2, 3, 4, 5, 6)])) > 0.5


def test_tough_ignores_short_cycles_below_the_bound():
    # two triangles together meet a bound of 6, but neither is a solution
    two = disjoint_union(complete_graph(3), complete_graph(3))
    r = solve(two, CEC, "tough", warm_start=4)
    assert r.status == STATUS_CUTOFF_EXHAUSTED and r.length == 0 and r.cycles == []
    r = solve(two, ILPCUT, "tough", min_length=5)
    assert r.length == 0
    r = solve(C5_CHORD, CEC, "tough", min_length=4)
    assert r.length == 4
