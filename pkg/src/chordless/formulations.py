"""MILP models for the longest induced cycle problem.

Five builders share one handle type. ``x`` is keyed by arc id for the
arc-based models (LIC, LIC2, ILPCUT) and by edge index for the
edge-based ones (CEC, CCP).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .engine.model import EQ, GE, LE, Model, ModelError
from .graph import (
    Graph,
    GraphError,
    MalformedSolution,
    cycle_components,
    delta_arc,
    delta_vertex,
    is_chordless,
    is_clique,
    symmetric_arcs,
    OUT,
    IN,
)

LIC, LIC2, ILPCUT, CEC, CCP = "lic", "lic2", "ilpcut", "cec", "ccp"
KINDS = (LIC, LIC2, ILPCUT, CEC, CCP)
ARC_MODELS = (LIC, LIC2, ILPCUT)


@dataclass
class FormulationHandles:
    kind: str
    graph: Graph
    model: Model
    x: dict[int, int]
    y: dict[int, int] = field(default_factory=dict)
    u: dict[int, int] = field(default_factory=dict)
    w: dict[int, int] = field(default_factory=dict)
    lower_bound: int = 0

    def objective_terms(self) -> list[tuple[int, float]]:
        return list(self.model.objective.items())

    def selected_edges(self, xv: Sequence[float]) -> list[tuple[int, int]]:
        g = self.graph
        if self.kind in ARC_MODELS:
            return [e for k, e in enumerate(g.edges) if xv[self.x[2 * k]] + xv[self.x[2 * k + 1]] > 0.5]
        return [e for k, e in enumerate(g.edges) if xv[self.x[k]] > 0.5]


@dataclass
class CycleResult:
    length: int
    cycle: tuple[int, ...]
    cycles: list[tuple[int, ...]]
    status: str
    nodes: int = 0
    cuts: int = 0
    seconds: float = 0.0
    model: str = ""
    strategy: str = ""
    warm_start: str = "none"
    warm_bound: int = 0
    warm_seconds: float = 0.0
    best_bound: float | None = None

    @property
    def found(self) -> bool:
        return self.length >= 3


def _arc_vars(model: Model, g: Graph) -> dict[int, int]:
    return {a.id: model.add_var(f"x_{a.tail}_{a.head}") for a in symmetric_arcs(g)}


def _lic_common(g: Graph, kind: str) -> FormulationHandles:
    n = g.n
    m = Model(integral_objective=True, name=kind)
    x = _arc_vars(m, g)
    y = {i: m.add_var(f"y_{i}", 0.0, np.inf, binary=False, obj=1.0) for i in g.vertices}
    u = {i: m.add_var(f"u_{i}", 0.0, float(n), binary=False) for i in g.vertices}
    w = {i: m.add_var(f"w_{i}") for i in g.vertices}
    arcs = symmetric_arcs(g)

    for k, (i, j) in enumerate(g.edges):
        m.add_constraint([(x[2 * k], 1), (x[2 * k + 1], 1)], LE, 1, f"antiparallel_{i}_{j}")
    if kind == LIC:
        for a in arcs:
            m.add_constraint([(x[b.id], 1) for b in delta_arc(g, a, OUT)], LE, 1, f"out_limit_{a.tail}_{a.head}")
    else:
        for k, (i, j) in enumerate(g.edges):
            m.add_constraint(
                [(x[2 * k], 1), (x[2 * k + 1], 1), (y[i], -1), (y[j], -1)], GE, -1, f"pair_{i}_{j}"
            )
    for i in g.vertices:
        m.add_constraint([(y[i], 1)] + [(x[a.id], -1) for a in delta_vertex(g, i, OUT)], EQ, 0, f"outdeg_{i}")
        m.add_constraint([(y[i], 1)] + [(x[a.id], -1) for a in delta_vertex(g, i, IN)], EQ, 0, f"indeg_{i}")
    m.add_constraint([(w[i], 1) for i in g.vertices], EQ, 1, "one_last")
    for i in g.vertices:
        m.add_constraint([(w[i], 1), (y[i], -1)], LE, 0, f"last_on_cycle_{i}")
    for a in arcs:
        # u_i - u_j <= n(1 - x_e) - 1 + n w_i
        m.add_constraint(
            [(u[a.tail], 1), (u[a.head], -1), (x[a.id], n), (w[a.tail], -n)], LE, n - 1, f"order_{a.tail}_{a.head}"
        )
    for j in g.vertices:
        # sum_i i w_i <= j y_j + n (1 - y_j)
        m.add_constraint([(w[i], i) for i in g.vertices] + [(y[j], n - j)], LE, n, f"last_is_min_{j}")
    return FormulationHandles(kind, g, m, x, y, u, w)


def build_lic(g: Graph) -> FormulationHandles:
    if g.n < 1:
        raise GraphError("empty graph")
    return _lic_common(g, LIC)


def build_lic2(g: Graph) -> FormulationHandles:
    if g.n < 1:
        raise GraphError("empty graph")
    return _lic_common(g, LIC2)


def build_ilp_cut(g: Graph) -> FormulationHandles:
    """Arc model; the subtour rows are left to the lazy separation.

    Both neighbourhood sums leave out the reverse arc of the row's own arc;
    with it included no cycle at all would satisfy the induced rows.
    """
    if g.n < 1:
        raise GraphError("empty graph")
    m = Model(integral_objective=True, name=ILPCUT)
    x = _arc_vars(m, g)
    for a in x:
        m.objective[x[a]] = 0.5
    for k, (i, j) in enumerate(g.edges):
        m.add_constraint([(x[2 * k], 1), (x[2 * k + 1], -1)], EQ, 0, f"sym_{i}_{j}")
    for a in symmetric_arcs(g):
        rev = a.reverse_id
        into_tail = [b.id for b in delta_vertex(g, a.tail, IN) if b.id != rev]
        out_head = [b.id for b in delta_vertex(g, a.head, OUT) if b.id != rev]
        m.add_constraint([(x[a.id], 1)] + [(x[b], -1) for b in into_tail], LE, 0, f"pred_{a.tail}_{a.head}")
        m.add_constraint([(x[b], 1) for b in into_tail + out_head], LE, 2, f"induced_{a.tail}_{a.head}")
    return FormulationHandles(ILPCUT, g, m, x)


def _edge_model(g: Graph, kind: str) -> FormulationHandles:
    m = Model(integral_objective=True, name=kind)
    y = {i: m.add_var(f"y_{i}", obj=1.0) for i in g.vertices}
    x = {k: m.add_var(f"x_{i}_{j}") for k, (i, j) in enumerate(g.edges)}
    incident: dict[int, list[int]] = {i: [] for i in g.vertices}
    for k, (i, j) in enumerate(g.edges):
        incident[i].append(k)
        incident[j].append(k)
    if kind == CCP:
        m.add_constraint([(x[k], 1) for k in x] + [(y[i], -1) for i in y], EQ, 0, "edges_eq_vertices")
        m.add_constraint([(y[i], 1) for i in y], GE, 4, "at_least_four")
    for i in g.vertices:
        m.add_constraint([(x[k], 1) for k in incident[i]] + [(y[i], -2)], EQ, 0, f"deg_{i}")
    for k, (i, j) in enumerate(g.edges):
        m.add_constraint([(x[k], 1), (y[i], -1)], LE, 0, f"edge_tail_{i}_{j}")
        m.add_constraint([(x[k], 1), (y[j], -1)], LE, 0, f"edge_head_{i}_{j}")
        m.add_constraint([(x[k], 1), (y[i], -1), (y[j], -1)], GE, -1, f"induced_{i}_{j}")
    return FormulationHandles(kind, g, m, x, y)


def build_cec(g: Graph) -> FormulationHandles:
    if g.n < 1:
        raise GraphError("empty graph")
    return _edge_model(g, CEC)


def build_ccp(g: Graph) -> FormulationHandles:
    if g.n < 4:
        raise GraphError("the hole model needs at least four vertices")
    return _edge_model(g, CCP)


BUILDERS = {LIC: build_lic, LIC2: build_lic2, ILPCUT: build_ilp_cut, CEC: build_cec, CCP: build_ccp}


def build(kind: str, g: Graph) -> FormulationHandles:
    try:
        return BUILDERS[kind](g)
    except KeyError:
        raise ValueError(f"unknown model {kind!r}") from None


def add_clique_cuts(h: FormulationHandles, cliques: Iterable[Sequence[int]]) -> int:
    """At most two vertices of a clique on the cycle, and then the edge between them."""
    if h.kind != CCP:
        raise ModelError("clique rows belong to the hole model only")
    g = h.graph
    index = g.edge_index()
    added = 0
    for q in cliques:
        q = sorted(set(q))
        if len(q) < 3 or not is_clique(g, q):
            raise ModelError(f"{q} is not a clique of size >= 3")
        tag = "_".join(map(str, q))
        h.model.add_constraint([(h.y[i], 1) for i in q], LE, 2, f"clique_vertices_{tag}")
        edges = [index[(a, b)] for t, a in enumerate(q) for b in q[t + 1 :]]
        h.model.add_constraint(
            [(h.x[k], 1) for k in edges] + [(h.y[i], -1) for i in q], GE, -1, f"clique_edges_{tag}"
        )
        added += 2
    return added


def add_min_length(h: FormulationHandles, length: int) -> None:
    h.model.add_constraint(h.objective_terms(), GE, length, f"min_length_{length}")


def warm_start_bound(h: FormulationHandles, lb: int) -> None:
    """Require objective >= lb; the solve also uses lb as its cutoff."""
    if lb < 0:
        raise ValueError("lower bound must be nonnegative")
    if lb == 0:
        return
    h.model.add_constraint(h.objective_terms(), GE, lb, "warm_start")
    h.lower_bound = max(h.lower_bound, lb)


def extract_cycle(h: FormulationHandles, xv: Sequence[float], objective: float | None = None) -> tuple[int, tuple[int, ...]]:
    """Length and canonical vertex cycle of an integral single-cycle solution."""
    comps = cycle_components(h.graph, h.selected_edges(xv))
    if len(comps) > 1:
        raise MalformedSolution(f"solution has {len(comps)} cycles")
    if not comps:
        length, cyc = 0, ()
    else:
        cyc = comps[0]
        length = len(cyc)
        if not is_chordless(h.graph, cyc):
            raise MalformedSolution(f"cycle {cyc} has a chord")
    if objective is not None and abs(objective - length) > 1e-6:
        raise MalformedSolution(f"objective {objective} disagrees with cycle length {length}")
    return length, cyc
