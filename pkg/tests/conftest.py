import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from chordless.formulations import ILPCUT, LIC, LIC2
from chordless.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])


def point(h, cycles):
    """Integral solution vector selecting the given vertex cycles."""
    x = np.zeros(h.model.num_vars)
    g = h.graph
    idx = g.edge_index()
    for cyc in cycles:
        k = len(cyc)
        for t in range(k):
            a, b = cyc[t], cyc[(t + 1) % k]
            e = idx[(min(a, b), max(a, b))]
            if h.kind == ILPCUT:
                x[h.x[2 * e]] = x[h.x[2 * e + 1]] = 1
            elif h.kind in (LIC, LIC2):
                x[h.x[2 * e if a < b else 2 * e + 1]] = 1
            else:
                x[h.x[e]] = 1
        for pos, v in enumerate(cyc):
            if h.y:
                x[h.y[v]] = 1
    if h.kind in (LIC, LIC2) and len(cycles) == 1:
        cyc = cycles[0]
        x[h.w[min(cyc)]] = 1
        # order along the orientation, ending at the smallest vertex
        start = cyc.index(min(cyc))
        order = cyc[start + 1 :] + cyc[: start + 1]
        for pos, v in enumerate(order):
            x[h.u[v]] = pos + 1
    return x


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
