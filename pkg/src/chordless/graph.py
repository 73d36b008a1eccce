"""Undirected simple graphs and the arc/cut set operators used by the models.

Vertices are labelled ``1..n`` in every public function. Arrays that are
indexed by vertex (distance matrices, adjacency matrices) use ``label - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

OUT, IN, BOTH = "out", "in", "both"


class GraphError(ValueError):
    pass


class MalformedSolution(RuntimeError):
    """Selected edges do not decompose into vertex-disjoint cycles."""


class Arc(NamedTuple):
    tail: int
    head: int
    id: int

    @property
    def reverse_id(self) -> int:
        return self.id ^ 1


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    dropped: int = 0
    _nbrs: tuple[frozenset[int], ...] = field(repr=False, default=())

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, silently dropping self-loops and duplicate edges.

        The number of dropped input pairs is kept in ``dropped``.
        """
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        seen: set[tuple[int, int]] = set()
        dropped = 0
        for i, j in edges:
            i, j = int(i), int(j)
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphError(f"edge ({i}, {j}) outside vertex range 1..{n}")
            if i == j:
                dropped += 1
                continue
            key = (i, j) if i < j else (j, i)
            if key in seen:
                dropped += 1
                continue
            seen.add(key)
        ordered = tuple(sorted(seen))
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for i, j in ordered:
            nbrs[i - 1].add(j)
            nbrs[j - 1].add(i)
        return cls(n, ordered, dropped, tuple(frozenset(s) for s in nbrs))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v - 1]

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self._nbrs[v - 1])

    def degree(self, v: int) -> int:
        return len(self._nbrs[v - 1])

    def has_edge(self, i: int, j: int) -> bool:
        return 1 <= i <= self.n and j in self._nbrs[i - 1]

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.edges:
            a[i - 1, j - 1] = a[j - 1, i - 1] = True
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v - 1]``."""
        return Graph.from_edges(self.n, ((perm[i - 1], perm[j - 1]) for i, j in self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def _check_vertex(g: Graph, i: int) -> None:
    if not 1 <= i <= g.n:
        raise GraphError(f"vertex {i} outside 1..{g.n}")


def symmetric_arcs(g: Graph) -> list[Arc]:
    """Both orientations of every edge; arcs 2k and 2k+1 come from edge k."""
    arcs = []
    for k, (i, j) in enumerate(g.edges):
        arcs.append(Arc(i, j, 2 * k))
        arcs.append(Arc(j, i, 2 * k + 1))
    return arcs


def arc_lookup(g: Graph) -> dict[tuple[int, int], Arc]:
    return {(a.tail, a.head): a for a in symmetric_arcs(g)}


def _arcs_at(g: Graph, i: int, direction: str) -> list[Arc]:
    index = g.edge_index()
    out = []
    for k in sorted(g.neighbors(i)):
        e = (i, k) if i < k else (k, i)
        base = 2 * index[e]
        fwd = base if e[0] == i else base + 1  # id of arc (i, k)
        if direction in (OUT, BOTH):
            out.append(Arc(i, k, fwd))
        if direction in (IN, BOTH):
            out.append(Arc(k, i, fwd ^ 1))
    return sorted(out, key=lambda a: a.id)


def delta_vertex(g: Graph, i: int, direction: str = BOTH) -> list[Arc]:
    """Arcs leaving (``out``), entering (``in``) or touching (``both``) vertex i."""
    _check_vertex(g, i)
    if direction not in (OUT, IN, BOTH):
        raise ValueError(f"bad direction {direction!r}")
    return _arcs_at(g, i, direction)


def delta_arc(g: Graph, e: Arc | tuple[int, int], direction: str = BOTH) -> list[Arc]:
    i, j = e[0], e[1]
    if not g.has_edge(i, j):
        raise GraphError(f"({i}, {j}) is not an arc of the graph")
    drop = {(i, j), (j, i)}
    arcs = {a for v in (i, j) for a in _arcs_at(g, v, direction)}
    return sorted((a for a in arcs if (a.tail, a.head) not in drop), key=lambda a: a.id)


def delta_cut(g: Graph, c: Iterable[int], direction: str = BOTH) -> list[Arc]:
    """Arcs crossing between the vertex set ``c`` and its complement."""
    cs = frozenset(c)
    if not cs or len(cs) >= g.n and cs >= set(g.vertices):
        raise GraphError("cut set must be a nonempty proper subset of V")
    for v in cs:
        _check_vertex(g, v)
    out = []
    for a in symmetric_arcs(g):
        t, h = a.tail in cs, a.head in cs
        if t and not h and direction in (OUT, BOTH):
            out.append(a)
        elif h and not t and direction in (IN, BOTH):
            out.append(a)
    return out


def cut_edges(g: Graph, c: Iterable[int]) -> list[int]:
    """Indices of undirected edges with exactly one endpoint in ``c``."""
    cs = frozenset(c)
    return [k for k, (i, j) in enumerate(g.edges) if (i in cs) != (j in cs)]


def induced_subgraph(g: Graph, w: Iterable[int]) -> tuple[Graph, list[int]]:
    """G[W] relabelled to 1..|W| in increasing label order, plus the old labels."""
    keep = sorted(set(w))
    for v in keep:
        _check_vertex(g, v)
    new = {v: k + 1 for k, v in enumerate(keep)}
    edges = [(new[i], new[j]) for i, j in g.edges if i in new and j in new]
    return Graph.from_edges(len(keep), edges), keep


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate to the smallest vertex and walk toward its smaller neighbour."""
    c = list(cycle)
    k = c.index(min(c))
    c = c[k:] + c[:k]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


def cycle_components(g: Graph, selected_edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Split a 2-regular edge selection into its cycles.

    Cycles come out in canonical form, sorted by their smallest vertex.
    """
    adj: dict[int, list[int]] = {}
    for i, j in selected_edges:
        if not g.has_edge(i, j):
            raise MalformedSolution(f"selected pair ({i}, {j}) is not an edge")
        adj.setdefault(i, []).append(j)
        adj.setdefault(j, []).append(i)
    for v, nb in adj.items():
        if len(nb) != 2 or nb[0] == nb[1]:
            raise MalformedSolution(f"vertex {v} has {len(nb)} selected incident edges")
    cycles = []
    seen: set[int] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        prev, cur = start, min(adj[start])
        cyc = [start]
        seen.add(start)
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(canonical_cycle(cyc))
    return cycles


def is_chordless(g: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    pos = {v: t for t, v in enumerate(cycle)}
    for t in range(k):
        if not g.has_edge(cycle[t], cycle[(t + 1) % k]):
            return False
    for i, j in g.edges:
        if i in pos and j in pos and (pos[i] - pos[j]) % k not in (1, k - 1):
            return False
    return True


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Hop distances by Floyd-Warshall as floats; unreachable pairs hold ``inf``."""
    n = g.n
    d = np.full((n, n), np.inf)
    if n == 0:
        return d
    np.fill_diagonal(d, 0.0)
    for i, j in g.edges:
        d[i - 1, j - 1] = d[j - 1, i - 1] = 1.0
    for k in range(n):
        np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :], out=d)
    return d


def connected_components(g: Graph) -> list[list[int]]:
    comp = [0] * (g.n + 1)
    out = []
    for s in g.vertices:
        if comp[s]:
            continue
        comp[s] = len(out) + 1
        stack, members = [s], [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if not comp[w]:
                    comp[w] = comp[s]
                    stack.append(w)
                    members.append(w)
        out.append(sorted(members))
    return out


def is_acyclic(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def is_tree(g: Graph) -> bool:
    return g.n > 0 and g.m == g.n - 1 and len(connected_components(g)) == 1


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def maximal_cliques(g: Graph, min_size: int = 3) -> list[tuple[int, ...]]:
    """Maximal cliques with at least ``min_size`` vertices (Bron-Kerbosch with pivoting)."""
    if min_size < 3:
        raise ValueError("min_size must be at least 3")
    found: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if len(r) >= min_size:
                found.append(tuple(sorted(r)))
            return
        if len(r) + len(p) < min_size:
            return
        pivot = max(sorted(p | x), key=lambda u: len(p & g.neighbors(u)))
        for v in sorted(p - g.neighbors(pivot)):
            nv = g.neighbors(v)
            expand(r + [v], p & nv, x & nv)
            p.discard(v)
            x.add(v)

    expand([], set(g.vertices), set())
    return sorted(found)


def is_clique(g: Graph, q: Iterable[int]) -> bool:
    qs = sorted(set(q))
    return all(g.has_edge(a, b) for t, a in enumerate(qs) for b in qs[t + 1 :])


def density(g: Graph) -> float:
    if g.n < 2:
        return 0.0  # no vertex pairs
    return g.m / (g.n * (g.n - 1) / 2)


# small constructors used throughout tests and the CLI


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(1, k) for k in range(2, leaves + 2)])


def petersen_graph() -> Graph:
    """Outer 5-cycle 1..5, spokes i -- i+5, inner pentagram on 6..10."""
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((i + offset, j + offset) for i, j in h.edges)
        offset += h.n
    return Graph.from_edges(offset, edges)
