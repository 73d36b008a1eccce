"""Longest isometric cycle via the pair graph G_k.

For a length k with p = k // 2, G_k has a vertex for each ordered pair
(u, v) with d(u, v) = p, and joins (u, v) to (w, x) when u~w and v~x.
An isometric k-cycle exists exactly when some walk of p steps in G_k
carries (u, v) to

* (v, u) when k is even (both ends slide half way round the cycle), or
* (v, x) with x ~ u when k is odd (the pair M_k(v, u)).

The odd test on pairs alone is too weak: it only checks the partner of each
vertex at offset p for half of the cycle, and accepts closed walks with
chords. The exact odd test walks over triples (a, b, b') with b ~ b' and
d(a, b) = d(a, b') = p, from (u, v, v') to (v, x, u), which enforces
every antipodal distance. ``method="literal"`` keeps the pair-only test.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from .graph import Graph, all_pairs_distances, connected_components, induced_subgraph, is_acyclic

_CELLS = 2_000_000


@dataclass
class PairGraph:
    k: int
    pairs: np.ndarray  # (|V_k|, 2) zero-based vertex indices, row-major order
    adjacency: sp.csr_matrix
    index: dict[tuple[int, int], int]

    @property
    def half(self) -> int:
        return self.k // 2

    def vertices(self) -> list[tuple[int, int]]:
        """Pairs as 1-based labels."""
        return [(int(u) + 1, int(v) + 1) for u, v in self.pairs]

    def edges(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        coo = self.adjacency.tocoo()
        vs = self.vertices()
        return sorted((vs[a], vs[b]) for a, b in zip(coo.row, coo.col))


def build_pair_graph(g: Graph, k: int, d: np.ndarray | None = None) -> PairGraph:
    if not 3 <= k <= max(g.n, 3):
        raise ValueError(f"k={k} outside 3..n")
    if d is None:
        d = all_pairs_distances(g)
    p = k // 2
    n = g.n
    us, vs = np.nonzero(d == p)
    flat = us * n + vs
    if len(flat) == 0:
        return PairGraph(k, np.zeros((0, 2), dtype=np.int64), sp.csr_matrix((0, 0)), {})
    a = sp.csr_matrix(g.adjacency_matrix().astype(np.int8))
    big = sp.kron(a, a, format="csr")
    sub = big[flat][:, flat]
    sub.eliminate_zeros()
    index = {(int(u) + 1, int(v) + 1): t for t, (u, v) in enumerate(zip(us, vs))}
    return PairGraph(k, np.column_stack([us, vs]), sub.tocsr(), index)


def pair_graph_distance(pg: PairGraph, a: tuple[int, int], b: tuple[int, int]) -> float:
    if a not in pg.index or b not in pg.index:
        raise KeyError(f"{a} or {b} is not a vertex of G_{pg.k}")
    dist = dijkstra(pg.adjacency, directed=True, indices=pg.index[a], unweighted=True)
    return float(dist[pg.index[b]])


def _witness(g: Graph, pg: PairGraph, adj: np.ndarray) -> tuple[int, int, int] | None:
    p = pg.half
    nv = len(pg.pairs)
    if nv == 0:
        return None
    first, second = pg.pairs[:, 0], pg.pairs[:, 1]
    n = g.n
    pos = np.full(n * n, -1, dtype=np.int64)
    pos[first * n + second] = np.arange(nv)
    chunk = max(1, _CELLS // nv)
    for s0 in range(0, nv, chunk):
        src = np.arange(s0, min(nv, s0 + chunk))
        dist = dijkstra(pg.adjacency, directed=True, indices=src, unweighted=True, limit=p + 0.5)
        u, v = first[src], second[src]
        if pg.k % 2 == 0:
            tgt = pos[v * n + u]
            hit = np.flatnonzero(dist[np.arange(len(src)), tgt] == p)
            if len(hit):
                t = hit[0]
                return int(u[t]) + 1, int(v[t]) + 1, int(u[t]) + 1
        else:
            ok = (first[None, :] == v[:, None]) & adj[u[:, None], second[None, :]] & (dist == p)
            rows, cols = np.nonzero(ok)
            if len(rows):
                t, c = rows[0], cols[0]
                return int(u[t]) + 1, int(v[t]) + 1, int(second[c]) + 1
    return None


def _odd_witness(g: Graph, k: int, d: np.ndarray) -> tuple[int, int, int] | None:
    p = k // 2
    states: dict[tuple[int, int, int], int] = {}
    for a in range(g.n):
        far = np.flatnonzero(d[a] == p)
        farset = set(far.tolist())
        for b in far:
            for bp in g.sorted_neighbors(int(b) + 1):
                if bp - 1 in farset:
                    states[(a, int(b), bp - 1)] = len(states)
    if not states:
        return None
    keys = np.array(list(states), dtype=np.int64)
    rows, cols = [], []
    nb = [[w - 1 for w in g.sorted_neighbors(v + 1)] for v in range(g.n)]
    for (a, b, bp), s in states.items():
        for a2 in nb[a]:
            for b3 in nb[bp]:
                t = states.get((a2, bp, b3))
                if t is not None:
                    rows.append(s)
                    cols.append(t)
    ns = len(states)
    adj = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(ns, ns))
    chunk = max(1, _CELLS // ns)
    for s0 in range(0, ns, chunk):
        src = np.arange(s0, min(ns, s0 + chunk))
        dist = dijkstra(adj, directed=True, indices=src, unweighted=True, limit=p + 0.5)
        u, v = keys[src, 0], keys[src, 1]
        ok = (keys[None, :, 0] == v[:, None]) & (keys[None, :, 2] == u[:, None]) & (dist == p)
        r, c = np.nonzero(ok)
        if len(r):
            return int(u[r[0]]) + 1, int(v[r[0]]) + 1, int(keys[c[0], 1]) + 1
    return None


def has_isometric_cycle(
    g: Graph, k: int, d: np.ndarray | None = None, method: str = "exact"
) -> tuple[int, int, int] | None:
    """Witness (u, v, x) for an isometric k-cycle, or None.

    For even k the witness repeats u as x (the walk ends at (v, u)).
    """
    if d is None:
        d = all_pairs_distances(g)
    if method == "exact" and k % 2 == 1:
        return _odd_witness(g, k, d)
    if method not in ("exact", "literal"):
        raise ValueError(f"unknown method {method!r}")
    return _witness(g, build_pair_graph(g, k, d), g.adjacency_matrix())


def _component_lisc(g: Graph, fast: bool, method: str) -> tuple[int, tuple[int, int, int] | None]:
    if is_acyclic(g):
        return 0, None
    d = all_pairs_distances(g)
    adj = g.adjacency_matrix()
    diameter = int(d.max())
    best, witness = 0, None
    ks = range(3, g.n + 1)
    if fast:
        ks = reversed(ks)
    for k in ks:
        if k // 2 > diameter:
            continue
        if method == "exact" and k % 2 == 1:
            w = _odd_witness(g, k, d)
        else:
            w = _witness(g, build_pair_graph(g, k, d), adj)
        if w is not None:
            best, witness = k, w
            if fast:
                break
    return best, witness


def longest_isometric_cycle(g: Graph, *, fast: bool = False, with_witness: bool = False, method: str = "exact"):
    """Length of the longest isometric cycle (0 for forests).

    Each connected component is scanned separately over k = 3..n; the
    largest successful k wins. ``fast`` scans downward and stops at the
    first success.
    """
    best, witness = 0, None
    for comp in connected_components(g):
        if len(comp) < 3:
            continue
        sub, labels = induced_subgraph(g, comp)
        k, w = _component_lisc(sub, fast, method)
        if k > best:
            best = k
            witness = tuple(labels[t - 1] for t in w) if w else None
    if with_witness:
        return best, witness
    return best
