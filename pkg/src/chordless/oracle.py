"""Exhaustive reference searches and the constructive multi-start heuristic."""
from __future__ import annotations

from typing import Iterable

from .graph import Graph, all_pairs_distances, canonical_cycle


class OracleSizeError(ValueError):
    pass


def chordless_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every chordless cycle once, in canonical form.

    Paths grow from their smallest vertex ``s`` using only larger vertices; a
    candidate may touch the path's last vertex and ``s`` but nothing between.
    """
    found: list[tuple[int, ...]] = []
    nbrs = [frozenset()] + [g.neighbors(v) for v in g.vertices]

    def grow(path: list[int], blocked: frozenset[int]) -> None:
        # blocked: vertices adjacent to some interior vertex (or on the path)
        s, last = path[0], path[-1]
        for w in sorted(nbrs[last]):
            if w <= s or w in blocked:
                continue
            if s in nbrs[w] and len(path) >= 2:
                if path[1] < w:
                    found.append(tuple(path + [w]))
                continue
            grow(path + [w], blocked | nbrs[last] | {w})

    for s in g.vertices:
        for p1 in sorted(nbrs[s]):
            if p1 > s:
                grow([s, p1], frozenset({s, p1}))
    return sorted(found, key=lambda c: (len(c), c))


def brute_force_longest_induced_cycle(g: Graph, limit_n: int = 16) -> tuple[int, list[tuple[int, ...]]]:
    if g.n > limit_n:
        raise OracleSizeError(f"{g.n} vertices exceeds the oracle limit {limit_n}")
    cycles = chordless_cycles(g)
    if not cycles:
        return 0, []
    best = max(len(c) for c in cycles)
    return best, sorted(c for c in cycles if len(c) == best)


def _simple_cycles_without_chords(g: Graph) -> Iterable[list[int]]:
    # plain DFS over simple paths, rejecting a vertex that touches any earlier
    # interior vertex (isometric cycles are induced, so nothing is lost)
    n = g.n
    for s in g.vertices:
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in g.neighbors(v):
                if w < s or w in path:
                    continue
                if any(g.has_edge(w, p) for p in path[1:-1]):
                    continue
                if g.has_edge(w, s) and len(path) >= 2:
                    yield path + [w]
                    continue
                if len(path) < n:
                    stack.append((w, path + [w]))


def brute_force_longest_isometric_cycle(g: Graph, limit_n: int = 10) -> int:
    """Longest cycle whose along-cycle distances equal graph distances."""
    if g.n > limit_n:
        raise OracleSizeError(f"{g.n} vertices exceeds the oracle limit {limit_n}")
    d = all_pairs_distances(g)
    best = 0
    for cyc in _simple_cycles_without_chords(g):
        k = len(cyc)
        if k <= best:
            continue
        if all(
            d[cyc[a] - 1, cyc[b] - 1] == min(b - a, k - (b - a))
            for a in range(k)
            for b in range(a + 1, k)
        ):
            best = k
    return best


def multi_start_heuristic(g: Graph, starts: Iterable[tuple[int, int]] | None = None) -> tuple[int, tuple[int, ...]]:
    """Grow a chordless path from each start edge, smallest candidate first.

    A vertex joins at either end when it touches that end and no interior
    vertex; the run stops when the two ends become adjacent (a chordless
    cycle) or nothing can be added. Returns the best cycle over all starts.
    """
    best: tuple[int, tuple[int, ...]] = (0, ())
    edges = g.edges if starts is None else [tuple(sorted(e)) for e in starts]
    for i, j in edges:
        if not g.has_edge(i, j):
            raise ValueError(f"start ({i}, {j}) is not an edge")
        path = [i, j]
        onpath = {i, j}
        while True:
            interior = path[1:-1]
            cand = sorted(
                w
                for w in (g.neighbors(path[0]) | g.neighbors(path[-1])) - onpath
                if not any(g.has_edge(w, p) for p in interior)
            )
            if not cand:
                break
            w = cand[0]
            if g.has_edge(w, path[-1]):
                path.append(w)
            else:
                path.insert(0, w)
            onpath.add(w)
            if len(path) >= 3 and g.has_edge(path[0], path[-1]):
                cyc = canonical_cycle(path)
                if len(cyc) > best[0]:
                    best = (len(cyc), cyc)
                break
    return best
