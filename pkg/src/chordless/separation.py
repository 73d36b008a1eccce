"""Lazy subtour separation at integral points: the soft and tough schemes."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .engine.bnb import CallbackContext, EngineError
from .engine.model import GE, LE, LinearConstraint
from .formulations import CCP, CEC, ILPCUT, FormulationHandles
from .graph import cut_edges, cycle_components, delta_cut, delta_vertex, is_chordless

log = logging.getLogger(__name__)

BASIC, STRENGTHENED = "basic", "strengthened"


@dataclass
class CutPoolState:
    longest_induced_cycle: int = 0
    best_cycles: list[tuple[int, ...]] = field(default_factory=list)
    cuts_added: int = 0
    cut_keys: set = field(default_factory=set)
    # the record cycle that soft mode keeps uncut until it shows up alone
    protected: frozenset[int] | None = None

    def record(self, cycle: tuple[int, ...]) -> None:
        if len(cycle) > self.longest_induced_cycle:
            self.longest_induced_cycle = len(cycle)
            self.best_cycles = [cycle]
        elif len(cycle) == self.longest_induced_cycle and cycle not in self.best_cycles:
            self.best_cycles.append(cycle)


def subtour_cut_ilpcut(h: FormulationHandles, cycle: Sequence[int], i: int | None = None) -> LinearConstraint:
    """sum over arcs at i <= sum over arcs leaving or entering the cycle's vertex set."""
    g = h.graph
    i = min(cycle) if i is None else i
    if i not in cycle:
        raise ValueError(f"vertex {i} is not on the cycle")
    terms = [(h.x[a.id], 1.0) for a in delta_vertex(g, i)]
    if len(set(cycle)) < g.n:
        # a cycle through every vertex has no crossing arcs
        terms += [(h.x[a.id], -1.0) for a in delta_cut(g, cycle)]
    return LinearConstraint.build(terms, LE, 0, "subtour_" + "_".join(map(str, sorted(cycle))))


def subtour_cut_cec(h: FormulationHandles, cycle: Sequence[int]) -> LinearConstraint:
    return LinearConstraint.build(
        [(h.y[i], 1.0) for i in cycle], LE, len(cycle) - 1, "cycle_" + "_".join(map(str, sorted(cycle)))
    )


def subtour_cut_ccp(
    h: FormulationHandles,
    c: Sequence[int],
    mode: str = BASIC,
    witness: tuple[int, int] | None = None,
) -> LinearConstraint:
    """Connectivity row for vertex set ``c``.

    ``basic``: x(delta(C)) >= 2 (y_i + y_j - 1), witness = (i in C, j outside).
    ``strengthened``: x(delta(C)) >= 2 x_e for the edge e = (i, j) given as witness.
    """
    g = h.graph
    cs = frozenset(c)
    if witness is None:
        raise ValueError("a crossing witness (i, j) is required")
    i, j = witness
    if i not in cs or j in cs or not 1 <= j <= g.n:
        raise ValueError(f"witness {witness} does not cross the set")
    crossing = [(h.x[k], 1.0) for k in cut_edges(g, cs)]
    tag = "_".join(map(str, sorted(cs)))
    if mode == BASIC:
        return LinearConstraint.build(crossing + [(h.y[i], -2.0), (h.y[j], -2.0)], GE, -2, f"connect_{tag}")
    if mode == STRENGTHENED:
        if not g.has_edge(i, j):
            raise ValueError(f"witness {witness} is not an edge")
        k = g.edge_index()[(min(i, j), max(i, j))]
        return LinearConstraint.build(crossing + [(h.x[k], -2.0)], GE, 0, f"connect_edge_{tag}_{i}_{j}")
    raise ValueError(f"unknown mode {mode!r}")


def _components(h: FormulationHandles, x) -> list[tuple[int, ...]]:
    comps = cycle_components(h.graph, h.selected_edges(x))
    for c in comps:
        if not is_chordless(h.graph, c):
            raise EngineError(f"integral solution contains cycle {c} with a chord")
    # longest first, then by smallest vertex
    return sorted(comps, key=lambda c: (-len(c), c))


class _Separator:
    def __init__(self, h: FormulationHandles, state: CutPoolState | None = None, ccp_mode: str = BASIC, verbose: bool = False):
        if h.kind not in (ILPCUT, CEC, CCP):
            raise ValueError(f"{h.kind} has no lazy subtour family")
        self.h = h
        self.state = state or CutPoolState()
        self.ccp_mode = ccp_mode
        self.verbose = verbose

    def cut_for(self, cycle: tuple[int, ...], selected: set[int], x) -> list[LinearConstraint]:
        key = frozenset(cycle)
        h = self.h
        outside = sorted(selected - key)
        # a connectivity row only separates C from one outside witness, so
        # C may legitimately return next to other cycles
        tag = (key, min(cycle), outside[0]) if h.kind == CCP and outside else key
        if tag in self.state.cut_keys:
            raise EngineError(f"cycle {cycle} came back after being cut")
        self.state.cut_keys.add(tag)
        if h.kind == ILPCUT:
            rows = [subtour_cut_ilpcut(h, cycle)]
        elif h.kind == CEC:
            rows = [subtour_cut_cec(h, cycle)]
        else:
            if outside:
                i = min(cycle)
                rows = [subtour_cut_ccp(h, cycle, BASIC, (i, outside[0]))]
                if self.ccp_mode == STRENGTHENED:
                    rows += [
                        subtour_cut_ccp(h, cycle, STRENGTHENED, (i, j))
                        for j in sorted(h.graph.neighbors(i) - key)
                    ]
            else:
                # a lone cycle cannot be separated by a connectivity row
                rows = [subtour_cut_cec(h, cycle)]
        self.state.cuts_added += len(rows)
        if self.verbose:
            for r in rows:
                log.info("cut %s %s violation=%.3g", h.kind, cycle, r.violation(x))
        return rows


class SoftHandler(_Separator):
    """Keep a new record cycle uncut; cut every cycle no longer than the record."""

    def __call__(self, ctx: CallbackContext) -> list[LinearConstraint]:
        comps = _components(self.h, ctx.x)
        selected = {v for c in comps for v in c}
        st = self.state
        cuts: list[LinearConstraint] = []
        for c in comps:
            key = frozenset(c)
            if len(c) > st.longest_induced_cycle:
                st.record(c)
                st.protected = key
            elif key == st.protected:
                continue
            else:
                st.record(c)
                cuts += self.cut_for(c, selected, ctx.x)
        return cuts


class ToughHandler(_Separator):
    """Cut every cycle, remember the longest and demand something longer."""

    def __call__(self, ctx: CallbackContext) -> list[LinearConstraint]:
        comps = _components(self.h, ctx.x)
        selected = {v for c in comps for v in c}
        st = self.state
        cuts: list[LinearConstraint] = []
        for c in comps:
            st.record(c)
            if self.h.kind == CCP and len(comps) == 1:
                # the raised cutoff already removes a lone cycle
                continue
            cuts += self.cut_for(c, selected, ctx.x)
        ctx.raise_cutoff(st.longest_induced_cycle + 1)
        return cuts


def soft_handler(h: FormulationHandles, state: CutPoolState | None = None, **kw) -> SoftHandler:
    return SoftHandler(h, state, **kw)


def tough_handler(h: FormulationHandles, state: CutPoolState | None = None, **kw) -> ToughHandler:
    return ToughHandler(h, state, **kw)
