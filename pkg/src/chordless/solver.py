from __future__ import annotations

import time

from .engine.bnb import (
    STATUS_CUTOFF_EXHAUSTED,
    STATUS_INFEASIBLE,
    STATUS_OPTIMAL,
    SolveConfig,
    branch_and_bound,
)
from .formulations import (
    CCP,
    LIC,
    LIC2,
    CycleResult,
    add_clique_cuts,
    add_min_length,
    build,
    extract_cycle,
    warm_start_bound,
)
from .graph import Graph, maximal_cliques
from .separation import BASIC, CutPoolState, SoftHandler, ToughHandler

DIRECT, SOFT, TOUGH = "direct", "soft", "tough"
STRATEGIES = (DIRECT, SOFT, TOUGH)
WARM_STARTS = ("none", "lisc", "heuristic")


class UsageError(ValueError):
    pass


def check_combination(model: str, strategy: str) -> None:
    if strategy not in STRATEGIES:
        raise UsageError(f"unknown strategy {strategy!r}")
    if strategy == DIRECT and model not in (LIC, LIC2):
        raise UsageError(f"{model} needs lazy cuts; use --strategy soft or tough")
    if strategy != DIRECT and model in (LIC, LIC2):
        raise UsageError(f"{model} has no lazy family; use --strategy direct")


def warm_start_value(g: Graph, kind: str) -> tuple[int, float]:
    from .isometric import longest_isometric_cycle
    from .oracle import multi_start_heuristic

    t0 = time.perf_counter()
    if kind == "lisc":
        value = longest_isometric_cycle(g)
    elif kind == "heuristic":
        value = multi_start_heuristic(g)[0]
    elif kind == "none":
        value = 0
    else:
        raise UsageError(f"unknown warm start {kind!r}")
    return value, time.perf_counter() - t0


def solve(
    g: Graph,
    model: str = "cec",
    strategy: str = TOUGH,
    *,
    warm_start: str | int = "none",
    min_length: int | None = None,
    clique_cuts: bool = False,
    ccp_cut: str = BASIC,
    time_limit: float = 3600.0,
    node_limit: int | None = None,
    cutoff_as_row: bool = False,
    enumerate_ties: bool = True,
    verbose: bool = False,
) -> CycleResult:
    """Longest induced cycle of ``g`` with one model/strategy pair.

    ``warm_start`` may be a name from ``WARM_STARTS`` or an explicit bound.
    A length of 0 means the graph (or the constrained search) has no cycle.
    """
    check_combination(model, strategy)
    if clique_cuts and model != CCP:
        raise UsageError("clique cuts apply to the ccp model only")
    h = build(model, g)
    if clique_cuts:
        add_clique_cuts(h, maximal_cliques(g, 3))
    if min_length:
        add_min_length(h, min_length)
    if isinstance(warm_start, int):
        lb, warm_secs, warm_name = warm_start, 0.0, "value"
    else:
        lb, warm_secs = warm_start_value(g, warm_start)
        warm_name = warm_start
    warm_start_bound(h, lb)

    cfg = SolveConfig(
        time_limit=time_limit,
        node_limit=node_limit,
        objective_cutoff=float(h.lower_bound) if h.lower_bound else None,
        cutoff_as_row=cutoff_as_row,
        enumerate_ties=strategy == SOFT and enumerate_ties,
    )
    state = CutPoolState()
    handler = None
    if strategy == SOFT:
        handler = SoftHandler(h, state, ccp_mode=ccp_cut, verbose=verbose)
    elif strategy == TOUGH:
        handler = ToughHandler(h, state, ccp_mode=ccp_cut, verbose=verbose)
    out = branch_and_bound(h.model, handler, cfg)

    if strategy == TOUGH:
        length = state.longest_induced_cycle
        if length < max(lb, min_length or 0):
            # seen only inside multi-cycle points that met the bound together
            length = 0
        cycles = sorted(state.best_cycles) if length else []
    elif out.x is not None:
        length, cyc = extract_cycle(h, out.x, out.objective)
        cycles = [cyc] if length else []
        if strategy == SOFT:
            extra = [c for c in state.best_cycles if len(c) == length and c not in cycles]
            cycles = sorted(cycles + extra)
    else:
        length, cycles = 0, []
    if strategy == SOFT and out.status == STATUS_OPTIMAL and state.longest_induced_cycle != length:
        raise RuntimeError("soft separation record disagrees with the accepted incumbent")
    return CycleResult(
        length=length,
        cycle=cycles[0] if cycles else (),
        cycles=cycles,
        status=out.status,
        nodes=out.nodes,
        cuts=out.lazy_cuts,
        seconds=out.seconds,
        model=model,
        strategy=strategy,
        warm_start=warm_name,
        warm_bound=lb,
        warm_seconds=warm_secs,
        best_bound=out.best_bound,
    )


__all__ = [
    "solve",
    "check_combination",
    "UsageError",
    "STATUS_OPTIMAL",
    "STATUS_CUTOFF_EXHAUSTED",
    "STATUS_INFEASIBLE",
]
