"""Best-bound branch-and-bound over binary variables with lazy constraints.

The lazy handler is called with a :class:`CallbackContext` at every node
whose LP optimum is integral. It returns a list of violated rows (the
node is re-solved with them added globally) or an empty list to accept
the point. Handlers may also raise the objective cutoff.
"""
from __future__ import annotations

import heapq
import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .model import GE, LE, LinearConstraint, Model, ModelError
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, BasisSnapshot, BoundedSimplex, SimplexError

log = logging.getLogger(__name__)

STATUS_OPTIMAL = "optimal"
STATUS_INFEASIBLE = "infeasible"
STATUS_CUTOFF_EXHAUSTED = "cutoff_exhausted"
STATUS_TIME_LIMIT = "time_limit"
STATUS_NODE_LIMIT = "node_limit"


class EngineError(RuntimeError):
    pass


@dataclass
class SolveConfig:
    time_limit: float = 3600.0
    integrality_tolerance: float = 1e-6
    feasibility_tolerance: float = 1e-7
    objective_cutoff: float | None = None
    node_limit: int | None = None
    # add "objective >= cutoff" as a model row instead of pruning on bounds
    cutoff_as_row: bool = False
    # keep exploring nodes whose bound ties the incumbent, excluding each
    # accepted point with a no-good row; used to collect alternative optima
    enumerate_ties: bool = False

    def __post_init__(self) -> None:
        if self.integrality_tolerance <= 0 or self.feasibility_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if self.time_limit <= 0:
            raise ValueError("time limit must be positive")


@dataclass
class SolveOutcome:
    status: str
    x: np.ndarray | None
    objective: float | None
    nodes: int
    lazy_cuts: int
    seconds: float
    cutoff: float | None
    best_bound: float | None = None
    pool_cuts: int = 0
    lp_iterations: int = 0
    added_rows: list[LinearConstraint] = field(default_factory=list)


class CallbackContext:
    def __init__(self, engine: "BranchAndBound", x: np.ndarray, objective: float):
        self._engine = engine
        self.x = x
        self.objective = objective

    @property
    def cutoff(self) -> float | None:
        return self._engine.cutoff

    def raise_cutoff(self, value: float) -> None:
        self._engine.raise_cutoff(value)


LazyHandler = Callable[[CallbackContext], Sequence[LinearConstraint]]


def accept_all(ctx: CallbackContext) -> list[LinearConstraint]:
    return []


@dataclass(order=True)
class _Node:
    key: tuple
    bound: float = field(compare=False)
    depth: int = field(compare=False)
    fixings: tuple = field(compare=False)
    snap: BasisSnapshot | None = field(compare=False)


class BranchAndBound:
    def __init__(self, model: Model, lazy: LazyHandler | None = None, cfg: SolveConfig | None = None):
        self.model = model
        self.lazy = lazy or accept_all
        self.cfg = cfg or SolveConfig()
        self.cutoff: float | None = self.cfg.objective_cutoff
        self._pending_cutoff_row = self.cutoff if self.cfg.cutoff_as_row else None
        self.binaries = model.binaries
        self.base_lo = np.array([v.lb for v in model.variables])
        self.base_hi = np.array([v.ub for v in model.variables])
        self.lp = BoundedSimplex(
            self.base_lo,
            self.base_hi,
            model.cost_vector(),
            feas_tol=self.cfg.feasibility_tolerance,
        )
        self.lp.add_rows(model.constraints)
        self.lazy_cuts = 0
        self.pool_cuts = 0
        self.added_rows: list[LinearConstraint] = []
        self.incumbent: np.ndarray | None = None
        self.incumbent_obj: float | None = None

    # -- helpers -------------------------------------------------------

    def raise_cutoff(self, value: float) -> None:
        if self.cutoff is None or value > self.cutoff:
            self.cutoff = float(value)
            if self.cfg.cutoff_as_row:
                self._pending_cutoff_row = self.cutoff

    def add_constraint_dynamic(self, row: LinearConstraint, keep_incumbent: bool = False) -> None:
        """Append a row to the model and to the live LP; it applies to every later node.

        An incumbent the row violates is dropped unless ``keep_incumbent``
        (no-good rows exclude the incumbent on purpose).
        """
        self.model.check_constraint(row)
        self.model.constraints.append(row)
        self.added_rows.append(row)
        self.lp.add_rows([row])
        if not keep_incumbent and self.incumbent is not None and row.violation(self.incumbent) > self.cfg.feasibility_tolerance:
            log.warning("dynamic row %s cuts off the incumbent; dropping it", row.name)
            self.incumbent = None
            self.incumbent_obj = None

    def _effective(self, bound: float) -> float:
        if self.model.integral_objective:
            return math.floor(bound + 1e-6)
        return bound

    def _pruned(self, bound: float) -> bool:
        eff = self._effective(bound)
        tol = 1e-9
        if self.cutoff is not None and eff < self.cutoff - tol:
            return True
        if self.incumbent_obj is not None:
            if self.cfg.enumerate_ties:
                return eff < self.incumbent_obj - tol
            return eff <= self.incumbent_obj + tol
        return False

    def _apply_fixings(self, fixings: tuple) -> None:
        lp = self.lp
        lp.lo[: lp.n] = self.base_lo
        lp.hi[: lp.n] = self.base_hi
        for j, v in fixings:
            lp.lo[j] = lp.hi[j] = v

    def _flush_cutoff_row(self) -> None:
        if self._pending_cutoff_row is not None:
            row = self.model.objective_row(GE, self._pending_cutoff_row, "objective_cutoff")
            self._pending_cutoff_row = None
            self.add_constraint_dynamic(row)

    def _nogood(self, x: np.ndarray) -> LinearConstraint:
        ones = [j for j in self.binaries if x[j] > 0.5]
        terms = [(j, 1.0) for j in ones] + [(j, -1.0) for j in self.binaries if x[j] <= 0.5]
        return LinearConstraint.build(terms, LE, len(ones) - 1, "nogood")

    # -- main loop -----------------------------------------------------

    def solve(self) -> SolveOutcome:
        cfg = self.cfg
        start = time.perf_counter()
        seq = itertools.count()
        heap: list[_Node] = [_Node((-math.inf, 0, next(seq)), math.inf, 0, (), None)]
        nodes = 0
        stopped = None
        best_open = math.inf
        self._flush_cutoff_row()

        while heap:
            if time.perf_counter() - start > cfg.time_limit:
                stopped = STATUS_TIME_LIMIT
                break
            if cfg.node_limit is not None and nodes >= cfg.node_limit:
                stopped = STATUS_NODE_LIMIT
                break
            node = heapq.heappop(heap)
            if node.bound != math.inf and self._pruned(node.bound):
                continue
            nodes += 1
            self._apply_fixings(node.fixings)
            if node.snap is not None:
                self.lp.restore(node.snap)
            res = self.lp.solve()
            while True:
                if res.status == INFEASIBLE:
                    break
                if res.status == UNBOUNDED:
                    raise EngineError("LP relaxation unbounded; the model is missing bounds")
                if res.status != OPTIMAL:
                    raise EngineError(f"LP solve failed: {res.status}")
                x = res.x
                if self._pruned(res.objective):
                    break
                xb = x[self.binaries]
                frac = np.abs(xb - np.round(xb))
                if frac.max(initial=0.0) > cfg.integrality_tolerance:
                    # most fractional, lowest id on ties
                    score = np.abs(xb - 0.5)
                    k = int(np.argmin(score))
                    j = int(self.binaries[k])
                    snap = self.lp.snapshot()
                    depth = node.depth + 1
                    for val in (1.0, 0.0):
                        heapq.heappush(
                            heap,
                            _Node((-res.objective, -depth, next(seq)), res.objective, depth, node.fixings + ((j, val),), snap),
                        )
                    break
                x = x.copy()
                x[self.binaries] = np.round(xb)
                obj = self.model.objective_value(x)
                cuts = list(self.lazy(CallbackContext(self, x, obj)))
                self._flush_cutoff_row()
                if cuts:
                    if not any(c.violation(x) > cfg.feasibility_tolerance for c in cuts):
                        raise EngineError("lazy handler returned rows that the current point satisfies")
                    for c in cuts:
                        self.add_constraint_dynamic(c)
                    self.lazy_cuts += len(cuts)
                    res = self.lp.solve()
                    continue
                if self.cutoff is not None and self._effective(obj) < self.cutoff - 1e-9:
                    break
                if self.incumbent_obj is None or obj > self.incumbent_obj + 1e-9:
                    self.incumbent = x
                    self.incumbent_obj = obj
                if cfg.enumerate_ties:
                    self.add_constraint_dynamic(self._nogood(x), keep_incumbent=True)
                    self.pool_cuts += 1
                    res = self.lp.solve()
                    continue
                break
            if stopped:
                break

        if stopped:
            best_open = max((n.bound for n in heap), default=math.inf)
        seconds = time.perf_counter() - start
        if stopped:
            status = stopped
        elif self.incumbent is not None:
            status = STATUS_OPTIMAL
        elif self.cutoff is not None:
            status = STATUS_CUTOFF_EXHAUSTED
        else:
            status = STATUS_INFEASIBLE
        return SolveOutcome(
            status=status,
            x=self.incumbent,
            objective=self.incumbent_obj,
            nodes=nodes,
            lazy_cuts=self.lazy_cuts,
            seconds=seconds,
            cutoff=self.cutoff,
            best_bound=None if not stopped else best_open,
            pool_cuts=self.pool_cuts,
            lp_iterations=self.lp.iterations,
            added_rows=list(self.added_rows),
        )


def branch_and_bound(model: Model, lazy: LazyHandler | None = None, cfg: SolveConfig | None = None) -> SolveOutcome:
    """Solve ``model`` exactly. The model's constraint list grows with lazily added rows."""
    for v in model.variables:
        if v.binary and (v.lb, v.ub) != (0.0, 1.0):
            raise ModelError(f"binary {v.name} must have bounds [0, 1]")
    return BranchAndBound(model, lazy, cfg).solve()
