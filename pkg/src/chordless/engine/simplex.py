"""Bounded-variable revised simplex (primal and dual) on a dense basis inverse.

Every row ``a x (sense) b`` gets its own slack column ``s`` so that the
working system is ``a x + s = b`` with ``s`` in ``[0, inf)`` for ``<=``,
``(-inf, 0]`` for ``>=`` and ``[0, 0]`` for ``==``. The slack basis is
therefore always available as a starting point. The objective is
maximised by the public interface and minimised internally.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .model import EQ, GE, LE, LinearConstraint, Model

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"
NOT_DUAL_FEASIBLE = "not_dual_feasible"


class SimplexError(RuntimeError):
    pass


@dataclass
class LPResult:
    status: str
    objective: float = float("nan")
    x: np.ndarray | None = None
    iterations: int = 0


@dataclass
class BasisSnapshot:
    basis: np.ndarray
    at_upper: np.ndarray
    rows: int


class BoundedSimplex:
    def __init__(
        self,
        lb: Sequence[float],
        ub: Sequence[float],
        cost: Sequence[float],
        *,
        feas_tol: float = 1e-7,
        opt_tol: float = 1e-9,
        pivot_tol: float = 1e-9,
        bland_after: int = 30,
        refactor_every: int = 80,
        max_iter: int = 200_000,
        perturbation: float = 1e-6,
    ):
        self.n = len(lb)
        self.lo = np.array(lb, dtype=float)
        self.hi = np.array(ub, dtype=float)
        self.c = -np.array(cost, dtype=float)
        if np.any(self.lo > self.hi):
            raise SimplexError("lower bound above upper bound")
        self.feas_tol = feas_tol
        self.opt_tol = opt_tol
        self.pivot_tol = pivot_tol
        self.bland_after = bland_after
        self.refactor_every = refactor_every
        self.max_iter = max_iter
        self.perturbation = perturbation

        self.m = 0
        self.b = np.zeros(0)
        self._ri: list[int] = []
        self._ci: list[int] = []
        self._v: list[float] = []
        self.A = sp.csc_matrix((0, self.n))
        self._AT = self.A.T.tocsr()
        self.basis = np.zeros(0, dtype=np.int64)
        self.at_upper = np.zeros(self.n, dtype=bool)
        self.Binv = np.zeros((0, 0))
        self._since_refactor = 0
        self.iterations = 0
        self.x: np.ndarray | None = None

    # -- construction -------------------------------------------------

    @property
    def ncols(self) -> int:
        return self.n + self.m

    def add_rows(self, rows: Sequence[LinearConstraint]) -> None:
        """Append rows; their slacks join the basis so the basis stays valid."""
        if not rows:
            return
        m0, k = self.m, len(rows)
        slack_lo, slack_hi, rhs = [], [], []
        for t, row in enumerate(rows):
            for j, a in row.terms:
                self._ri.append(m0 + t)
                self._ci.append(j)
                self._v.append(a)
            rhs.append(row.rhs)
            if row.sense == LE:
                slack_lo.append(0.0), slack_hi.append(np.inf)
            elif row.sense == GE:
                slack_lo.append(-np.inf), slack_hi.append(0.0)
            elif row.sense == EQ:
                slack_lo.append(0.0), slack_hi.append(0.0)
            else:
                raise SimplexError(f"bad sense {row.sense!r}")
        self.m = m0 + k
        self.b = np.concatenate([self.b, rhs])
        self.lo = np.concatenate([self.lo, slack_lo])
        self.hi = np.concatenate([self.hi, slack_hi])
        self.c = np.concatenate([self.c, np.zeros(k)])
        self.at_upper = np.concatenate([self.at_upper, np.zeros(k, dtype=bool)])
        self._rebuild_matrix()

        new_basis = np.concatenate([self.basis, self.n + m0 + np.arange(k)])
        # coefficients of the new rows on the old basic columns
        rb = self.A[m0:, self.basis].toarray() if m0 else np.zeros((k, 0))
        binv = np.zeros((self.m, self.m))
        binv[:m0, :m0] = self.Binv
        binv[m0:, :m0] = -rb @ self.Binv
        binv[m0:, m0:] = np.eye(k)
        self.Binv = binv
        self.basis = new_basis

    def _rebuild_matrix(self) -> None:
        m = self.m
        rows = np.concatenate([np.array(self._ri, dtype=np.int64), np.arange(m)])
        cols = np.concatenate([np.array(self._ci, dtype=np.int64), self.n + np.arange(m)])
        vals = np.concatenate([np.array(self._v, dtype=float), np.ones(m)])
        self.A = sp.csc_matrix((vals, (rows, cols)), shape=(m, self.n + m))
        self._AT = self.A.T.tocsr()

    def set_bounds(self, j: int, lo: float, hi: float) -> None:
        if lo > hi:
            raise SimplexError(f"empty bound interval for column {j}")
        self.lo[j] = lo
        self.hi[j] = hi

    def snapshot(self) -> BasisSnapshot:
        return BasisSnapshot(self.basis.copy(), self.at_upper.copy(), self.m)

    def restore(self, snap: BasisSnapshot) -> None:
        basis = snap.basis
        at_upper = snap.at_upper
        if snap.rows < self.m:
            basis = np.concatenate([basis, self.n + np.arange(snap.rows, self.m)])
            at_upper = np.concatenate([at_upper, np.zeros(self.m - snap.rows, dtype=bool)])
        same = len(basis) == len(self.basis) and np.array_equal(basis, self.basis)
        self.at_upper = at_upper.copy()
        if not same:
            self.basis = basis.copy()
            self.refactor()

    def refactor(self) -> None:
        if self.m == 0:
            self.Binv = np.zeros((0, 0))
            return
        bmat = self.A[:, self.basis].toarray()
        try:
            self.Binv = np.linalg.inv(bmat)
        except np.linalg.LinAlgError as exc:
            raise SimplexError("singular basis") from exc
        self._since_refactor = 0

    # -- shared pieces -------------------------------------------------

    def _nonbasic_values(self) -> np.ndarray:
        val = np.where(self.at_upper, self.hi, self.lo)
        bad = ~np.isfinite(val)
        if bad.any():
            val[bad] = np.where(self.at_upper[bad], self.lo[bad], self.hi[bad])
            val[~np.isfinite(val)] = 0.0
        val[self.basis] = 0.0
        return val

    def _basic_values(self, xn: np.ndarray) -> np.ndarray:
        return self.Binv @ (self.b - self.A @ xn)

    def _reduced_costs(self, cb: np.ndarray, cfull: np.ndarray) -> np.ndarray:
        y = cb @ self.Binv
        d = cfull - self._AT @ y
        d[self.basis] = 0.0
        return d

    def _movable(self, xn: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        can_inc = xn < self.hi - 1e-12
        can_dec = xn > self.lo + 1e-12
        can_inc[self.basis] = False
        can_dec[self.basis] = False
        return can_inc, can_dec

    def _column(self, q: int) -> np.ndarray:
        start, end = self.A.indptr[q], self.A.indptr[q + 1]
        return self.Binv[:, self.A.indices[start:end]] @ self.A.data[start:end]

    def _pivot(self, r: int, q: int, alpha: np.ndarray, leave_upper: bool) -> None:
        leaving = self.basis[r]
        self.at_upper[leaving] = leave_upper
        self.basis[r] = q
        self.at_upper[q] = False
        row = self.Binv[r] / alpha[r]
        self.Binv -= np.outer(alpha, row)
        self.Binv[r] = row
        self._since_refactor += 1

    def _finish(self, xn: np.ndarray, xb: np.ndarray) -> LPResult:
        x = xn.copy()
        x[self.basis] = xb
        self.x = x
        obj = -float(self.c[: self.n] @ x[: self.n])
        return LPResult(OPTIMAL, obj, x[: self.n].copy(), self.iterations)

    def _tick(self) -> None:
        self.iterations += 1
        if self.iterations > self.max_iter:
            raise SimplexError("simplex iteration limit reached")
        if self._since_refactor >= self.refactor_every:
            self.refactor()

    # -- primal --------------------------------------------------------

    def primal(self) -> LPResult:
        """Primal simplex; phase 1 minimises the sum of bound violations."""
        ftol, ptol = self.feas_tol, self.pivot_tol
        bland = False
        streak = 0
        best = (2, np.inf)
        while True:
            self._tick()
            xn = self._nonbasic_values()
            xb = self._basic_values(xn)
            lo_b, hi_b = self.lo[self.basis], self.hi[self.basis]
            below = xb < lo_b - ftol
            above = xb > hi_b + ftol
            phase1 = bool(below.any() or above.any())
            if phase1:
                cb = np.where(below, -1.0, np.where(above, 1.0, 0.0))
                d = self._reduced_costs(cb, np.zeros(self.ncols))
                key = (1, float(np.sum((lo_b - xb)[below]) + np.sum((xb - hi_b)[above])))
            else:
                d = self._reduced_costs(self.c[self.basis], self.c)
                key = (0, float(self.c @ xn + self.c[self.basis] @ xb))
            if key[0] < best[0] or key[1] < best[1] - 1e-9 * (1.0 + abs(best[1])):
                best, streak, bland = key, 0, False
            else:
                streak += 1
                bland = streak >= self.bland_after
            can_inc, can_dec = self._movable(xn)
            cand_inc = can_inc & (d < -self.opt_tol)
            cand_dec = can_dec & (d > self.opt_tol)
            cand = cand_inc | cand_dec
            if not cand.any():
                if phase1:
                    return LPResult(INFEASIBLE, iterations=self.iterations)
                return self._finish(xn, xb)
            if bland:
                q = int(np.flatnonzero(cand)[0])
            else:
                q = int(np.argmax(np.where(cand, np.abs(d), -1.0)))
            sigma = 1.0 if cand_inc[q] and d[q] < 0 else -1.0
            alpha = self._column(q)
            delta = -sigma * alpha

            lim = np.full(self.m, np.inf)
            to_upper = np.zeros(self.m, dtype=bool)
            dec = delta < -ptol
            inc = delta > ptol
            with np.errstate(invalid="ignore", divide="ignore"):
                m1 = dec & (xb > hi_b + ftol)
                m2 = dec & ~m1 & np.isfinite(lo_b)
                m3 = inc & (xb < lo_b - ftol)
                m4 = inc & ~m3 & np.isfinite(hi_b)
                m2 &= xb >= lo_b - ftol
                m4 &= xb <= hi_b + ftol
                lim[m1] = (xb[m1] - hi_b[m1]) / -delta[m1]
                to_upper[m1] = True
                lim[m2] = (xb[m2] - lo_b[m2]) / -delta[m2]
                lim[m3] = (lo_b[m3] - xb[m3]) / delta[m3]
                lim[m4] = (hi_b[m4] - xb[m4]) / delta[m4]
                to_upper[m4] = True
            np.maximum(lim, 0.0, out=lim)
            flip = self.hi[q] - self.lo[q]
            tmin = lim.min() if self.m else np.inf
            if not np.isfinite(tmin) and not np.isfinite(flip):
                if phase1:
                    raise SimplexError("unbounded phase-1 ray")
                return LPResult(UNBOUNDED, iterations=self.iterations)
            if flip <= tmin:
                self.at_upper[q] = sigma > 0
                step = flip
            else:
                ties = np.flatnonzero(lim <= tmin + 1e-12)
                if bland:
                    r = int(ties[np.argmin(self.basis[ties])])
                else:
                    r = int(ties[np.argmax(np.abs(delta[ties]))])
                self._pivot(r, q, alpha, bool(to_upper[r]))
                step = tmin

    # -- dual ----------------------------------------------------------

    def _make_dual_feasible(self, d: np.ndarray, xn: np.ndarray) -> bool:
        can_inc, can_dec = self._movable(xn)
        tol = self.opt_tol
        nonbasic = np.ones(self.ncols, dtype=bool)
        nonbasic[self.basis] = False
        lower_bad = nonbasic & can_inc & ~can_dec & (d < -tol)
        upper_bad = nonbasic & can_dec & ~can_inc & (d > tol)
        free_bad = nonbasic & can_inc & can_dec & (np.abs(d) > tol)
        if free_bad.any():
            return False
        if np.any(lower_bad & ~np.isfinite(self.hi)) or np.any(upper_bad & ~np.isfinite(self.lo)):
            return False
        self.at_upper[lower_bad] = True
        self.at_upper[upper_bad] = False
        return True

    def dual(self, perturb: bool = True) -> LPResult:
        """Dual simplex from a dual feasible basis (boxed columns are flipped to get one).

        With ``perturb`` the costs of nonbasic columns are pushed slightly
        further into dual feasibility first, which breaks the ties of
        dual-degenerate models; the true costs are restored afterwards and a
        primal pass removes any leftover dual infeasibility.
        """
        xn = self._nonbasic_values()
        d = self._reduced_costs(self.c[self.basis], self.c)
        if not self._make_dual_feasible(d, xn):
            return LPResult(NOT_DUAL_FEASIBLE, iterations=self.iterations)
        if not perturb:
            return self._dual_loop()
        saved = self.c.copy()
        xn = self._nonbasic_values()
        can_inc, can_dec = self._movable(xn)
        j = np.arange(self.ncols)
        # deterministic spread in [0.5, 1.5) times the scale
        step = self.perturbation * (1.0 + np.abs(saved)) * (0.5 + np.modf(j * 0.6180339887498949)[0])
        self.c = saved + np.where(can_inc & ~can_dec, step, np.where(can_dec & ~can_inc, -step, 0.0))
        try:
            res = self._dual_loop()
        finally:
            self.c = saved
        if res.status == OPTIMAL:
            res = self.primal()
        return res

    def _dual_loop(self) -> LPResult:
        ftol, ptol = self.feas_tol, self.pivot_tol
        bland = False
        streak = 0
        best = -np.inf
        while True:
            self._tick()
            xn = self._nonbasic_values()
            xb = self._basic_values(xn)
            lo_b, hi_b = self.lo[self.basis], self.hi[self.basis]
            below = lo_b - xb
            above = xb - hi_b
            viol = np.maximum(below, above)
            bad = viol > ftol
            if not bad.any():
                return self._finish(xn, xb)
            # Bland's rule after a run of pivots without objective progress
            obj = float(self.c @ xn + self.c[self.basis] @ xb)
            if obj > best + 1e-9 * (1.0 + abs(best)):
                best, streak, bland = obj, 0, False
            else:
                streak += 1
                bland = streak >= self.bland_after
            if bland:
                idx = np.flatnonzero(bad)
                r = int(idx[np.argmin(self.basis[idx])])
            else:
                r = int(np.argmax(viol))
            to_lower = below[r] > ftol
            d = self._reduced_costs(self.c[self.basis], self.c)
            row = self._AT @ self.Binv[r]
            row[self.basis] = 0.0
            can_inc, can_dec = self._movable(xn)
            if to_lower:
                elig = (can_inc & (row < -ptol)) | (can_dec & (row > ptol))
            else:
                elig = (can_inc & (row > ptol)) | (can_dec & (row < -ptol))
            if not elig.any():
                return LPResult(INFEASIBLE, iterations=self.iterations)
            dd = np.where(can_inc & ~can_dec, np.maximum(d, 0.0), np.where(can_dec & ~can_inc, np.maximum(-d, 0.0), np.abs(d)))
            dd[dd < self.opt_tol] = 0.0
            idx = np.flatnonzero(elig)
            ratio = dd[idx] / np.abs(row[idx])
            tmin = ratio.min()
            ties = idx[ratio <= tmin + 1e-12]
            if bland:
                q = int(ties[0])
            else:
                q = int(ties[np.argmax(np.abs(row[ties]))])
            alpha = self._column(q)
            if abs(alpha[r]) < ptol:
                self.refactor()
                alpha = self._column(q)
            self._pivot(r, q, alpha, not to_lower)

    def solve(self) -> LPResult:
        """Re-optimise with the dual simplex, falling back to the primal."""
        res = self.dual()
        if res.status == NOT_DUAL_FEASIBLE:
            res = self.primal()
        return res


def lp_relax_solve(model: Model, *, method: str = "primal") -> LPResult:
    """Solve the continuous relaxation of ``model`` (integrality dropped)."""
    lp = BoundedSimplex(
        [v.lb for v in model.variables],
        [v.ub for v in model.variables],
        model.cost_vector(),
    )
    lp.add_rows(model.constraints)
    if method == "primal":
        return lp.primal()
    if method == "dual":
        return lp.solve()
    raise ValueError(f"unknown method {method!r}")
