from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

LE, GE, EQ = "<=", ">=", "=="
_SENSES = (LE, GE, EQ)


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class LinearConstraint:
    terms: tuple[tuple[int, float], ...]
    sense: str
    rhs: float
    name: str = ""

    @classmethod
    def build(cls, terms: Iterable[tuple[int, float]], sense: str, rhs: float, name: str = "") -> "LinearConstraint":
        """Merge repeated variable ids and drop zero coefficients."""
        if sense not in _SENSES:
            raise ModelError(f"unknown sense {sense!r}")
        acc: dict[int, float] = {}
        for j, a in terms:
            acc[int(j)] = acc.get(int(j), 0.0) + float(a)
        merged = tuple((j, a) for j, a in sorted(acc.items()) if a != 0.0)
        return cls(merged, sense, float(rhs), name)

    def activity(self, x: Sequence[float]) -> float:
        return float(sum(a * x[j] for j, a in self.terms))

    def violation(self, x: Sequence[float]) -> float:
        """Amount by which ``x`` breaks the row (0 when satisfied)."""
        lhs = self.activity(x)
        if self.sense == LE:
            return max(0.0, lhs - self.rhs)
        if self.sense == GE:
            return max(0.0, self.rhs - lhs)
        return abs(lhs - self.rhs)


@dataclass
class Variable:
    lb: float
    ub: float
    binary: bool
    name: str


@dataclass
class Model:
    """A maximisation MILP whose integer variables are all binary."""

    variables: list[Variable] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)
    constraints: list[LinearConstraint] = field(default_factory=list)
    integral_objective: bool = False
    name: str = "model"

    def add_var(self, name: str, lb: float = 0.0, ub: float = 1.0, binary: bool = True, obj: float = 0.0) -> int:
        if binary and (lb, ub) != (0.0, 1.0):
            raise ModelError(f"binary variable {name} must have bounds [0, 1]")
        if math.isnan(lb) or math.isnan(ub) or lb > ub:
            raise ModelError(f"bad bounds [{lb}, {ub}] for {name}")
        self.variables.append(Variable(float(lb), float(ub), binary, name))
        j = len(self.variables) - 1
        if obj:
            self.objective[j] = float(obj)
        return j

    def add_constraint(self, terms: Iterable[tuple[int, float]], sense: str, rhs: float, name: str = "") -> LinearConstraint:
        row = LinearConstraint.build(terms, sense, rhs, name)
        self.check_constraint(row)
        self.constraints.append(row)
        return row

    def check_constraint(self, row: LinearConstraint) -> None:
        if row.sense not in _SENSES:
            raise ModelError(f"unknown sense {row.sense!r}")
        if not math.isfinite(row.rhs):
            raise ModelError(f"non-finite rhs in {row.name}")
        ids = [j for j, _ in row.terms]
        if len(set(ids)) != len(ids):
            raise ModelError(f"repeated variable in {row.name}")
        for j, a in row.terms:
            if not 0 <= j < len(self.variables):
                raise ModelError(f"unknown variable id {j} in {row.name}")
            if not math.isfinite(a):
                raise ModelError(f"non-finite coefficient in {row.name}")

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    @property
    def binaries(self) -> np.ndarray:
        return np.array([j for j, v in enumerate(self.variables) if v.binary], dtype=np.int64)

    def cost_vector(self) -> np.ndarray:
        c = np.zeros(self.num_vars)
        for j, a in self.objective.items():
            c[j] = a
        return c

    def objective_value(self, x: Sequence[float]) -> float:
        return float(sum(a * x[j] for j, a in self.objective.items()))

    def objective_row(self, sense: str, rhs: float, name: str = "objective_bound") -> LinearConstraint:
        return LinearConstraint.build(self.objective.items(), sense, rhs, name)

    def max_violation(self, x: Sequence[float], extra: Iterable[LinearConstraint] = ()) -> float:
        worst = 0.0
        for v, xv in zip(self.variables, x):
            worst = max(worst, v.lb - xv, xv - v.ub)
        for row in list(self.constraints) + list(extra):
            worst = max(worst, row.violation(x))
        return worst


def as_dense_rows(model: Model, rows: Sequence[LinearConstraint]) -> tuple[np.ndarray, list[str], np.ndarray]:
    a = np.zeros((len(rows), model.num_vars))
    for r, row in enumerate(rows):
        for j, coef in row.terms:
            a[r, j] = coef
    return a, [row.sense for row in rows], np.array([row.rhs for row in rows])
