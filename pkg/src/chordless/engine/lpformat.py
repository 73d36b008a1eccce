"""CPLEX-style LP text for a Model, for cross-checking with external solvers.

Layout::

    \\ <model name>
    Maximize
     obj: + 1 y_1 + 1 y_2 ...
    Subject To
     <row name or r<k>>: + 1 x_1_2 - 1 y_1 <= 0
    Bounds
     <lb> <= <name> <= <ub>      (continuous columns only; inf written as inf)
    Binaries
     <names>
    End

Coefficients use ``repr`` of the float so the text round-trips exactly.
Long rows wrap after eight terms.
"""
from __future__ import annotations

import math
import re

from .model import EQ, GE, LE, Model

_OP = {LE: "<=", GE: ">=", EQ: "="}
_BAD = re.compile(r"[^A-Za-z0-9_.]")


def _name(s: str) -> str:
    s = _BAD.sub("_", s) or "_"
    return s if not s[0].isdigit() and s[0] not in ".eE" else "_" + s


def _num(a: float) -> str:
    return repr(int(a)) if float(a).is_integer() and abs(a) < 1e15 else repr(float(a))


def _terms(pairs, names) -> str:
    out = []
    for t, (j, a) in enumerate(pairs):
        if t and t % 8 == 0:
            out.append("\n   ")
        out.append(f" {'-' if a < 0 else '+'} {_num(abs(a))} {names[j]}")
    return "".join(out) if out else " 0"


def _bound(v: float) -> str:
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return _num(v)


def to_lp(model: Model) -> str:
    names = []
    seen: set[str] = set()
    for j, v in enumerate(model.variables):
        nm = _name(v.name or f"v{j}")
        if nm in seen:
            nm = f"{nm}_{j}"
        seen.add(nm)
        names.append(nm)
    lines = [f"\\ {model.name}", "Maximize", " obj:" + _terms(sorted(model.objective.items()), names), "Subject To"]
    used: set[str] = set()
    for k, row in enumerate(model.constraints):
        rn = _name(row.name) if row.name else f"r{k}"
        if rn in used:
            rn = f"{rn}_{k}"
        used.add(rn)
        lines.append(f" {rn}:{_terms(row.terms, names)} {_OP[row.sense]} {_num(row.rhs)}")
    lines.append("Bounds")
    for j, v in enumerate(model.variables):
        if not v.binary:
            lines.append(f" {_bound(v.lb)} <= {names[j]} <= {_bound(v.ub)}")
    bins = [names[j] for j, v in enumerate(model.variables) if v.binary]
    if bins:
        lines.append("Binaries")
        lines += [" " + " ".join(bins[t : t + 10]) for t in range(0, len(bins), 10)]
    lines.append("End")
    return "\n".join(lines) + "\n"
