"""Instance files, the seeded random generator and the published-optima catalog."""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, GraphError

RWC, MG, RANDOM, SYNTH = "RWC", "MG", "RANDOM", "SYNTH"
DATA_ENV = "CHORDLESS_DATA_DIR"
CSV_COLUMNS = ("instance", "model", "strategy", "warm_start", "length", "status", "nodes", "cuts", "seconds")

_COMMENT = ("#", "%", "c ", "c\t")


class ParseError(GraphError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _data_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s == "c" or s.startswith(_COMMENT):
            continue
        out.append((no, s.split()))
    return out


def _ints(tokens: list[str], no: int, want: int = 2) -> list[int]:
    if len(tokens) < want:
        raise ParseError(f"expected {want} integers, got {' '.join(tokens)!r}", no)
    try:
        return [int(t) for t in tokens[:want]]
    except ValueError:
        raise ParseError(f"not an integer pair: {' '.join(tokens)!r}", no) from None


def parse_edge_list(text: str) -> Graph:
    """Whitespace separated ``i j`` lines, optionally after an ``n m`` header.

    The first line counts as a header when exactly ``m`` lines follow it and
    every later label fits in 1..n (or 0..n-1). Files that use vertex 0 are
    read as 0-based and shifted up by one.
    """
    lines = _data_lines(text)
    pairs = [(no, *_ints(tok, no)) for no, tok in lines]
    for no, i, j in pairs:
        if i < 0 or j < 0:
            raise ParseError(f"negative vertex in ({i}, {j})", no)
    n = None
    if pairs and len(lines[0][1]) == 2 and pairs[0][2] == len(pairs) - 1:
        rest = pairs[1:]
        shift = 1 if any(i == 0 or j == 0 for _, i, j in rest) else 0
        if all(max(i, j) + shift <= pairs[0][1] for _, i, j in rest):
            n = pairs[0][1]
            pairs = rest
    shift = 1 if any(i == 0 or j == 0 for _, i, j in pairs) else 0
    if n is None:
        n = max((max(i, j) + shift for _, i, j in pairs), default=0)
    return Graph.from_edges(n, [(i + shift, j + shift) for _, i, j in pairs])


def parse_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for no, tok in _data_lines(text):
        if tok[0] == "p":
            if n is not None:
                raise ParseError("second problem line", no)
            if len(tok) != 4 or tok[1] not in ("edge", "col"):
                raise ParseError(f"bad problem line {' '.join(tok)!r}", no)
            n = _ints(tok[2:], no)[0]
        elif tok[0] == "e":
            if n is None:
                raise ParseError("edge before the problem line", no)
            i, j = _ints(tok[1:], no)
            if not (1 <= i <= n and 1 <= j <= n):
                raise ParseError(f"vertex out of range 1..{n} in ({i}, {j})", no)
            edges.append((i, j))
        else:
            raise ParseError(f"unknown line type {tok[0]!r}", no)
    if n is None:
        raise ParseError("missing problem line")
    return Graph.from_edges(n, edges)


def parse(text: str) -> Graph:
    """DIMACS when a problem line is present, plain edge list otherwise."""
    if any(tok[0] == "p" for _, tok in _data_lines(text)):
        return parse_dimacs(text)
    return parse_edge_list(text)


def write_edge_list(g: Graph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{i} {j}\n" for i, j in g.edges])


def write_dimacs(g: Graph) -> str:
    return "".join([f"p edge {g.n} {g.m}\n"] + [f"e {i} {j}\n" for i, j in g.edges])


def read_graph(path: str | os.PathLike) -> Graph:
    return parse(Path(path).read_text())


def data_dir() -> Path | None:
    d = os.environ.get(DATA_ENV)
    return Path(d) if d else None


def find_instance(name: str, root: str | os.PathLike | None = None) -> Path | None:
    """Locate ``name`` (with any of the usual suffixes) under the data directory."""
    base = Path(root) if root is not None else data_dir()
    if base is None or not base.is_dir():
        return None
    for suffix in ("", ".txt", ".edges", ".col", ".dimacs", ".clq"):
        p = base / f"{name}{suffix}"
        if p.is_file():
            return p
    return None


def load_instance(name: str, root: str | os.PathLike | None = None) -> Graph:
    p = Path(name)
    if not p.is_file():
        found = find_instance(name, root)
        if found is None:
            raise FileNotFoundError(f"instance {name!r} not found (set {DATA_ENV})")
        p = found
    return read_graph(p)


def gen_random(n: int, density: float, seed: int) -> Graph:
    """G(n, p) with pair t (lexicographic order) kept when u_t < density.

    u_t is the t-th double of a Philox stream keyed by the seed, so the
    draw of each pair depends only on (seed, t).
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density {density} outside [0, 1]")
    if n < 0:
        raise ValueError("negative n")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    iu, ju = np.triu_indices(n, k=1)
    u = np.random.Generator(np.random.Philox(key=seed)).random(len(iu))
    keep = u < density
    return Graph.from_edges(n, zip((iu[keep] + 1).tolist(), (ju[keep] + 1).tolist()))


@dataclass(frozen=True)
class InstanceRecord:
    name: str
    n: int
    m: int
    known_opt: int | None = None
    known_lisc: int | None = None
    source: str = RWC

    def __post_init__(self):
        for v in (self.known_opt, self.known_lisc):
            if v is not None and v <= 0:
                raise ValueError(f"{self.name}: known values must be positive")

    def matches(self, g: Graph) -> bool:
        return g.n == self.n and g.m == self.m


_RWC_ROWS = (
    ("high-tech", 33, 91, 10, 5),
    ("karate", 34, 78, 6, 5),
    ("mexican", 35, 117, 13, 7),
    ("sawmill", 36, 62, 6, 5),
    ("tailorS1", 39, 158, 12, 7),
    ("chesapeake", 39, 170, 15, 5),
    ("tailorS2", 39, 223, 12, 5),
    ("attiro", 59, 128, 28, 9),
    ("krebs", 62, 153, 8, 7),
    ("dolphins", 62, 159, 20, 7),
    ("prison", 67, 142, 28, 9),
    ("huck", 69, 297, 5, 5),
    ("sanjuansur", 75, 144, 35, 11),
    ("jean", 77, 254, 7, 5),
    ("david", 87, 406, 15, 8),
    ("ieeebus", 118, 179, 32, 13),
    ("sfi", 118, 200, 3, 3),
    ("anna", 138, 493, 15, None),
    ("494bus", 494, 586, 116, None),
)


def catalog() -> tuple[InstanceRecord, ...]:
    return tuple(InstanceRecord(*row, source=RWC) for row in _RWC_ROWS)


def lookup(name: str) -> InstanceRecord | None:
    for rec in catalog():
        if rec.name == name:
            return rec
    return None


def write_results_csv(rows: Iterable[dict], extra: Sequence[str] = ()) -> str:
    """Rows as CSV with the fixed leading columns, then ``extra`` ones."""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(CSV_COLUMNS) + list(extra), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        r = dict(r)
        if isinstance(r.get("seconds"), float):
            r["seconds"] = f"{r['seconds']:.3f}"
        w.writerow(r)
    return buf.getvalue()
