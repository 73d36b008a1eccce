"""Command-line front end: solve, bench, oracle, isometric, gen.

Exit codes: 0 success, 1 input error (missing or malformed file, size
guard), 2 usage error, 3 time or node limit reached.
"""
from __future__ import annotations

import argparse
import logging
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import instances
from .formulations import KINDS, CycleResult
from .graph import Graph, GraphError, is_connected
from .instances import CSV_COLUMNS, ParseError, catalog, find_instance, gen_random, load_instance, lookup
from .oracle import OracleSizeError, brute_force_longest_induced_cycle
from .separation import BASIC, STRENGTHENED
from .solver import STRATEGIES, UsageError, check_combination, solve

EXIT_OK, EXIT_INPUT, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

LABELS = {
    ("lic", "direct"): "LIC",
    ("lic2", "direct"): "LIC2",
    ("ilpcut", "soft"): "ILPcut",
    ("ilpcut", "tough"): "ILPcut2",
    ("cec", "soft"): "cec",
    ("cec", "tough"): "cec2",
    ("ccp", "soft"): "ccp",
    ("ccp", "tough"): "ccp2",
}
TABLE_CONFIGS = ("lic:direct", "lic2:direct", "ilpcut:soft", "ilpcut:tough", "cec:soft", "cec:tough")
MG_BUCKETS = ((1, 49), (50, 74), (75, 99), (100, 124), (125, 149), (150, 199), (200, None))
EXTRA_COLUMNS = ("n", "m", "connected", "warm_bound", "warm_seconds", "known_opt", "match")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _warm(value: str) -> str | int:
    if value in ("none", "lisc", "heuristic"):
        return value
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected none, lisc, heuristic or an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("warm-start bound must be nonnegative")
    return v


def _random_arg(value: str) -> tuple[int, float]:
    try:
        n, d = value.split(":")
        return int(n), float(d)
    except ValueError:
        raise argparse.ArgumentTypeError("expected N:DENSITY, e.g. 30:0.2") from None


def _configs(value: str) -> list[tuple[str, str]]:
    out = []
    for item in value.split(","):
        model, _, strategy = item.strip().partition(":")
        if model not in KINDS or strategy not in STRATEGIES:
            raise argparse.ArgumentTypeError(f"bad configuration {item!r} (want model:strategy)")
        out.append((model, strategy))
    return out


def _load(args) -> tuple[str, Graph]:
    if args.random is not None:
        n, d = args.random
        return f"random_n{n}_d{d}_s{args.seed}", gen_random(n, d, args.seed)
    if args.instance is None:
        raise UsageError("give an instance path or name, or --random N:DENSITY")
    g = load_instance(args.instance)
    return Path(args.instance).stem, g


def _row(name: str, g: Graph, r: CycleResult, known: int | None = None, omit_times: bool = False) -> dict:
    return {
        "instance": name,
        "model": r.model,
        "strategy": r.strategy,
        "warm_start": r.warm_start if r.warm_start != "value" else str(r.warm_bound),
        "length": r.length,
        "status": r.status,
        "nodes": r.nodes,
        "cuts": r.cuts,
        "seconds": "" if omit_times else round(r.seconds, 3),
        "n": g.n,
        "m": g.m,
        "connected": int(is_connected(g)),
        "warm_bound": r.warm_bound,
        "warm_seconds": "" if omit_times else round(r.warm_seconds, 3),
        "known_opt": "" if known is None else known,
        "match": "" if known is None else int(known == r.length),
    }


def cmd_solve(args) -> int:
    check_combination(args.model, args.strategy)
    name, g = _load(args)
    if args.write_lp:
        from .engine.lpformat import to_lp
        from .formulations import build

        Path(args.write_lp).write_text(to_lp(build(args.model, g).model))
    r = solve(
        g,
        args.model,
        args.strategy,
        warm_start=args.warm_start,
        min_length=args.min_length,
        clique_cuts=args.clique_cuts,
        ccp_cut=args.ccp_cut,
        time_limit=args.time_limit,
        verbose=args.verbose,
    )
    limited = r.status in ("time_limit", "node_limit")
    if args.output == "csv":
        rec = lookup(name)
        sys.stdout.write(
            instances.write_results_csv([_row(name, g, r, rec.known_opt if rec else None, args.omit_times)], EXTRA_COLUMNS)
        )
    else:
        print(f"instance  {name} (n={g.n}, m={g.m})")
        print(f"length    {r.length}")
        print(f"cycle     {' '.join(map(str, r.cycle)) if r.cycle else '-'}")
        if len(r.cycles) > 1:
            print(f"optima    {len(r.cycles)}")
            for c in r.cycles:
                print(f"          {' '.join(map(str, c))}")
        proven = r.status == "cutoff_exhausted" and r.strategy == "tough" and r.length
        print(f"status    {r.status}" + (" (record proven optimal)" if proven else ""))
        if limited and r.best_bound is not None:
            print(f"bound     {r.best_bound:g}")
        print(f"nodes     {r.nodes}")
        print(f"cuts      {r.cuts}")
        print(f"time      {r.seconds:.3f}s")
        if r.warm_start != "none":
            print(f"warm      {r.warm_start}={r.warm_bound} ({r.warm_seconds:.3f}s)")
    return EXIT_LIMIT if limited else EXIT_OK


# -- bench ---------------------------------------------------------------


def _bench_job(job: tuple) -> dict:
    name, g, model, strategy, warm, time_limit, known, omit = job
    if g is None:
        return {"instance": name, "model": model, "strategy": strategy, "warm_start": str(warm), "status": "skipped"}
    try:
        r = solve(g, model, strategy, warm_start=warm, time_limit=time_limit)
    except GraphError as exc:
        # e.g. the hole model on a graph with fewer than four vertices
        return {"instance": name, "model": model, "strategy": strategy, "warm_start": str(warm), "status": f"error: {exc}"}
    return _row(name, g, r, known, omit)


def _suite(args) -> list[tuple[str, Graph | None, int | None, dict]]:
    """(name, graph or None when absent, known optimum, grouping keys)."""
    out = []
    if args.suite == "random":
        for n in args.n:
            for d in args.density:
                for s in range(args.seeds):
                    seed = args.seed + s
                    out.append((f"random_n{n}_d{d}_s{seed}", gen_random(n, d, seed), None, {"n": n, "density": d}))
    elif args.suite == "rwc":
        recs = catalog() if not args.names else [lookup(x) or instances.InstanceRecord(x, 0, 0) for x in args.names]
        for rec in recs:
            p = find_instance(rec.name, args.data_dir)
            g = instances.read_graph(p) if p else None
            out.append((rec.name, g, rec.known_opt, {"opt": rec.known_opt, "lisc": rec.known_lisc}))
    else:
        root = Path(args.data_dir or instances.data_dir() or ".")
        for p in sorted(root.iterdir()) if root.is_dir() else []:
            if p.is_file():
                g = instances.read_graph(p)
                out.append((p.stem, g, None, {"m": g.m}))
    return out


def _fmt(values: list[float], total: int) -> str:
    if not values:
        return "skip"
    mean = f"{statistics.fmean(values):.2f}"
    return mean if len(values) == total else f"{mean} ({len(values)}/{total})"


def _label(model: str, strategy: str) -> str:
    return LABELS.get((model, strategy), f"{model}-{strategy}")


def _times(rows: list[dict], names: set[str], model: str, strategy: str, warm: str) -> list[float]:
    return [
        float(r["seconds"])
        for r in rows
        if r["instance"] in names
        and (r["model"], r["strategy"], r["warm_start"]) == (model, strategy, warm)
        and r["status"] in ("optimal", "cutoff_exhausted")
        and r.get("seconds") not in ("", None)
    ]


def rwc_table(rows: list[dict], suite, configs, warms) -> str:
    head = ["graph", "opt", "LISC", "N", "M"] + [_label(*c) for c in configs]
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for name, g, known, keys in suite:
        for t, warm in enumerate(warms):
            cells = [name, keys["opt"] or "-", keys["lisc"] or "-", g.n if g else "-", g.m if g else "-"] if t == 0 else [""] * 5
            for c in configs:
                hit = [r for r in rows if r["instance"] == name and (r["model"], r["strategy"], r["warm_start"]) == (*c, warm)]
                if not hit or hit[0]["status"] == "skipped":
                    cells.append("skipped")
                elif hit[0]["status"] not in ("optimal", "cutoff_exhausted"):
                    cells.append(hit[0]["status"])
                else:
                    mark = "" if hit[0].get("match") in ("", 1, None) else " MISMATCH"
                    cells.append(f"{float(hit[0]['seconds']):.2f}{mark}" if hit[0]["seconds"] != "" else f"ok{mark}")
            lines.append("| " + " | ".join(map(str, cells)) + " |")
    return "\n".join(lines) + "\n"


def mg_table(rows: list[dict], suite, configs, warm) -> str:
    head = ["nr. of edges", "nr. of instances"] + [_label(*c) for c in configs]
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for lo, hi in MG_BUCKETS:
        names = {s[0] for s in suite if s[1] is not None and s[1].m >= lo and (hi is None or s[1].m <= hi)}
        if not names:
            continue
        label = f"{lo}-{hi}" if hi is not None else f"{lo}+"
        cells = [label, len(names)] + [_fmt(_times(rows, names, *c, warm), len(names)) for c in configs]
        lines.append("| " + " | ".join(map(str, cells)) + " |")
    return "\n".join(lines) + "\n"


def random_table(rows: list[dict], suite, configs, warm) -> str:
    out = []
    for d in sorted({s[3]["density"] for s in suite}):
        head = ["n"] + [_label(*c) for c in configs]
        out.append(f"Random graphs, {d:.0%} density\n")
        out += ["| " + " | ".join(head) + " |\n", "|" + "---|" * len(head) + "\n"]
        for n in sorted({s[3]["n"] for s in suite}):
            names = {s[0] for s in suite if s[3] == {"n": n, "density": d}}
            cells = [n] + [_fmt(_times(rows, names, *c, warm), len(names)) for c in configs]
            out.append("| " + " | ".join(map(str, cells)) + " |\n")
        out.append("\n")
    return "".join(out)


def cmd_bench(args) -> int:
    configs = args.configs or _configs("cec:tough" if args.suite == "random" else ",".join(TABLE_CONFIGS))
    for m, s in configs:
        check_combination(m, s)
    warms = args.warm_start or ([4] if args.suite == "random" else ["none", "lisc"])
    suite = _suite(args)
    jobs = [
        (name, g, m, s, w, args.time_limit, known, args.omit_times)
        for name, g, known, _ in suite
        for w in warms
        for m, s in configs
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_bench_job, jobs))
    else:
        rows = [_bench_job(j) for j in jobs]
    text = instances.write_results_csv(rows, EXTRA_COLUMNS)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    warm_names = [str(w) for w in warms]
    if args.suite == "rwc":
        table = rwc_table(rows, suite, configs, warm_names)
    elif args.suite == "mg":
        table = mg_table(rows, suite, configs, warm_names[0])
    else:
        table = random_table(rows, suite, configs, warm_names[0])
    if args.table:
        Path(args.table).write_text(table)
    else:
        sys.stderr.write(table)
    bad = [r for r in rows if r.get("match") == 0]
    for r in bad:
        sys.stderr.write(f"MISMATCH {r['instance']} {r['model']}-{r['strategy']}: {r['length']} vs {r['known_opt']}\n")
    return EXIT_OK


# -- thin wrappers --------------------------------------------------------


def cmd_oracle(args) -> int:
    name, g = _load(args)
    length, cycles = brute_force_longest_induced_cycle(g, args.limit)
    print(length)
    for c in cycles if args.all else cycles[:1]:
        print(" ".join(map(str, c)))
    return EXIT_OK


def cmd_isometric(args) -> int:
    from .isometric import longest_isometric_cycle

    name, g = _load(args)
    k, w = longest_isometric_cycle(g, fast=args.fast, with_witness=True, method=args.method)
    print(k)
    if args.witness and w:
        print("witness " + " ".join(map(str, w)))
    return EXIT_OK


def cmd_gen(args) -> int:
    g = gen_random(args.n, args.density, args.seed)
    text = instances.write_dimacs(g) if args.format == "dimacs" else instances.write_edge_list(g)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance", nargs="?", help="edge-list or DIMACS file, or a name under $CHORDLESS_DATA_DIR")
    p.add_argument("--random", type=_random_arg, metavar="N:DENSITY", help="use a seeded random graph instead")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="chordless", description="Longest induced (chordless) cycle solvers.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one instance")
    _add_source(p)
    p.add_argument("--model", choices=KINDS, default="cec")
    p.add_argument("--strategy", choices=STRATEGIES, default="tough")
    p.add_argument("--warm-start", type=_warm, default="none", metavar="{none,lisc,heuristic,INT}")
    p.add_argument("--min-length", type=int)
    p.add_argument("--time-limit", type=float, default=3600.0)
    p.add_argument("--clique-cuts", action="store_true", help="static clique rows (ccp only)")
    p.add_argument("--ccp-cut", choices=(BASIC, STRENGTHENED), default=BASIC)
    p.add_argument("--output", choices=("text", "csv"), default="text")
    p.add_argument("--omit-times", action="store_true", help="leave timing columns empty (reproducible CSV)")
    p.add_argument("--write-lp", metavar="FILE", help="also write the model in LP format")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run a suite and print CSV plus a summary table")
    p.add_argument("--suite", choices=("random", "rwc", "mg"), default="random")
    p.add_argument("--configs", type=_configs, help="comma list of model:strategy")
    p.add_argument("--warm-start", type=_warm, action="append", help="repeatable; default 4 (random) or none+lisc")
    p.add_argument("--n", type=int, nargs="+", default=[50])
    p.add_argument("--density", type=float, nargs="+", default=[0.1])
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0, help="first seed of the random suite")
    p.add_argument("--names", nargs="+", help="RWC instance names (default: whole catalog)")
    p.add_argument("--data-dir", help="instance directory (default $CHORDLESS_DATA_DIR)")
    p.add_argument("--time-limit", type=float, default=3600.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", metavar="FILE")
    p.add_argument("--table", metavar="FILE", help="markdown table (default: stderr)")
    p.add_argument("--omit-times", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="brute-force longest induced cycle")
    _add_source(p)
    p.add_argument("--limit", type=int, default=16, help="largest n accepted")
    p.add_argument("--all", action="store_true", help="list every optimal cycle")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("isometric", help="longest isometric cycle")
    _add_source(p)
    p.add_argument("--fast", action="store_true", help="scan lengths downward")
    p.add_argument("--method", choices=("exact", "literal"), default="exact")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_isometric)

    p = sub.add_parser("gen", help="write a seeded random graph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-d", "--density", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("edges", "dimacs"), default="edges")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"chordless: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, ParseError, GraphError, OracleSizeError, ValueError) as exc:
        print(f"chordless: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
