"""Command-line front end: ``pinnacles <command> ...``.

Exit status is 0 on success, 1 when a verification check fails, 2 for
malformed input and 3 when a size guard is exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import __version__
from .admissible import (
    count_admissible,
    count_admissible_with_max,
    enumerate_admissible,
)
from .cache import CACHE_ENV_VAR, CountCache
from .counting import METHODS, count
from .lattice import (
    LatticePath,
    construction_trace,
    negative_regions,
    path_of_pinnacle_set,
    path_of_subset,
    pinnacle_set_of_path,
    subset_of_path,
    zigzag_permutation_of_path,
)
from .perm_core import Permutation, PinnacleSet, SizeLimitError, descent_set, format_set, peak_set, pinnacle_set
from .tables import (
    FORMATS,
    SCHEMA_VERSION,
    Table,
    admissible_count_rows,
    dmax_table,
    pinnacle_count_table,
    pinsets_table,
    plateau_table,
    render_csv,
    render_plain,
    table_json,
)
from .verify import DEFAULTS, SUITES, run_suites

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


@dataclass
class Output:
    """What a command hands back to the single writer in :func:`main`."""
    text: str
    table: Table
    results: Any
    status: int = EXIT_OK
    extra: dict = field(default_factory=dict)


class Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.cache = CountCache()
        self.cache_path = getattr(args, "cache_file", None) or os.environ.get(CACHE_ENV_VAR) or None
        if self.cache_path and os.path.exists(self.cache_path):
            self.cache.loads(open(self.cache_path).read())

    def save(self) -> None:
        if self.cache_path:
            self.cache.save(self.cache_path)


def _set_arg(text: str) -> PinnacleSet:
    return PinnacleSet.parse(text)


def _single(name: str, columns: list[str], row: list[Any]) -> Table:
    return Table(name, columns, [row])


# -- commands ---------------------------------------------------------------------------

def cmd_pinnacles(ctx: Context) -> Output:
    w = Permutation.parse(ctx.args.word)
    des, pk, pin = sorted(descent_set(w)), sorted(peak_set(w)), sorted(pinnacle_set(w))
    text = "\n".join([f"Des {format_set(des)}", f"Pk  {format_set(pk)}", f"Pin {format_set(pin)}"])
    results = {"word": list(w), "Des": des, "Pk": pk, "Pin": pin}
    return Output(text, _single("pinnacles", ["word", "Des", "Pk", "Pin"],
                                [str(w), set(des), set(pk), set(pin)]), results)


def cmd_admissible(ctx: Context) -> Output:
    args = ctx.args
    if args.action == "check":
        S = _set_arg(args.set)
        k = S.violation()
        if k is None:
            text = "admissible"
        else:
            text = f"inadmissible (s_{k} = {S.elements[k - 1]} ≤ {2 * k})"
        results = {"set": list(S.elements), "admissible": k is None, "violation": k}
        return Output(text, _single("check", ["set", "admissible", "violation"], [S, k is None, k]), results)
    if args.action == "list":
        sets = enumerate_admissible(args.m, args.d)
        table = Table("list", ["set"], [[S] for S in sets])
        return Output(" ".join(map(str, sets)), table, [list(S.elements) for S in sets])
    if args.action == "count":
        value = count_admissible_with_max(args.m) if args.d is None else count_admissible(args.m, args.d)
        d = "all" if args.d is None else args.d
        return Output(str(value), _single("count", ["m", "d", "count"], [args.m, d, value]),
                      {"m": args.m, "d": args.d, "count": value})
    table = admissible_count_rows(args.max_m)
    return Output(render_plain(table), table, table_json(table))


def cmd_count(ctx: Context) -> Output:
    args = ctx.args
    S = _set_arg(args.set)
    if args.n < 0:
        raise ValueError("n must be nonnegative")
    value = count(S, args.n, method=args.method, cache=ctx.cache, jobs=args.jobs)
    ctx.save()
    results = {"set": list(S.elements), "n": args.n, "method": args.method, "count": str(value)}
    return Output(str(value), _single("count", ["S", "n", "method", "count"], [S, args.n, args.method, value]),
                  results)


def _path_output(P: LatticePath, name: str, extra_cols: list[str], extra: list[Any], results: dict) -> Output:
    results = {"path": str(P), "steps": P.to_json(), "points": P.points(), **results}
    table = _single(name, ["path"] + extra_cols, [str(P)] + extra)
    return Output(str(P), table, results)


def cmd_bijection(ctx: Context) -> Output:
    args = ctx.args
    action = args.action
    if action == "set-to-path":
        S = _set_arg(args.value)
        trace = construction_trace(S)
        P = path_of_pinnacle_set(S)
        lines = [str(P), ""] + [f"{str(Si):<16} ({x},{y})" for Si, (x, y) in trace]
        table = Table("trace", ["S_i", "x", "y"], [[Si, x, y] for Si, (x, y) in trace])
        results = {"set": list(S.elements), "path": str(P), "steps": P.to_json(),
                   "trace": [{"S": list(Si.elements), "point": [x, y]} for Si, (x, y) in trace]}
        return Output("\n".join(lines), table, results)
    if action == "subset-to-path":
        S = _set_arg(args.value)
        if args.n is None:
            raise ValueError("subset-to-path needs --n")
        P = path_of_subset(S, args.n)
        return _path_output(P, "subset-path", ["set", "n"], [S, args.n], {"set": list(S.elements), "n": args.n})
    P = LatticePath.parse(args.value)
    if action == "path-to-set":
        S = pinnacle_set_of_path(P)
        results = {"path": str(P), "set": list(S.elements), "negative_regions": negative_regions(P)}
        return Output(str(S), _single("path-set", ["path", "set"], [str(P), S]), results)
    if action == "path-to-subset":
        S = subset_of_path(P)
        results = {"path": str(P), "n": P.x + 1, "set": list(S.elements)}
        return Output(str(S), _single("path-subset", ["path", "n", "set"], [str(P), P.x + 1, S]), results)
    w = zigzag_permutation_of_path(P)
    results = {"path": str(P), "permutation": list(w)}
    return Output(str(w), _single("path-perm", ["path", "permutation"], [str(P), str(w)]), results)


def cmd_tables(ctx: Context) -> Output:
    args = ctx.args
    name = args.table
    if name == "pinsets":
        table = pinsets_table(args.max_m or 9)
    elif name == "pmd":
        table = admissible_count_rows(args.max_m or 12)
    elif name == "pS7":
        table = pinnacle_count_table(args.n or 7, cache=ctx.cache)
        ctx.save()
    elif name == "dmax":
        table = dmax_table(args.start or 4, args.to or 22)
    else:
        table = plateau_table(args.to or 200)
    return Output(render_plain(table), table, table_json(table))


def cmd_verify(ctx: Context) -> Output:
    args = ctx.args
    checks = run_suites(args.suite, n_max=args.n_max, m_max=args.m_max, jobs=args.jobs, seed=args.seed)
    failed = [c for c in checks if not c.passed]
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    table = Table("verify", ["suite", "check", "passed", "witness"],
                  [[c.suite, c.name, c.passed, c.witness] for c in checks])
    results = {"passed": not failed, "checks": table.records()}
    return Output("\n".join(lines), table, results, EXIT_FAILED if failed else EXIT_OK)


# -- parser -----------------------------------------------------------------------------

def _common(suppress: bool) -> argparse.ArgumentParser:
    # accepted both before and after the subcommand
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=default("plain"), help="output format")
    p.add_argument("--jobs", type=int, default=default(1), help="worker processes for brute-force enumeration")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pinnacles", description="Pinnacle sets of permutations.",
                                     parents=[_common(False)])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common(True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pinnacles", parents=[common], help="descent, peak and pinnacle sets of a permutation")
    p.add_argument("word", help="e.g. 315264, or 10,1,2,... for n > 9")
    p.set_defaults(func=cmd_pinnacles)

    p = sub.add_parser("admissible", parents=[common], help="admissible pinnacle sets")
    acts = p.add_subparsers(dest="action", required=True)
    a = acts.add_parser("check", parents=[common])
    a.add_argument("set")
    a = acts.add_parser("list", parents=[common])
    a.add_argument("m", type=int)
    a.add_argument("d", type=int)
    a = acts.add_parser("count", parents=[common])
    a.add_argument("m", type=int)
    a.add_argument("d", type=int, nargs="?")
    a = acts.add_parser("table", parents=[common])
    a.add_argument("--max-m", type=int, default=12)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("count", parents=[common], help="p_S(n), the number of permutations of [n] with pinnacle set S")
    p.add_argument("set", help="{a,b,...} or a,b,...")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--cache-file", help=f"count cache snapshot (default: ${CACHE_ENV_VAR})")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bijection", parents=[common], help="lattice-path bijection")
    p.add_argument("action", choices=["set-to-path", "path-to-set", "path-to-perm",
                                      "subset-to-path", "path-to-subset"])
    p.add_argument("value", help="a set literal or a path (UDUD... or a JSON array of +1/-1)")
    p.add_argument("--n", type=int, help="ambient size for subset-to-path")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("tables", parents=[common], help="emit tabulated data")
    p.add_argument("table", choices=["pinsets", "pmd", "pS7", "dmax", "plateaus"])
    p.add_argument("--max-m", type=int)
    p.add_argument("--n", type=int, help="ambient size for pS7")
    p.add_argument("--start", type=int, help="first n for dmax")
    p.add_argument("--to", type=int, help="last n for dmax and plateaus")
    p.add_argument("--cache-file", help=f"count cache snapshot (default: ${CACHE_ENV_VAR})")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", parents=[common], help="run the self-check suites")
    p.add_argument("--suite", action="append", choices=list(SUITES), help="repeatable; default all")
    p.add_argument("--n-max", type=int, default=DEFAULTS["n_max"])
    p.add_argument("--m-max", type=int, default=DEFAULTS["m_max"])
    p.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    p.set_defaults(func=cmd_verify)
    return parser


def _render(out: Output, args: argparse.Namespace, argv: list[str], elapsed: float, cache: CountCache) -> str:
    if args.format == "csv":
        return render_csv(out.table)
    if args.format == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": argv,
            "elapsed_seconds": round(elapsed, 6),
            "cache": cache.stats(),
            "results": out.results,
        }
        return json.dumps(report, indent=2)
    return out.text


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    func: Callable[[Context], Output] = args.func
    start = time.perf_counter()
    try:
        if args.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        ctx = Context(args)
        out = func(ctx)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(_render(out, args, argv, time.perf_counter() - start, ctx.cache))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
