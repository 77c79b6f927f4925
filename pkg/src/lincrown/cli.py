"""Command line entry point: ``lincrown <command> ...``.

Tables go to standard output as CSV, diagnostics to standard error. Every
failure prints one line ``error: <kind>: <message>`` on standard error and
exits with the code listed in ``EXIT_CODES``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, crown, generators, search
from .hypergraph import GraphFormatError, HypergraphError, read_graph, serialize_graph, write_graph

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NOT_APPLICABLE = 4
EXIT_BUDGET = 5

EXIT_CODES = {
    "usage": EXIT_USAGE,
    "input": EXIT_INPUT,
    "not-applicable": EXIT_NOT_APPLICABLE,
    "budget": EXIT_BUDGET,
}


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _edge_str(e) -> str:
    return " ".join(map(str, e))


def _load(path: str):
    try:
        return read_graph(path)
    except OSError as exc:
        raise CliError("input", f"{path}: {exc.strerror or exc}") from None
    except GraphFormatError as exc:
        raise CliError("input", f"{path}: {exc}") from None


def _check_k(g, k: int) -> None:
    if not 1 <= k <= g.r:
        raise CliError("usage", f"--k must satisfy 1 <= k <= r={g.r}, got {k}")


def cmd_check(args, out) -> int:
    g = _load(args.file)
    _check_k(g, args.k)
    emb = crown.find_crown(g, args.k)
    if emb is None:
        out.write(f"crown_free=yes\nk={args.k}\n")
        return EXIT_OK
    out.write(f"crown_free=no\nk={args.k}\n")
    out.write(f"base={_edge_str(emb.base)}\n")
    out.write(f"attachments={_edge_str(emb.attachments)}\n")
    for i, sp in enumerate(emb.spokes, start=1):
        out.write(f"spoke{i}={_edge_str(sp)}\n")
    return EXIT_FOUND


def cmd_kmap(args, out) -> int:
    g = _load(args.file)
    ks = crown.k_map(g)
    out.write("edge,vertices,k,weight\n")
    total = Fraction(0)
    for idx, (e, t) in enumerate(zip(g.edges, ks)):
        w = Fraction(1, t * (g.r - 1) + 1)
        total += w
        out.write(f"{idx},{_edge_str(e)},{t},{bounds.format_rational(w)}\n")
    out.write(f"sum,,,{bounds.format_rational(total)}\n")
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    try:
        rep = bounds.bound_report(args.n, args.r, args.k, args.s)
    except HypergraphError as exc:
        raise CliError("usage", str(exc)) from None
    out.write(bounds.BOUND_CSV_HEADER + "\n")
    out.write(rep.csv_row() + "\n")
    return EXIT_OK


def cmd_weighted(args, out) -> int:
    g = _load(args.file)
    _check_k(g, args.k)
    try:
        res = bounds.weighted_check(g, args.k)
    except bounds.NotApplicableError as exc:
        w = exc.witness
        detail = f" (base {_edge_str(w.base)})" if w is not None else ""
        raise CliError("not-applicable", f"{exc}{detail}") from None
    except HypergraphError as exc:
        raise CliError("not-applicable", str(exc)) from None
    out.write(f"lhs={bounds.format_rational(res.lhs)}\n")
    out.write(f"rhs={bounds.format_rational(res.rhs)}\n")
    out.write(f"holds={'true' if res.holds else 'false'}\n")
    return EXIT_OK if res.holds else EXIT_FOUND


_GEN_PARAMS = {
    "matching": ("m", "r"),
    "star": ("d", "r"),
    "crown": ("r", "k"),
    "cstar": ("r",),
    "random_linear": ("n", "r", "m", "seed"),
    "greedy_crown_free": ("n", "r", "k", "seed"),
}


def cmd_gen(args, out) -> int:
    needed = _GEN_PARAMS[args.kind]
    params = {}
    for name in needed:
        value = getattr(args, name)
        if value is None:
            raise CliError("usage", f"--kind {args.kind} requires --{name}")
        params[name] = value
    spec = generators.GeneratorSpec(args.kind, params)
    try:
        g = generators.generate(spec)
    except HypergraphError as exc:
        raise CliError("usage", str(exc)) from None
    if args.output:
        write_graph(g, args.output, [spec.header()])
    else:
        out.write(serialize_graph(g, [spec.header()]))
    return EXIT_OK


def _options(args) -> search.SearchOptions:
    if args.jobs < 1:
        raise CliError("usage", f"--jobs must be >= 1, got {args.jobs}")
    if args.budget < 1:
        raise CliError("usage", f"--budget must be >= 1, got {args.budget}")
    return search.SearchOptions(jobs=args.jobs, node_budget=args.budget)


def cmd_search(args, out) -> int:
    try:
        forbidden = search.Forbidden.parse(args.forbid)
    except HypergraphError as exc:
        raise CliError("usage", str(exc)) from None
    opts = _options(args)
    path = args.output or f"witness_n{args.n}_r{args.r}_{str(forbidden).replace(':', '')}.hg"
    code = EXIT_OK
    try:
        res = search.max_edges(args.n, args.r, forbidden, opts)
    except HypergraphError as exc:
        raise CliError("usage", str(exc)) from None
    except search.SearchBudgetExceeded as exc:
        res = exc.partial
        code = EXIT_BUDGET
    header = f"search n={res.n} r={res.r} forbid={res.forbidden} max_edges={res.max_edges}"
    write_graph(res.witness, path, [header])
    out.write(res.summary())
    out.write(f"witness={path}\n")
    print(f"wall_time={res.wall_time:.3f}s", file=sys.stderr)
    if code == EXIT_BUDGET:
        raise CliError("budget", f"node budget {args.budget} exhausted; best {res.max_edges} edges unproven")
    return code


def cmd_table(args, out) -> int:
    opts = _options(args)
    if args.n_from > args.n_to:
        raise CliError("usage", "--n-from must not exceed --n-to")
    if not 1 <= args.k <= args.r:
        raise CliError("usage", f"--k must satisfy 1 <= k <= r={args.r}, got {args.k}")
    out.write(search.TABLE_CSV_HEADER + "\n")
    partial = False
    for n in range(args.n_from, args.n_to + 1):
        try:
            row = search.table_row(n, args.r, args.k, opts)
        except HypergraphError as exc:
            raise CliError("usage", str(exc)) from None
        out.write(row.csv_row() + "\n")
        out.flush()
        partial = partial or row.status == "partial"
        if args.witness_dir and row.witness is not None:
            d = Path(args.witness_dir)
            d.mkdir(parents=True, exist_ok=True)
            write_graph(row.witness, d / f"n{n}_r{args.r}_k{args.k}.hg",
                        [f"table n={n} r={args.r} k={args.k} exact={row.exact} status={row.status}"])
    if partial:
        raise CliError("budget", "node budget exhausted for at least one row")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lincrown", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="decide whether a graph file contains a k-crown")
    c.add_argument("file")
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("kmap", help="per-edge crown capacity k(e) and weighted sum")
    c.add_argument("file")
    c.set_defaults(func=cmd_kmap)

    c = sub.add_parser("bounds", help="evaluate all applicable bounds")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--s", type=int, default=0)
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("weighted", help="weighted refinement check on a crown-free graph")
    c.add_argument("file")
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_weighted)

    c = sub.add_parser("gen", help="write a generated graph")
    c.add_argument("--kind", choices=generators.KINDS, required=True)
    for name in ("n", "r", "k", "m", "d", "seed"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_gen)

    for name, func, text in (("search", cmd_search, "exact extremal number"),
                             ("table", cmd_table, "bracketing table as CSV")):
        c = sub.add_parser(name, help=text)
        if name == "search":
            c.add_argument("--n", type=int, required=True)
            c.add_argument("--forbid", required=True, help="crown:K, p2 or p3")
            c.add_argument("-o", "--output", help="witness file path")
        else:
            c.add_argument("--k", type=int, required=True)
            c.add_argument("--n-from", type=int, required=True)
            c.add_argument("--n-to", type=int, required=True)
            c.add_argument("--witness-dir")
        c.add_argument("--r", type=int, required=True)
        c.add_argument("--jobs", type=int, default=1)
        c.add_argument("--budget", type=int, default=search.DEFAULT_BUDGET)
        c.set_defaults(func=func)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.basicConfig(level=logging.INFO, stream=err, format="%(name)s: %(message)s")
        return args.func(args, out)
    except CliError as exc:
        err.write(f"error: {exc.kind}: {exc}\n")
        return EXIT_CODES[exc.kind]
    except OSError as exc:
        err.write(f"error: input: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
