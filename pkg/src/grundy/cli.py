"""``grundy`` command line: exact | greedy | props | gen | cobip | verify."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Iterator

from . import harness
from .cobipartite import (NotBipartite, NotBipartiteError, bipartition, check_alpha_leq_delta,
                          maximum_matching, min_edge_dominating)
from .coloring import SolverTimeout, exact_grundy, greedy_color
from .detect import has_induced_c4, is_2k2_free, is_chordal, simplicial_vertices
from .generators import FAMILIES, GenSpec, bipartite_masks, graph_from_mask
from .graph import (Graph, GraphFormatError, chromatic_number_exact, clique_number, coloring_number,
                    degrees, from_edge_list, from_graph6, girth, has_triangle, read_graph6_lines, rho,
                    to_graph6)

EXIT_USAGE = harness.EXIT_USAGE
CHI_EXACT_MAX = 16


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    """Serializable description of one invocation, echoed into the JSON summary."""

    subcommand: str
    source: dict
    max_n: int
    timeout_ms: int | None
    workers: int
    workers_from: str
    outputs: dict = field(default_factory=dict)
    seed: int = 0
    options: dict = field(default_factory=dict)


# -- argument parsing ------------------------------------------------------------------

def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("graph input")
    src.add_argument("--g6", action="append", help="graph6 string (repeatable)")
    src.add_argument("--g6-file", help="file of graph6 lines, '-' for stdin")
    src.add_argument("--edges-file", help="edge list: optional first line n, then 'u v' per line")
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--k", type=int)
    src.add_argument("--n", type=int)
    src.add_argument("--a", type=int)
    src.add_argument("--b", type=int)
    src.add_argument("--q", type=int)
    src.add_argument("--p", type=float)
    src.add_argument("--seed", type=int, default=0)
    src.add_argument("--samples", type=int, default=1)
    src.add_argument("--all-labeled", type=int, metavar="N", help="every labeled graph on 1..N vertices")
    src.add_argument("--all-bipartite", type=int, metavar="N", help="every labeled bipartite graph on 1..N vertices")


def _add_solver(p: argparse.ArgumentParser) -> None:
    p.add_argument("--timeout-ms", type=int, help="per-graph solver time limit")
    p.add_argument("--engine", choices=("auto", "witness", "subsets"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="grundy", description="Grundy (First-Fit) chromatic number toolkit")
    top.add_argument("--config", help="key=value file of defaults; flags win")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", help="exact Grundy number with a witness colouring")
    _add_source(p)
    _add_solver(p)

    p = sub.add_parser("greedy", help="First-Fit colouring along an order")
    _add_source(p)
    p.add_argument("--order", help="comma-separated vertex order (default 0..n-1)")

    p = sub.add_parser("props", help="degrees, girth, structural flags, omega, col, chi")
    _add_source(p)

    p = sub.add_parser("gen", help="emit graph6 lines")
    _add_source(p)

    p = sub.add_parser("cobip", help="edge domination and Grundy number of the complement")
    _add_source(p)

    p = sub.add_parser("verify", help="check a lower bound over a graph stream")
    p.add_argument("bound", help="one of: " + ", ".join(harness.BOUNDS))
    _add_source(p)
    _add_solver(p)
    p.add_argument("--m", type=int, default=2, help="K_{2,m} parameter for the log bound")
    p.add_argument("--ell", type=int, default=2, help="K_{l,l} parameter for the probe")
    p.add_argument("--delta-min", type=int, default=1)
    p.add_argument("--delta-max", type=int, default=4)
    p.add_argument("--exact-sample", type=int, default=0,
                   help="chordal: also run the exact solver on the first N rows")
    p.add_argument("--workers", type=int, help="process count (default $GRUNDY_WORKERS or 1)")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.add_argument("--dump-g6")
    p.add_argument("--with-runtime", action="store_true", help="add a runtime_us column to the CSV")
    return top


def _read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"config line without '=': {raw.strip()!r}")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        values = _read_config(args.config)
    except OSError as e:
        raise UsageError(f"cannot read config: {e}")
    sub = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, raw in values.items():
        if key not in actions:
            raise UsageError(f"unknown config key {key!r} for {args.command}")
        act = actions[key]
        if isinstance(act, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif isinstance(act, argparse._AppendAction):
            defaults[key] = [raw]
        else:
            defaults[key] = act.type(raw) if act.type else raw
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


# -- graph sources ---------------------------------------------------------------------

def _source_desc(args) -> dict:
    keys = ("g6", "g6_file", "edges_file", "family", "k", "n", "a", "b", "q", "p", "seed", "samples",
            "all_labeled", "all_bipartite")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def iter_source(args, c4_free_only: bool = False) -> Iterator[tuple[str, Graph]]:
    chosen = [x for x in ("g6", "g6_file", "edges_file", "family", "all_labeled", "all_bipartite")
              if getattr(args, x) is not None]
    if len(chosen) > 1:
        raise UsageError("choose one graph input: " + ", ".join("--" + c.replace("_", "-") for c in chosen))
    try:
        if args.g6 is not None:
            for i, text in enumerate(args.g6):
                yield f"g6:{i}", from_graph6(text)
        elif args.edges_file is not None:
            with open(args.edges_file) as fh:
                yield args.edges_file, from_edge_list(fh.read())
        elif args.family is not None:
            spec = GenSpec(args.family, k=args.k, n=args.n, a=args.a, b=args.b, q=args.q, p=args.p,
                           seed=args.seed, samples=args.samples)
            for i, g in enumerate(spec.stream()):
                yield f"{args.family}:{i}", g
        elif args.all_labeled is not None:
            if not 1 <= args.all_labeled <= 7:
                raise UsageError("--all-labeled supports 1..7")
            yield from harness.labeled_items(args.all_labeled, c4_free_only)
        elif args.all_bipartite is not None:
            if not 1 <= args.all_bipartite <= 8:
                raise UsageError("--all-bipartite supports 1..8")
            for n in range(1, args.all_bipartite + 1):
                for mask in bipartite_masks(n):
                    yield f"n{n}:{int(mask)}", graph_from_mask(n, int(mask))
        else:
            name = args.g6_file if args.g6_file is not None else "-"
            fh = sys.stdin if name == "-" else open(name)
            try:
                for i, g in enumerate(read_graph6_lines(fh)):
                    yield f"line{i + 1}", g
            finally:
                if fh is not sys.stdin:
                    fh.close()
    except (GraphFormatError, OSError) as e:
        raise UsageError(str(e))
    except ValueError as e:
        raise UsageError(str(e))


# -- subcommands -------------------------------------------------------------------------

def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def props_line(g: Graph) -> str:
    _, lo, hi = degrees(g)
    gi = girth(g)
    parts = [
        f"n={g.n}", f"m={g.m}", f"delta={lo}", f"Delta={hi}",
        f"girth={'inf' if gi is None else gi}",
        f"c4free={_yn(not has_induced_c4(g))}",
        f"chordal={_yn(bool(is_chordal(g)))}",
        f"triangle_free={_yn(not has_triangle(g))}",
        f"omega={clique_number(g)}",
        f"col={coloring_number(g)}",
        f"chi={chromatic_number_exact(g) if g.n <= CHI_EXACT_MAX else 'NA'}",
        f"bipartite={_yn(not isinstance(bipartition(g), NotBipartite))}",
        f"2k2free={_yn(is_2k2_free(g))}",
        f"simplicial={bin(simplicial_vertices(g)).count('1')}",
    ]
    if g.n:
        parts.append(f"rho={rho(g)}")
    return " ".join(parts)


def cmd_exact(args) -> int:
    timeout = None if args.timeout_ms is None else args.timeout_ms / 1000
    code = 0
    for gid, g in iter_source(args):
        try:
            res = exact_grundy(g, timeout, args.engine)
        except SolverTimeout as e:
            print(f"# {gid}")
            print(f"chi_ff >= {e.lower}")
            print(f"chi_ff <= {e.upper}")
            print("status = timeout")
            code = harness.EXIT_INCONCLUSIVE
            continue
        except ValueError as e:
            raise UsageError(str(e))
        print(f"# {gid}")
        print(f"chi_ff = {res.value}")
        print(f"status = {res.status}")
        print(f"engine = {res.engine}")
        sys.stdout.write(res.witness.to_csv())
    return code


def cmd_greedy(args) -> int:
    for gid, g in iter_source(args):
        order = list(range(g.n))
        if args.order:
            try:
                order = [int(tok) for tok in args.order.split(",")]
                c = greedy_color(g, order)
            except ValueError as e:
                raise UsageError(str(e))
        else:
            c = greedy_color(g, order)
        print(f"# {gid}")
        print(f"colors = {c.k}")
        sys.stdout.write(c.to_csv())
    return 0


def cmd_props(args) -> int:
    for gid, g in iter_source(args):
        print(f"{gid} {props_line(g)}")
    return 0


def cmd_gen(args) -> int:
    for _, g in iter_source(args):
        print(to_graph6(g))
    return 0


def cmd_cobip(args) -> int:
    for gid, h in iter_source(args):
        try:
            mm = maximum_matching(h)
            dom = min_edge_dominating(h)
        except NotBipartiteError as e:
            raise UsageError(f"{gid}: {e}")
        except ValueError as e:
            raise UsageError(f"{gid}: {e}")
        verdict = check_alpha_leq_delta(h)
        print(f"# {gid}")
        print(f"alpha_prime = {mm.size}")
        print(f"gamma_prime = {dom.size}")
        print(f"chi_ff_complement = {h.n - dom.size}")
        print(f"max_degree = {verdict.max_degree} 2k2free={_yn(verdict.is_2k2_free)} "
              f"alpha_le_delta={_yn(verdict.holds)}")
        sys.stdout.write(dom.to_edge_lines())
    return 0


def _workers(args) -> tuple[int, str]:
    if args.workers is not None:
        return args.workers, "flag"
    env = os.environ.get("GRUNDY_WORKERS")
    if env:
        try:
            return int(env), "env"
        except ValueError:
            raise UsageError(f"GRUNDY_WORKERS must be an integer, got {env!r}")
    return 1, "default"


def cmd_verify(args) -> int:
    if args.bound not in harness.BOUNDS:
        raise UsageError(f"unknown bound {args.bound!r}; choose from {', '.join(harness.BOUNDS)}")
    workers, origin = _workers(args)
    if workers < 1:
        raise UsageError("--workers must be positive")
    if args.bound == "log" and args.m < 2:
        raise UsageError("--m must be at least 2")
    run = RunConfig(
        subcommand=f"verify {args.bound}", source=_source_desc(args), max_n=40, timeout_ms=args.timeout_ms,
        workers=workers, workers_from=origin,
        outputs={"csv": args.csv, "json": args.json, "dump_g6": args.dump_g6}, seed=args.seed,
        options={"m": args.m, "ell": args.ell, "delta_min": args.delta_min, "delta_max": args.delta_max,
                 "exact_sample": args.exact_sample, "engine": args.engine, "with_runtime": args.with_runtime},
    )
    cfg = harness.VerifyConfig(bound=args.bound, m=args.m, timeout_ms=args.timeout_ms, workers=workers,
                               exact_sample=args.exact_sample, with_runtime=args.with_runtime,
                               dump_g6=args.dump_g6)
    if args.bound == "probe":
        if not 1 <= args.ell <= 3:
            raise UsageError("--ell must be 1, 2 or 3")
        items = harness.probe_items(args.ell, args.delta_min, args.delta_max, args.samples, args.seed)
    else:
        # the source is validated before any work starts so bad input exits 3
        items = _prime(iter_source(args, c4_free_only=args.bound == "conjecture"))
    try:
        report = harness.run_check(items, cfg)
    except UsageError:
        raise
    except Exception as e:  # still leave a summary behind
        _write_json(args.json, {"status": "ERROR", "error": f"{type(e).__name__}: {e}", "config": asdict(run)})
        raise
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv(args.with_runtime))
    summary = report.summary(asdict(run))
    _write_json(args.json, summary)
    print(f"status={summary['status']} checked={report.checked} passed={report.passed} failed={report.failed} "
          f"inconclusive={report.inconclusive} skipped={report.skipped}")
    for d, b in report.by_delta().items():
        print(f"  delta={d} checked={b['checked']} holds={b['holds']} min_chi_ff={b['min_chi_ff']}")
    return report.exit_code


def _prime(it: Iterator) -> Iterator:
    """Pull the first item now so source errors surface before the run starts."""
    try:
        first = next(it)
    except StopIteration:
        return iter(())

    def chain():
        yield first
        yield from it

    return chain()


def _write_json(path: str | None, data: dict) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


COMMANDS = {"exact": cmd_exact, "greedy": cmd_greedy, "props": cmd_props, "gen": cmd_gen,
            "cobip": cmd_cobip, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _apply_config(parser, argv)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"grundy: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
