"""Bound checks over graph streams, with CSV/JSON reports and counterexample dumps.

Every check maps a graph to at most one row.  Rows are computed by a
process pool over fixed-size chunks and merged back in stream order, so the
CSV is identical for any worker count.
"""

from __future__ import annotations

import csv
import io
import json
import multiprocessing as mp
import os
import time
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from math import ceil, log2
from typing import Callable, Iterable, Iterator

from . import _kernels
from .coloring import SolverTimeout, exact_grundy
from .cobipartite import bipartition, grundy_cobipartite, NotBipartite
from .detect import has_induced_c4, is_2k2_free, is_chordal, is_k2m_free, is_kll_free, simplicial_vertices
from .generators import SplitMix64, graph_from_mask, random_gnp
from .graph import (Graph, bits, complement, degeneracy, degrees, from_graph6, girth, has_triangle,
                    induced_subgraph, to_graph6)

BOUNDS = ("conjecture", "chordal", "cobip", "log", "remark1", "probe")
CHUNK = 512
EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


@dataclass
class Row:
    graph_id: str
    graph6: str
    n: int
    m: int
    delta: int
    Delta: int
    girth: str
    c4free: bool
    triangle_free: bool
    chordal: bool
    bipartite: bool
    twok2free: bool
    chi_ff: int
    bound: str
    bound_value: str
    bound_display: int
    holds: bool
    status: str
    runtime_us: int = 0


CSV_FIELDS = [f.name for f in fields(Row)]
_CSV_HEADER = {"twok2free": "2k2free"}


@dataclass
class VerifyConfig:
    """Everything that determines a run's rows (worker count does not)."""

    bound: str = "conjecture"
    m: int = 2
    timeout_ms: int | None = None
    workers: int = 1
    exact_sample: int = 0
    cross_check_n: int = 10
    with_runtime: bool = False
    dump_g6: str | None = None


@dataclass
class VerifyReport:
    bound: str
    rows: list[Row] = field(default_factory=list)
    skipped: int = 0
    confirmed: list[str] = field(default_factory=list)
    unconfirmed: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def checked(self) -> int:
        return len(self.rows)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.rows if r.holds and r.status not in ("timeout", "mismatch"))

    @property
    def inconclusive(self) -> int:
        return sum(1 for r in self.rows if r.status == "timeout") + len(self.unconfirmed)

    @property
    def failed(self) -> int:
        return len(self.confirmed)

    @property
    def mismatches(self) -> int:
        return sum(1 for r in self.rows if r.status == "mismatch")

    @property
    def outcome(self) -> str:
        if self.failed or self.mismatches:
            return "FAILED"
        if self.inconclusive:
            return "INCONCLUSIVE"
        return "PASS"

    @property
    def exit_code(self) -> int:
        return {"PASS": EXIT_PASS, "FAILED": EXIT_FAIL, "INCONCLUSIVE": EXIT_INCONCLUSIVE}[self.outcome]

    def by_delta(self) -> dict[int, dict[str, int]]:
        out: dict[int, dict[str, int]] = {}
        for r in self.rows:
            b = out.setdefault(r.delta, {"checked": 0, "holds": 0, "min_chi_ff": r.chi_ff, "min_margin": None})
            b["checked"] += 1
            b["holds"] += r.holds
            b["min_chi_ff"] = min(b["min_chi_ff"], r.chi_ff)
            margin = r.chi_ff - r.bound_display
            b["min_margin"] = margin if b["min_margin"] is None else min(b["min_margin"], margin)
        return dict(sorted(out.items()))

    def to_csv(self, with_runtime: bool = False) -> str:
        names = CSV_FIELDS if with_runtime else CSV_FIELDS[:-1]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([_CSV_HEADER.get(k, k) for k in names])
        for r in self.rows:
            d = asdict(r)
            w.writerow([_cell(d[k]) for k in names])
        return buf.getvalue()

    def summary(self, config: dict | None = None) -> dict:
        return {
            "bound": self.bound,
            "status": self.outcome,
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "mismatches": self.mismatches,
            "skipped": self.skipped,
            "counterexamples": self.confirmed,
            "unconfirmed": self.unconfirmed,
            "by_delta": {str(k): v for k, v in self.by_delta().items()},
            "wall_time_s": round(self.wall_time, 3),
            "config": config or {},
        }

    def summary_json(self, config: dict | None = None) -> str:
        return json.dumps(self.summary(config), indent=2, sort_keys=True) + "\n"


def _cell(x):
    if isinstance(x, bool):
        return "yes" if x else "no"
    return x


# -- bounds ----------------------------------------------------------------------

@dataclass(frozen=True)
class Bound:
    """A lower bound on chi_ff with an exact comparison."""

    name: str
    expr: str
    display: int
    test: Callable[[int], bool]


def delta_plus_one(delta: int) -> Bound:
    return Bound("delta+1", str(delta + 1), delta + 1, lambda chi: chi >= delta + 1)


def log_bound(delta: int, m: int) -> Bound:
    """Lower bound for triangle-free, induced-K_{2,m}-free graphs (log base 2).

    m = 2 uses the C4-free form log2(delta + 1); m >= 3 uses
    log2((delta + 6m - 8) / (2m - 2)) + 1.  Both are compared through powers
    of two, never through floats.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if m == 2:
        x = Fraction(delta + 1)
        return Bound("log2(delta+1)", f"log2({x})", ceil(log2(x)), lambda chi: (1 << chi) >= x)
    x = Fraction(delta + 6 * m - 8, 2 * m - 2)
    shown = ceil(log2(x) + 1) if x > 0 else 1
    return Bound(f"log2((delta+{6 * m - 8})/{2 * m - 2})+1", f"log2({x})+1", shown,
                 lambda chi: chi >= 1 and (1 << (chi - 1)) >= x)


# -- per-graph evaluation ----------------------------------------------------------

def _solve(g: Graph, timeout_s: float | None) -> tuple[int, str]:
    """Exact value, or the proven lower bound with status 'timeout'."""
    try:
        return exact_grundy(g, timeout_s).value, "exact"
    except SolverTimeout as e:
        return e.lower, "timeout"


def _base_row(gid: str, g: Graph, bound: Bound, chi: int, status: str) -> Row:
    _, lo, hi = degrees(g)
    gi = girth(g)
    part = bipartition(g)
    holds = bound.test(chi)
    if status == "timeout" and holds:
        # a lower bound that already meets the bound still proves it
        status = "lower-bound"
    return Row(
        graph_id=gid, graph6=to_graph6(g), n=g.n, m=g.m, delta=lo or 0, Delta=hi or 0,
        girth="inf" if gi is None else str(gi),
        c4free=not has_induced_c4(g), triangle_free=not has_triangle(g),
        chordal=bool(is_chordal(g)), bipartite=not isinstance(part, NotBipartite),
        twok2free=is_2k2_free(g), chi_ff=chi, bound=bound.name, bound_value=bound.expr,
        bound_display=bound.display, holds=holds, status=status,
    )


def _clique_certificate(g: Graph) -> int:
    """Size of N[v] for the simplicial vertex of largest degree (a clique, so a lower bound)."""
    simp = simplicial_vertices(g)
    return max(g.degree(v) for v in bits(simp)) + 1


def evaluate(cfg: VerifyConfig, index: int, gid: str, g: Graph) -> Row | None:
    """Row for one stream item, or None when the graph is outside the check's class."""
    if g.n == 0:
        return None
    t0 = time.perf_counter_ns()
    timeout = None if cfg.timeout_ms is None else cfg.timeout_ms / 1000
    kind = cfg.bound
    _, delta, _ = degrees(g)
    if kind == "conjecture":
        if has_induced_c4(g):
            return None
        chi, status = _solve(g, timeout)
        row = _base_row(gid, g, delta_plus_one(delta), chi, status)
    elif kind == "chordal":
        if not is_chordal(g):
            return None
        cert = _clique_certificate(g)
        if index < cfg.exact_sample or cert < delta + 1:
            chi, status = _solve(g, timeout)
            if status == "exact" and chi < cert:
                raise AssertionError(f"{gid}: exact value {chi} below clique certificate {cert}")
        else:
            chi, status = cert, "certified"
        row = _base_row(gid, g, delta_plus_one(delta), chi, status)
    elif kind == "cobip":
        if isinstance(bipartition(g), NotBipartite):
            return None
        comp = complement(g)
        if has_induced_c4(comp):
            return None
        hi = max(g.degree(v) for v in range(g.n))
        cdelta = min(comp.degree(v) for v in range(comp.n))
        if cdelta != g.n - hi - 1:
            raise AssertionError(f"{gid}: delta(G) != n - Delta(H) - 1")
        chi, status = grundy_cobipartite(g), "formula"
        if g.n <= cfg.cross_check_n:
            exact, st = _solve(comp, timeout)
            if st == "exact" and exact != chi:
                status = "mismatch"
        row = _base_row(gid, comp, delta_plus_one(cdelta), chi, status)
    elif kind == "log":
        if has_triangle(g) or not is_k2m_free(g, cfg.m):
            return None
        chi, status = _solve(g, timeout)
        row = _base_row(gid, g, log_bound(delta, cfg.m), chi, status)
    elif kind == "remark1":
        if not is_chordal(g):
            return None
        _, d, core = degeneracy(g)
        sub = induced_subgraph(g, core)
        _, sub_delta, _ = degrees(sub)
        if sub_delta != d or _clique_certificate(sub) < d + 1:
            raise AssertionError(f"{gid}: degeneracy core does not certify col(G)")
        chi, status = _solve(g, timeout)
        col = d + 1
        bound = Bound("col", str(col), col, lambda x: x >= col)
        row = _base_row(gid, g, bound, chi, status)
    elif kind == "probe":
        chi, status = _solve(g, timeout)
        low = 2 if g.m else 1
        row = _base_row(gid, g, Bound("edge", str(low), low, lambda x: x >= low), chi, status)
    else:
        raise ValueError(f"unknown bound {kind!r}")
    row.runtime_us = (time.perf_counter_ns() - t0) // 1000
    return row


def _eval_chunk(cfg: VerifyConfig, chunk):
    return [evaluate(cfg, i, gid, g) for i, gid, g in chunk]


def _chunks(items: Iterable[tuple[str, Graph]], size: int) -> Iterator[list]:
    chunk = []
    for i, (gid, g) in enumerate(items):
        chunk.append((i, gid, g))
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _pool_context():
    methods = mp.get_all_start_methods()
    return mp.get_context("fork" if "fork" in methods else "spawn")


def run_check(items: Iterable[tuple[str, Graph]], cfg: VerifyConfig) -> VerifyReport:
    """Evaluate a stream of ``(graph_id, graph)`` pairs, re-checking failures in isolation."""
    if cfg.bound not in BOUNDS:
        raise ValueError(f"unknown bound {cfg.bound!r}; choose from {', '.join(BOUNDS)}")
    start = time.perf_counter()
    report = VerifyReport(cfg.bound)
    if cfg.workers <= 1:
        results = (_eval_chunk(cfg, c) for c in _chunks(items, CHUNK))
        _collect(report, results)
    else:
        with _pool_context().Pool(cfg.workers) as pool:
            _collect(report, pool.imap(_Evaluator(cfg), _chunks(items, CHUNK)))
    for row in report.rows:
        if row.holds or row.status == "timeout":
            continue
        if _reverify(cfg, row):
            report.confirmed.append(row.graph_id)
        else:
            report.unconfirmed.append(row.graph_id)
    report.wall_time = time.perf_counter() - start
    return report


class _Evaluator:
    def __init__(self, cfg: VerifyConfig):
        self.cfg = cfg

    def __call__(self, chunk):
        return _eval_chunk(self.cfg, chunk)


def _collect(report: VerifyReport, results) -> None:
    for chunk in results:
        for row in chunk:
            if row is None:
                report.skipped += 1
            else:
                report.rows.append(row)


def _reverify(cfg: VerifyConfig, row: Row) -> bool:
    """Dump the graph, reload it from graph6 and run the check again from scratch."""
    text = row.graph6
    if cfg.dump_g6:
        with open(cfg.dump_g6, "a") as fh:
            fh.write(text + "\n")
    g = from_graph6(text)
    if cfg.bound == "cobip":
        # the row describes the complement; the check itself runs on H
        g = complement(g)
    again = evaluate(cfg, 0, row.graph_id, g)
    return again is not None and not again.holds


# -- stream helpers -------------------------------------------------------------------

def labeled_items(max_n: int, c4_free_only: bool = False, min_n: int = 1) -> Iterator[tuple[str, Graph]]:
    """All labeled graphs on ``min_n..max_n`` vertices, ids ``n<n>:<edge mask>``.

    ``c4_free_only`` drops graphs with an induced C4 up front; the conjecture
    check would skip them anyway.
    """
    for n in range(min_n, max_n + 1):
        if c4_free_only and n >= 4:
            masks = (int(x) for x in _kernels.c4_free_masks(n))
        else:
            masks = iter(range(1 << (n * (n - 1) // 2)))
        for mask in masks:
            yield f"n{n}:{mask}", graph_from_mask(n, mask)


def check_conjecture(items, **kw) -> VerifyReport:
    return run_check(items, VerifyConfig(bound="conjecture", **kw))


def check_chordal_bound(items, **kw) -> VerifyReport:
    return run_check(items, VerifyConfig(bound="chordal", **kw))


def check_cobip_bound(items, **kw) -> VerifyReport:
    return run_check(items, VerifyConfig(bound="cobip", **kw))


def check_log_bound(items, m: int = 2, **kw) -> VerifyReport:
    return run_check(items, VerifyConfig(bound="log", m=m, **kw))


def check_remark1(items, **kw) -> VerifyReport:
    return run_check(items, VerifyConfig(bound="remark1", **kw))


def probe_items(ell: int, delta_min: int, delta_max: int, samples: int, seed: int,
                n_range: tuple[int, int] = (6, 12), max_tries: int | None = None) -> Iterator[tuple[str, Graph]]:
    """Seeded G(n, p) graphs that are induced-K_{l,l}-free with delta in range."""
    rng = SplitMix64(seed)
    tries = max_tries if max_tries is not None else 50 * samples
    kept = 0
    for t in range(tries):
        if kept == samples:
            return
        n = rng.between(*n_range)
        p = rng.random()
        g = random_gnp(n, p, rng.next_u64())
        _, d, _ = degrees(g)
        if not delta_min <= d <= delta_max or not is_kll_free(g, ell):
            continue
        kept += 1
        yield f"probe{t}", g


def family_probe_kll(ell: int, delta_min: int = 1, delta_max: int = 4, samples: int = 200,
                     seed: int = 0, **kw) -> tuple[list[tuple[int, int, int]], VerifyReport]:
    """Minimum observed chi_ff per delta over random K_{l,l}-free graphs.

    Returns ``[(delta, count, min chi_ff), ...]`` and the underlying report.
    Purely observational.
    """
    if not 1 <= ell <= 3:
        raise ValueError("family probe supports 1 <= l <= 3")
    report = run_check(probe_items(ell, delta_min, delta_max, samples, seed), VerifyConfig(bound="probe", **kw))
    table = [(d, b["checked"], b["min_chi_ff"]) for d, b in report.by_delta().items()]
    return table, report


def default_workers() -> int:
    env = os.environ.get("GRUNDY_WORKERS")
    return int(env) if env else 1
