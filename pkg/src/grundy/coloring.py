"""First-Fit colourings, Grundy validation, the exact solver and MIS peeling."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .graph import Graph, bits

MAX_EXACT_N = 40
MAX_ORACLE_N = 9
ENGINES = ("auto", "witness", "subsets")

_FIRST_BUDGET = 1 << 12
_NO_LIMIT = 1 << 62


@dataclass(frozen=True)
class Coloring:
    """Colour per vertex; 0 means uncoloured, real colours start at 1."""

    colors: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.colors):
            raise ValueError("colours must be nonnegative (0 = uncoloured)")

    @property
    def k(self) -> int:
        return max(self.colors, default=0)

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def support(self) -> int:
        return sum(1 << v for v, c in enumerate(self.colors) if c)

    def is_total(self) -> bool:
        return all(self.colors)

    def classes(self) -> list[list[int]]:
        """Vertices of colour 1, 2, ..., k."""
        out = [[] for _ in range(self.k)]
        for v, c in enumerate(self.colors):
            if c:
                out[c - 1].append(v)
        return out

    def to_csv(self) -> str:
        """One ``vertex:color`` line per coloured vertex."""
        return "".join(f"{v}:{c}\n" for v, c in enumerate(self.colors) if c)

    @classmethod
    def from_csv(cls, text: str, n: int) -> "Coloring":
        colors = [0] * n
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            v, _, c = line.partition(":")
            v, c = int(v), int(c)
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range")
            colors[v] = c
        return cls(tuple(colors))


class SolverTimeout(RuntimeError):
    """The exact solver ran out of time; ``lower``/``upper`` are proven bounds."""

    def __init__(self, lower: int, upper: int, witness: Coloring, elapsed: float):
        super().__init__(f"solver timed out after {elapsed:.3f}s with {lower} <= chi_ff <= {upper}")
        self.lower = lower
        self.upper = upper
        self.witness = witness
        self.elapsed = elapsed


@dataclass(frozen=True)
class GrundyResult:
    value: int
    witness: Coloring
    engine: str
    status: str = "exact"


def greedy_color(g: Graph, order: Sequence[int]) -> Coloring:
    """First-Fit along ``order``: each vertex takes the least colour missing among earlier neighbours."""
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    rows = g.rows
    colors = [0] * g.n
    for v in order:
        seen = 0
        for u in bits(rows[v]):
            seen |= 1 << colors[u]
        c = 1
        while (seen >> c) & 1:
            c += 1
        colors[v] = c
    return Coloring(tuple(colors))


def _grundy_on_support(g: Graph, colors: Sequence[int]) -> bool:
    rows = g.rows
    support = sum(1 << v for v, c in enumerate(colors) if c)
    for v in bits(support):
        cv = colors[v]
        seen = 0
        for u in bits(rows[v] & support):
            cu = colors[u]
            if cu == cv:
                return False
            seen |= 1 << cu
        need = ((1 << cv) - 1) & ~1
        if seen & need != need:
            return False
    return True


def is_grundy_coloring(g: Graph, c: Coloring) -> bool:
    """Proper, total, and every vertex of colour j sees colours 1..j-1."""
    if c.n != g.n or not c.is_total():
        return False
    return _grundy_on_support(g, c.colors)


def is_partial_grundy(g: Graph, c: Coloring) -> bool:
    """Grundy condition on the subgraph induced by the coloured vertices."""
    if c.n != g.n:
        return False
    return _grundy_on_support(g, c.colors)


def _run_engine(adj, n, engine, budget, out):
    if engine == "auto":
        return _kernels.grundy_auto(adj, n, budget, out)
    if engine == "witness":
        return _kernels.grundy_exact(adj, n, budget, out)
    v = _kernels.grundy_subset_dp(adj, n, out)
    return _kernels.EXHAUSTED, v, v


def exact_grundy(g: Graph, timeout: float | None = None, engine: str = "auto") -> GrundyResult:
    """Exact Grundy number with a witness colouring.

    ``engine="witness"`` is the iterative-deepening witness search: level k
    is certified by a partial Grundy colouring where some root reaches k,
    grown demand by demand, then extended to all of G by First-Fit.
    ``engine="subsets"`` is a bottom-up pass over every vertex subset
    (n <= 20).  ``"auto"`` uses subsets below 11 vertices, and for 11..20
    vertices tries a bounded witness search before falling back to subsets.

    The witness search runs under a node budget that doubles until it
    finishes or ``timeout`` seconds have passed; then SolverTimeout is raised
    with the proven bounds.  The subset pass is not interruptible.
    """
    n = g.n
    if n > MAX_EXACT_N:
        raise ValueError(f"exact solver is capped at n = {MAX_EXACT_N}, got {n}")
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")
    if engine == "subsets" and n > _kernels.DP_MAX:
        raise ValueError(f"subset engine is capped at n = {_kernels.DP_MAX}")
    if n == 0:
        return GrundyResult(0, Coloring(()), engine)
    adj = g.as_array()
    out = np.zeros(n, np.int64)
    start = time.perf_counter()
    budget = _NO_LIMIT if timeout is None else _FIRST_BUDGET
    while True:
        began = time.perf_counter()
        status, best, upper = _run_engine(adj, n, engine, budget, out)
        if status != _kernels.OUT_OF_BUDGET:
            break
        now = time.perf_counter()
        left = timeout - (now - start)
        # the next budget must also fit in the time left at the observed node rate
        fits = int(budget * left / max(now - began, 1e-6))
        if fits <= budget:
            raise SolverTimeout(int(best), int(upper), Coloring(tuple(int(x) for x in out)), now - start)
        budget = min(2 * budget, fits)
    witness = Coloring(tuple(int(x) for x in out))
    if witness.k != best or not is_grundy_coloring(g, witness):
        raise AssertionError("solver produced an invalid witness")
    return GrundyResult(int(best), witness, engine)


def grundy_number(g: Graph, timeout: float | None = None) -> int:
    return exact_grundy(g, timeout).value


def _orderings_uncapped(g: Graph) -> int:
    if g.n > 12:
        raise ValueError("ordering enumeration beyond 12 vertices is not sensible")
    return int(_kernels.max_first_fit_orderings(g.as_array() if g.n else np.zeros(0, np.int64), g.n))


def grundy_oracle_orderings(g: Graph) -> int:
    """Largest First-Fit colour count over all n! orderings (n <= 9)."""
    if g.n > MAX_ORACLE_N:
        raise ValueError(f"ordering oracle is capped at n = {MAX_ORACLE_N}, got {g.n}")
    return _orderings_uncapped(g)


# -- maximal independent sets and peeling ------------------------------------------

def maximal_independent_sets(g: Graph, within: int | None = None) -> Iterator[int]:
    """Masks of the maximal independent sets of ``g[within]``, Bron-Kerbosch with pivoting.

    Candidates are branched on in ascending vertex order, so the output
    sequence is deterministic.
    """
    rows = g.rows
    within = g.vertex_mask if within is None else within
    apart = [within & ~rows[v] & ~(1 << v) for v in range(g.n)]

    def expand(r: int, p: int, x: int):
        if not p and not x:
            yield r
            return
        pivot = max(bits(p | x), key=lambda u: ((p & apart[u]).bit_count(), -u))
        for v in bits(p & ~apart[pivot]):
            yield from expand(r | (1 << v), p & apart[v], x & apart[v])
            p &= ~(1 << v)
            x |= 1 << v

    if within == 0:
        return
    yield from expand(0, within, 0)


def _is_maximal_independent(rows, within: int, layer: int) -> bool:
    if layer == 0 or layer & ~within:
        return False
    for v in bits(layer):
        if rows[v] & layer:
            return False
    for u in bits(within & ~layer):
        if not rows[u] & layer:
            return False
    return True


def _min_degree_in(rows, alive: int) -> int:
    return min((rows[v] & alive).bit_count() for v in bits(alive))


@dataclass(frozen=True)
class PeelCertificate:
    """Layers I_1..I_t; each is a maximal independent set of what the earlier layers leave."""

    layers: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.layers)

    def to_text(self) -> str:
        return "".join(" ".join(map(str, layer)) + "\n" for layer in self.layers)

    @classmethod
    def from_text(cls, text: str) -> "PeelCertificate":
        layers = []
        for line in text.splitlines():
            if line.strip():
                layers.append(tuple(int(tok) for tok in line.split()))
        return cls(tuple(layers))

    def validate(self, g: Graph) -> None:
        """Raise ValueError unless the layers partition V as successive maximal independent sets."""
        rows = g.rows
        alive = g.vertex_mask
        for j, layer in enumerate(self.layers, 1):
            mask = 0
            for v in layer:
                if not 0 <= v < g.n or (mask >> v) & 1:
                    raise ValueError(f"layer {j}: bad or repeated vertex {v}")
                mask |= 1 << v
            if not _is_maximal_independent(rows, alive, mask):
                raise ValueError(f"layer {j} is not a maximal independent set of the remaining graph")
            alive &= ~mask
        if alive:
            raise ValueError("layers do not cover every vertex")


def peel_certificate(g: Graph) -> PeelCertificate | None:
    """Peel maximal independent sets while the minimum degree drops by at most one.

    Each layer I must satisfy delta(G - I) >= delta(G) - 1 in the current
    graph (no condition once the graph is empty).  Maximal independent sets
    are tried in enumeration order with backtracking; remaining vertex sets
    already known to fail are memoised.  Returns None when no layering exists.
    """
    if g.n == 0:
        raise ValueError("peel_certificate needs n >= 1")
    rows = g.rows
    dead: set[int] = set()

    def search(alive: int) -> list[int] | None:
        if alive == 0:
            return []
        if alive in dead:
            return None
        floor = _min_degree_in(rows, alive) - 1
        for layer in maximal_independent_sets(g, alive):
            rest = alive & ~layer
            if rest and _min_degree_in(rows, rest) < floor:
                continue
            tail = search(rest)
            if tail is not None:
                return [layer] + tail
        dead.add(alive)
        return None

    found = search(g.vertex_mask)
    if found is None:
        return None
    return PeelCertificate(tuple(tuple(bits(layer)) for layer in found))


def coloring_from_certificate(g: Graph, cert: PeelCertificate) -> Coloring:
    """Colour layer j with j; maximality of each layer gives the downward neighbours."""
    cert.validate(g)
    colors = [0] * g.n
    for j, layer in enumerate(cert.layers, 1):
        for v in layer:
            colors[v] = j
    return Coloring(tuple(colors))

