"""Graph families and seeded random instances.

Randomness comes from :class:`SplitMix64` so that a ``(family, params, seed)``
triple names the same labeled graph on every platform and in every language.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from . import _kernels
from .graph import Graph, pairs

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014).

    state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
    return z ^ (z >> 31)            (all arithmetic mod 2**64)
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection on the low bits."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)


# -- fixed families ------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Graph.empty(n)


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ValueError("both parts need at least one vertex")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return complete_bipartite(1, k)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    rows = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph._trusted(offset, tuple(rows))


def tree_tk(k: int) -> Graph:
    """The tree T_k: T_1 = K_1 and T_{k+1} hangs a new leaf on every vertex of T_k.

    Leaves are attached in ascending vertex order, so vertex ``v + 2**(j-1)``
    is the leaf added to ``v`` in step ``j``.  ``|V(T_k)| = 2**(k-1)``.
    """
    if not 1 <= k <= 10:
        raise ValueError("tree_tk supports 1 <= k <= 10")
    n = 1
    edges = []
    for _ in range(k - 1):
        edges.extend((v, n + v) for v in range(n))
        n *= 2
    return Graph.from_edges(n, edges)


_PRIMES = (2, 3, 5, 7)


def incidence_projective_plane(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q) for prime ``q``.

    Points are ``0..N-1`` and lines ``N..2N-1`` with ``N = q*q + q + 1``;
    both use normalised homogeneous coordinates (last nonzero entry 1).
    """
    if q not in _PRIMES:
        raise ValueError(f"q must be one of {_PRIMES}")
    coords = [(x, y, 1) for x in range(q) for y in range(q)]
    coords += [(x, 1, 0) for x in range(q)]
    coords.append((1, 0, 0))
    big = len(coords)
    edges = []
    for i, p in enumerate(coords):
        for j, line in enumerate(coords):
            if (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]) % q == 0:
                edges.append((i, big + j))
    return Graph.from_edges(2 * big, edges)


# -- random families -------------------------------------------------------------

def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); pairs are drawn in graph6 order, edge iff u < p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    return Graph.from_edges(n, [(i, j) for i, j in pairs(n) if rng.random() < p])


def random_ktree(n: int, k: int, seed: int) -> Graph:
    """Random k-tree: K_{k+1}, then each new vertex joins a uniformly chosen k-clique.

    The k-clique list starts with the k-subsets of ``0..k`` in lexicographic
    order; attaching ``v`` to clique ``C`` appends ``C - {w} + {v}`` for each
    ``w`` of ``C`` in ascending order.
    """
    if k < 1 or n < k + 1:
        raise ValueError("random_ktree needs k >= 1 and n >= k + 1")
    rng = SplitMix64(seed)
    edges = list(combinations(range(k + 1), 2))
    cliques = [c for c in combinations(range(k + 1), k)]
    for v in range(k + 1, n):
        base = cliques[rng.below(len(cliques))]
        edges.extend((u, v) for u in base)
        for w in base:
            cliques.append(tuple(u for u in base if u != w) + (v,))
    return Graph.from_edges(n, edges)


def chain_graph_from_thresholds(n_b: int, thresholds: list[int]) -> Graph:
    """Bipartite graph where A-vertex ``i`` sees B-vertices ``0..t_i - 1``.

    A occupies ``0..len(thresholds)-1`` and B the next ``n_b`` labels.
    """
    n_a = len(thresholds)
    if any(not 0 <= t <= n_b for t in thresholds):
        raise ValueError("thresholds must lie in 0..n_b")
    edges = [(i, n_a + j) for i, t in enumerate(thresholds) for j in range(t)]
    return Graph.from_edges(n_a + n_b, edges)


def chain_graph(n_a: int, n_b: int, seed: int) -> Graph:
    """Random 2K2-free bipartite graph: nested neighbourhoods on side A."""
    if n_a < 1 or n_b < 1:
        raise ValueError("both parts need at least one vertex")
    rng = SplitMix64(seed)
    thresholds = sorted((rng.between(0, n_b) for _ in range(n_a)), reverse=True)
    return chain_graph_from_thresholds(n_b, thresholds)


# -- exhaustive streams --------------------------------------------------------------

def graph_from_mask(n: int, mask: int) -> Graph:
    """Labeled graph whose edge set is bit ``b`` of ``mask`` for the b-th pair (graph6 order)."""
    rows = [0] * n
    b = 0
    for j in range(1, n):
        for i in range(j):
            if (mask >> b) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            b += 1
    return Graph._trusted(n, tuple(rows))


def graph_mask(g: Graph) -> int:
    m = 0
    b = 0
    rows = g.rows
    for j in range(1, g.n):
        for i in range(j):
            if (rows[j] >> i) & 1:
                m |= 1 << b
            b += 1
    return m


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """All ``2**(n(n-1)/2)`` labeled graphs on ``n`` vertices, by ascending mask."""
    if not 0 <= n <= 7:
        raise ValueError("all_labeled_graphs supports n <= 7")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield graph_from_mask(n, mask)


def c4_free_masks(n: int) -> np.ndarray:
    """Ascending masks of the labeled graphs on ``n <= 7`` vertices with no induced C4."""
    if not 0 <= n <= 7:
        raise ValueError("c4_free_masks supports n <= 7")
    if n < 4:
        return np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
    return _kernels.c4_free_masks(n)


def bipartite_masks(n: int) -> np.ndarray:
    """Ascending masks of all labeled bipartite graphs on ``n <= 8`` vertices."""
    if not 0 <= n <= 8:
        raise ValueError("bipartite_masks supports n <= 8")
    return _kernels.labeled_bipartite_masks(n)


def all_labeled_bipartite_graphs(n: int) -> Iterator[Graph]:
    for mask in bipartite_masks(n):
        yield graph_from_mask(n, int(mask))


# -- generator specs -----------------------------------------------------------------

FAMILIES = ("tk", "complete", "bipartite", "path", "cycle", "petersen",
            "ktree", "chain", "plane", "gnp")


@dataclass(frozen=True)
class GenSpec:
    """A reproducible recipe for one graph or a seeded stream of graphs.

    ``samples`` > 1 turns a random family into a stream; sample ``i`` uses
    seed ``SplitMix64(seed)``'s ``i``-th output, and its size parameters are
    drawn from the same stream when they are left unset.
    """

    family: str
    k: int | None = None
    n: int | None = None
    a: int | None = None
    b: int | None = None
    q: int | None = None
    p: float | None = None
    seed: int = 0
    samples: int = 1
    extra: dict = field(default_factory=dict, compare=False)

    def build(self) -> Graph:
        return next(iter(self.stream()))

    def stream(self) -> Iterator[Graph]:
        fam = self.family
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
        if fam in ("tk", "complete", "bipartite", "path", "cycle", "petersen", "plane"):
            g = self._fixed()
            for _ in range(self.samples):
                yield g
            return
        master = SplitMix64(self.seed)
        for _ in range(self.samples):
            sub = master.next_u64()
            yield self._random(sub)

    def _fixed(self) -> Graph:
        fam = self.family
        if fam == "tk":
            return tree_tk(_need(self.k, "k"))
        if fam == "complete":
            return complete(_need(self.n, "n"))
        if fam == "bipartite":
            return complete_bipartite(_need(self.a, "a"), _need(self.b, "b"))
        if fam == "path":
            return path(_need(self.n, "n"))
        if fam == "cycle":
            return cycle(_need(self.n, "n"))
        if fam == "petersen":
            return petersen()
        return incidence_projective_plane(_need(self.q, "q"))

    def _random(self, seed: int) -> Graph:
        fam = self.family
        rng = SplitMix64(seed)
        if fam == "ktree":
            k = self.k if self.k is not None else rng.between(1, 6)
            n = self.n if self.n is not None else rng.between(k + 1, 20)
            return random_ktree(n, k, rng.next_u64())
        if fam == "chain":
            a = self.a if self.a is not None else rng.between(1, 6)
            b = self.b if self.b is not None else rng.between(1, 6)
            return chain_graph(a, b, rng.next_u64())
        n = self.n if self.n is not None else rng.between(6, 9)
        p = self.p if self.p is not None else rng.random()
        return random_gnp(n, p, rng.next_u64())


def _need(value, name: str):
    if value is None:
        raise ValueError(f"this family needs --{name}")
    return value
