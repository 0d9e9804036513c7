"""Bipartite matchings, edge domination and the Grundy number of co-bipartite graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import _kernels
from .detect import is_2k2_free
from .graph import Graph, bits, max_degree

MAX_EDGES = 40


@dataclass(frozen=True)
class NotBipartite:
    """An odd cycle, in cyclic order."""

    cycle: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


class NotBipartiteError(ValueError):
    def __init__(self, witness: NotBipartite):
        super().__init__(f"graph is not bipartite (odd cycle {list(witness.cycle)})")
        self.witness = witness


def bipartition(h: Graph) -> tuple[int, int] | NotBipartite:
    """BFS 2-colouring, component by component; the lowest vertex of each goes to side A.

    Returns ``(A, B)`` as vertex masks, or an odd cycle.
    """
    rows = h.rows
    side = [-1] * h.n
    parent = [-1] * h.n
    for s in range(h.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in bits(rows[u]):
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    parent[v] = u
                    queue.append(v)
                elif side[v] == side[u]:
                    return NotBipartite(_odd_cycle(parent, u, v))
    a = sum(1 << v for v in range(h.n) if side[v] == 0)
    return a, h.vertex_mask & ~a


def _odd_cycle(parent, u: int, v: int) -> tuple[int, ...]:
    up = [u]
    while parent[up[-1]] != -1:
        up.append(parent[up[-1]])
    vp = [v]
    while parent[vp[-1]] != -1:
        vp.append(parent[vp[-1]])
    # strip the common part above the lowest common ancestor
    while len(up) > 1 and len(vp) > 1 and up[-2] == vp[-2]:
        up.pop()
        vp.pop()
    return tuple(up + vp[-2::-1])


def _require_bipartite(h: Graph) -> tuple[int, int]:
    parts = bipartition(h)
    if isinstance(parts, NotBipartite):
        raise NotBipartiteError(parts)
    return parts


@dataclass(frozen=True)
class MatchingSolution:
    edges: tuple[tuple[int, int], ...]
    size: int
    is_matching: bool
    is_edge_dominating: bool
    is_maximal_matching: bool

    @classmethod
    def of(cls, h: Graph, edges) -> "MatchingSolution":
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        for u, v in edges:
            if not h.adjacent(u, v):
                raise ValueError(f"{u}-{v} is not an edge")
        covered = 0
        matching = True
        for u, v in edges:
            if (covered >> u) & 1 or (covered >> v) & 1:
                matching = False
            covered |= (1 << u) | (1 << v)
        dominating = all((covered >> u) & 1 or (covered >> v) & 1 for u, v in h.edges())
        return cls(edges, len(edges), matching, dominating, matching and dominating)

    def to_edge_lines(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)


def maximum_matching(h: Graph) -> MatchingSolution:
    """Maximum matching by augmenting paths from side A (Kuhn's algorithm)."""
    a, _ = _require_bipartite(h)
    rows = h.rows
    mate = [-1] * h.n

    def augment(u: int, seen: list[bool]) -> bool:
        for v in bits(rows[u]):
            if seen[v]:
                continue
            seen[v] = True
            if mate[v] == -1 or augment(mate[v], seen):
                mate[v] = u
                mate[u] = v
                return True
        return False

    for u in bits(a):
        if mate[u] == -1:
            augment(u, [False] * h.n)
    return MatchingSolution.of(h, [(u, mate[u]) for u in bits(a) if mate[u] != -1])


def _edges_from_mask(h: Graph, mask: int) -> list[tuple[int, int]]:
    order = sorted(h.edges(), key=lambda e: (e[1], e[0]))
    return [order[e] for e in bits(mask)]


def min_edge_dominating(h: Graph) -> MatchingSolution:
    """Minimum edge dominating set, returned as a minimum maximal matching.

    Two exact branch-and-bound searches run: one over arbitrary edge sets and
    one restricted to matchings.  Their optima must coincide; the matching
    attaining it is returned.
    """
    if h.m > MAX_EDGES:
        raise ValueError(f"edge domination is capped at {MAX_EDGES} edges, got {h.m}")
    if h.m == 0:
        return MatchingSolution.of(h, [])
    adj = h.as_array()
    free_size, free_mask = _kernels.min_edge_dominating(adj, h.n, False)
    size, mask = _kernels.min_edge_dominating(adj, h.n, True)
    if free_size != size:
        raise AssertionError(f"unrestricted optimum {free_size} differs from matching optimum {size}")
    free = MatchingSolution.of(h, _edges_from_mask(h, int(free_mask)))
    sol = MatchingSolution.of(h, _edges_from_mask(h, int(mask)))
    if not (free.is_edge_dominating and sol.is_maximal_matching and sol.size == size):
        raise AssertionError("edge domination search returned an invalid set")
    return sol


def edge_domination_number(h: Graph) -> int:
    return min_edge_dominating(h).size


def grundy_cobipartite(h: Graph) -> int:
    """Grundy number of the complement of bipartite ``h``: n - gamma'(h)."""
    _require_bipartite(h)
    return h.n - edge_domination_number(h)


@dataclass(frozen=True)
class AlphaDeltaVerdict:
    alpha: int
    max_degree: int
    is_2k2_free: bool
    holds: bool

    @property
    def asserted(self) -> bool:
        """The inequality is only claimed for 2K2-free inputs."""
        return self.is_2k2_free

    @property
    def ok(self) -> bool:
        return self.holds or not self.asserted


def check_alpha_leq_delta(h: Graph) -> AlphaDeltaVerdict:
    alpha = maximum_matching(h).size
    big = max_degree(h) or 0
    return AlphaDeltaVerdict(alpha, big, is_2k2_free(h), alpha <= big)
