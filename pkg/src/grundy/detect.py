"""Induced-subgraph tests, chordality and simplicial vertices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, bits, mask_of

MAX_PATTERN = 10


@dataclass(frozen=True)
class EliminationOrdering:
    """Vertex order ``v_1..v_n`` with a flag per position.

    ``simplicial[i]`` is True iff ``order[i]`` is simplicial in the graph left
    after deleting ``order[:i]``.
    """

    order: tuple[int, ...]
    simplicial: tuple[bool, ...]

    @property
    def is_perfect(self) -> bool:
        return all(self.simplicial)

    def __bool__(self) -> bool:
        return self.is_perfect


@dataclass(frozen=True)
class NotChordal:
    """A chordless cycle of length >= 4, listed in cyclic order."""

    cycle: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def _is_clique(rows, mask: int) -> bool:
    for v in bits(mask):
        if mask & ~rows[v] & ~(1 << v):
            return False
    return True


def simplicial_vertices(g: Graph) -> int:
    """Bit mask of the vertices whose neighbourhood is a clique."""
    rows = g.rows
    return mask_of(v for v in range(g.n) if _is_clique(rows, rows[v]))


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order (lowest index breaks ties)."""
    rows = g.rows
    weight = [0] * g.n
    left = g.vertex_mask
    visit = []
    while left:
        v = max(bits(left), key=lambda x: (weight[x], -x))
        visit.append(v)
        left &= ~(1 << v)
        for u in bits(rows[v] & left):
            weight[u] += 1
    return visit


def check_elimination(g: Graph, order) -> EliminationOrdering:
    """Flag each position of ``order`` by whether it is simplicial in what remains."""
    rows = g.rows
    alive = g.vertex_mask
    flags = []
    for v in order:
        flags.append(_is_clique(rows, rows[v] & alive))
        alive &= ~(1 << v)
    return EliminationOrdering(tuple(order), tuple(flags))


def _chordless_cycle_through(rows, within: int, v: int, x: int, y: int) -> tuple[int, ...] | None:
    """Cycle v-x-...-y-v whose x..y part avoids the rest of N[v]; None if x, y split."""
    blocked = (rows[v] | (1 << v)) & ~((1 << x) | (1 << y))
    allowed = within & ~blocked
    prev = {x: -1}
    queue = deque([x])
    while queue:
        a = queue.popleft()
        if a == y:
            break
        for b in bits(rows[a] & allowed):
            if b not in prev:
                prev[b] = a
                queue.append(b)
    if y not in prev:
        return None
    walk = []
    a = y
    while a != -1:
        walk.append(a)
        a = prev[a]
    walk.reverse()
    return (v, *walk)


def is_chordal(g: Graph) -> EliminationOrdering | NotChordal:
    """Perfect elimination ordering from MCS, or a chordless cycle witness.

    The reverse of the MCS visit order is checked position by position.  At
    the first failing vertex, two non-adjacent remaining neighbours are joined
    by a shortest path that avoids the rest of its closed neighbourhood.
    """
    rows = g.rows
    elim = check_elimination(g, list(reversed(mcs_order(g))))
    if elim.is_perfect:
        return elim
    alive = g.vertex_mask
    for v, ok in zip(elim.order, elim.simplicial):
        if not ok:
            cyc = _find_cycle_at(rows, alive, v)
            if cyc is not None:
                return NotChordal(cyc)
            break
        alive &= ~(1 << v)
    # fall back to a scan over the whole graph
    for v in range(g.n):
        cyc = _find_cycle_at(rows, g.vertex_mask, v)
        if cyc is not None:
            return NotChordal(cyc)
    raise AssertionError("elimination check failed but no chordless cycle exists")


def _find_cycle_at(rows, within: int, v: int) -> tuple[int, ...] | None:
    nb = list(bits(rows[v] & within))
    for i, x in enumerate(nb):
        for y in nb[i + 1:]:
            if not (rows[x] >> y) & 1:
                cyc = _chordless_cycle_through(rows, within, v, x, y)
                if cyc is not None:
                    return cyc
    return None


def is_chordless_cycle(g: Graph, cycle) -> bool:
    """True iff ``cycle`` (length >= 4) induces exactly a cycle in ``g``."""
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    sel = mask_of(cycle)
    for i, v in enumerate(cycle):
        want = (1 << cycle[i - 1]) | (1 << cycle[(i + 1) % k])
        if g.rows[v] & sel != want:
            return False
    return True


def has_induced_c4(g: Graph) -> bool:
    """Scan non-adjacent pairs for two non-adjacent common neighbours."""
    rows = g.rows
    n = g.n
    for u in range(n):
        ru = rows[u]
        for w in range(u + 1, n):
            if (ru >> w) & 1:
                continue
            common = ru & rows[w]
            if common.bit_count() < 2:
                continue
            for a in bits(common):
                if common & ~rows[a] & ~((2 << a) - 1):
                    return True
    return False


def is_2k2_free(g: Graph) -> bool:
    """No two edges uv, xy on four vertices with no edge between them."""
    rows = g.rows
    for u, v in g.edges():
        far = g.vertex_mask & ~(rows[u] | rows[v] | (1 << u) | (1 << v))
        for x in bits(far):
            if rows[x] & far:
                return False
    return True


def contains_induced(pattern: Graph, host: Graph) -> tuple[int, ...] | None:
    """Host vertices inducing a copy of ``pattern`` (in pattern-vertex order), or None.

    Plain backtracking: pattern vertices are placed in BFS order, each host
    candidate must match adjacency and non-adjacency to everything placed so
    far, and must have at least the pattern vertex's degree.
    """
    if pattern.n > MAX_PATTERN:
        raise ValueError(f"pattern has {pattern.n} vertices; cap is {MAX_PATTERN}")
    if pattern.n > host.n:
        return None
    if pattern.n == 0:
        return ()
    prow = pattern.rows
    hrow = host.rows
    order = _bfs_order(pattern)
    pdeg = [pattern.degree(p) for p in range(pattern.n)]
    hdeg = [host.degree(v) for v in range(host.n)]
    by_degree = [mask_of(v for v in range(host.n) if hdeg[v] >= d) for d in range(max(pdeg) + 1)]
    full = host.vertex_mask
    image = [0] * pattern.n

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        cand = by_degree[pdeg[p]] & ~used
        for j in range(i):
            q = order[j]
            hq = hrow[image[q]]
            cand &= hq if (prow[p] >> q) & 1 else full & ~hq
            if not cand:
                return False
        for v in bits(cand):
            image[p] = v
            if place(i + 1, used | (1 << v)):
                return True
        return False

    if place(0, 0):
        return tuple(image)
    return None


def _bfs_order(g: Graph) -> list[int]:
    seen = 0
    order = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        seen |= 1 << s
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in bits(g.rows[v] & ~seen):
                seen |= 1 << u
                queue.append(u)
    return order


def is_kll_free(g: Graph, ell: int) -> bool:
    """No induced K_{l,l}, for ``1 <= l <= 3``."""
    from .generators import complete_bipartite

    if not 1 <= ell <= 3:
        raise ValueError("is_kll_free supports 1 <= l <= 3")
    return contains_induced(complete_bipartite(ell, ell), g) is None


def is_k2m_free(g: Graph, m: int) -> bool:
    """No induced K_{2,m} (``2 <= m <= 8``)."""
    from .generators import complete_bipartite

    if not 2 <= m <= MAX_PATTERN - 2:
        raise ValueError(f"is_k2m_free supports 2 <= m <= {MAX_PATTERN - 2}")
    if m == 2:
        return not has_induced_c4(g)
    return contains_induced(complete_bipartite(2, m), g) is None
