"""Immutable simple graphs stored as bit-row adjacency, plus basic parameters.

Vertices are ``0..n-1``.  Row ``v`` is a Python int whose bit ``u`` is set
iff ``uv`` is an edge, so neighbourhood algebra is plain integer bit logic.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 512


class GraphFormatError(ValueError):
    """Raised for malformed graph6 or edge-list input."""


def bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable and hashable; all derived graphs are new objects.
    """

    __slots__ = ("_n", "_rows", "_m", "_np")

    def __init__(self, n: int, rows: Sequence[int]):
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        if len(rows) != n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << n) - 1
        rows = tuple(int(r) for r in rows)
        for v, r in enumerate(rows):
            if r & ~full:
                raise ValueError(f"row {v} references a vertex >= n")
            if (r >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(r):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        self._n = n
        self._rows = rows
        self._m = sum(r.bit_count() for r in rows) // 2
        self._np = None

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> Graph:
        # Skips validation; callers guarantee a symmetric loop-free matrix.
        g = object.__new__(cls)
        g._n = n
        g._rows = rows
        g._m = sum(r.bit_count() for r in rows) // 2
        g._np = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 0 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, [0] * n)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def vertex_mask(self) -> int:
        return (1 << self._n) - 1

    def __len__(self) -> int:
        return self._n

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self._rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self._n) for v in bits(self._rows[u] >> (u + 1) << (u + 1))]

    def as_array(self):
        """Rows as a read-only ``int64`` numpy array (requires ``n <= 63``)."""
        if self._np is None:
            import numpy as np

            if self._n > 63:
                raise ValueError("int64 row view needs n <= 63")
            arr = np.array(self._rows, dtype=np.int64)
            arr.setflags(write=False)
            self._np = arr
        return self._np

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._n, self._rows))

    def __reduce__(self):
        return (Graph._trusted, (self._n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m}, g6={to_graph6(self)!r})"


# -- serialization -----------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("n too large for graph6")


def to_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 (no header, no newline)."""
    out = [_encode_n(g.n)]
    rows = g.rows
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | ((rj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    """Decode one graph6 string (an optional ``>>graph6<<`` header is allowed)."""
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    vals = []
    for ch in s:
        o = ord(ch) - 63
        if not 0 <= o <= 63:
            raise GraphFormatError(f"invalid graph6 character {ch!r}")
        vals.append(o)
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 4 and vals[1] < 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        raise GraphFormatError("unsupported or malformed graph6 size header")
    if n > MAX_VERTICES:
        raise GraphFormatError(f"graph has {n} vertices, cap is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(f"expected {(nbits + 5) // 6} data characters, got {len(body)}")
    pad = len(body) * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def from_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines (0-indexed).

    Blank lines and ``#`` comments are skipped.  A first data line holding a
    single integer fixes the vertex count; otherwise it is one more than the
    largest endpoint.
    """
    n = None
    edges = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: not integers: {raw!r}") from None
        if first and len(nums) == 1:
            n = nums[0]
        elif len(nums) == 2:
            if min(nums) < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex")
            edges.append((nums[0], nums[1]))
        else:
            raise GraphFormatError(f"line {lineno}: expected 'u v'")
        first = False
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def to_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def adjacency_text(g: Graph) -> str:
    """0/1 matrix, one row per line; for eyeballing small graphs."""
    return "\n".join("".join("1" if (r >> u) & 1 else "0" for u in range(g.n)) for r in g.rows)


# -- parameters --------------------------------------------------------------

def degrees(g: Graph) -> tuple[list[int], int | None, int | None]:
    """Per-vertex degrees with min and max degree (``None`` for the null graph)."""
    deg = [r.bit_count() for r in g.rows]
    if not deg:
        return deg, None, None
    return deg, min(deg), max(deg)


def min_degree(g: Graph) -> int | None:
    return min((r.bit_count() for r in g.rows), default=None)


def max_degree(g: Graph) -> int | None:
    return max((r.bit_count() for r in g.rows), default=None)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph._trusted(g.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(g.rows)))


def induced_subgraph(g: Graph, vertices: int | Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices`` (a bit mask or an iterable).

    Vertices are relabelled ``0..k-1`` in ascending original order.
    """
    sel = vertices if isinstance(vertices, int) else mask_of(vertices)
    if sel & ~g.vertex_mask:
        raise ValueError("vertex set is not a subset of V(G)")
    keep = list(bits(sel))
    rows = []
    for v in keep:
        r = g.rows[v] & sel
        new = 0
        for i, u in enumerate(keep):
            if (r >> u) & 1:
                new |= 1 << i
        rows.append(new)
    return Graph._trusted(len(keep), tuple(rows))


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return _component(g.rows, 1, g.vertex_mask) == g.vertex_mask


def _component(rows: Sequence[int], start: int, within: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def components(g: Graph) -> list[int]:
    """Connected components as bit masks, ordered by smallest vertex."""
    left = g.vertex_mask
    out = []
    while left:
        comp = _component(g.rows, left & -left, left)
        out.append(comp)
        left &= ~comp
    return out


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or ``None`` if ``g`` is a forest."""
    best = None
    rows = g.rows
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] >= best:
                break
            for u in bits(rows[v]):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    cyc = dist[v] + dist[u] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def rho(g: Graph) -> Fraction:
    """Edge density |E|/|V| as an exact fraction."""
    if g.n == 0:
        raise ValueError("rho is undefined for the graph with no vertices")
    return Fraction(g.m, g.n)


def degeneracy(g: Graph) -> tuple[list[int], int, int]:
    """Smallest-last peeling.

    Returns ``(order, d, core)``: the deletion order (lowest index breaks ties),
    the degeneracy ``d`` = max over subgraphs of the minimum degree, and the
    bit mask of the remaining vertex set at the first step where the current
    minimum degree equals ``d`` (that induced subgraph has minimum degree ``d``).
    """
    rows = g.rows
    alive = g.vertex_mask
    deg = [r.bit_count() for r in rows]
    order = []
    d = -1
    core = 0
    while alive:
        v = min(bits(alive), key=lambda x: (deg[x], x))
        if deg[v] > d:
            d = deg[v]
            core = alive
        order.append(v)
        alive &= ~(1 << v)
        for u in bits(rows[v] & alive):
            deg[u] -= 1
    return order, max(d, 0), core


def coloring_number(g: Graph) -> int:
    """``col(G)`` = degeneracy + 1 (0 for the null graph)."""
    if g.n == 0:
        return 0
    return degeneracy(g)[1] + 1


def has_triangle(g: Graph) -> bool:
    rows = g.rows
    for u in range(g.n):
        for v in bits(rows[u] >> (u + 1) << (u + 1)):
            if rows[u] & rows[v]:
                return True
    return False


def clique_number(g: Graph) -> int:
    """Exact maximum clique size by branch and bound on bit rows (n <= 64)."""
    if g.n > 64:
        raise ValueError("clique_number supports n <= 64")
    rows = g.rows
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        # greedy colouring of the candidates bounds the clique they can add
        colour_of = []
        left = cand
        k = 0
        while left:
            k += 1
            avail = left
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~rows[v] & ~(1 << v)
                left &= ~(1 << v)
                colour_of.append((k, v))
        for k, v in reversed(colour_of):
            if size + k <= best:
                return
            expand(size + 1, cand & rows[v])
            cand &= ~(1 << v)

    expand(0, g.vertex_mask)
    return best


def max_clique(g: Graph) -> int:
    """Bit mask of one maximum clique (deterministic)."""
    omega = clique_number(g)
    rows = g.rows

    def find(chosen: int, cand: int, need: int) -> int | None:
        if need == 0:
            return chosen
        for v in bits(cand):
            if (cand & rows[v]).bit_count() >= need - 1:
                got = find(chosen | (1 << v), cand & rows[v] & ~((2 << v) - 1), need - 1)
                if got is not None:
                    return got
        return None

    return find(0, g.vertex_mask, omega) or 0


def chromatic_number_exact(g: Graph) -> int:
    """Exact chromatic number by DSATUR-ordered backtracking (n <= 16)."""
    n = g.n
    if n > 16:
        raise ValueError("chromatic_number_exact supports n <= 16")
    if n == 0:
        return 0
    rows = g.rows
    lower = clique_number(g)
    for k in range(lower, n + 1):
        colour = [0] * n
        if _k_colourable(rows, n, k, colour, 0):
            return k
    return n


def _k_colourable(rows: Sequence[int], n: int, k: int, colour: list[int], done: int) -> bool:
    if done == n:
        return True
    # most saturated uncoloured vertex, then highest degree, then lowest index
    best_v, best_key = -1, None
    for v in range(n):
        if colour[v]:
            continue
        sat = len({colour[u] for u in bits(rows[v]) if colour[u]})
        key = (-sat, -rows[v].bit_count(), v)
        if best_key is None or key < best_key:
            best_v, best_key = v, key
    used = {colour[u] for u in bits(rows[best_v])}
    top = max(colour) if done else 0
    for c in range(1, min(k, top + 1) + 1):
        if c in used:
            continue
        colour[best_v] = c
        if _k_colourable(rows, n, k, colour, done + 1):
            return True
        colour[best_v] = 0
    return False


def all_subsets(mask: int) -> Iterator[int]:
    """Every sub-mask of ``mask`` (including 0 and ``mask``)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs ``(i, j)``, ``i < j``, in graph6 (column-major) order."""
    return [(i, j) for j in range(1, n) for i in range(j)]


__all__ = [
    "Graph",
    "GraphFormatError",
    "MAX_VERTICES",
    "adjacency_text",
    "all_subsets",
    "bits",
    "chromatic_number_exact",
    "clique_number",
    "coloring_number",
    "complement",
    "components",
    "degeneracy",
    "degrees",
    "from_edge_list",
    "from_graph6",
    "girth",
    "has_triangle",
    "induced_subgraph",
    "is_connected",
    "mask_of",
    "max_clique",
    "max_degree",
    "min_degree",
    "pairs",
    "read_graph6_lines",
    "rho",
    "to_edge_list",
    "to_graph6",
]
