"""Compiled inner loops.

Graphs arrive as ``int64`` arrays of adjacency rows (``n <= 63``); vertex and
edge sets are ``int64`` bit masks.  Nothing here validates input: the public
wrappers do that.
"""

import numpy as np
from numba import njit

FOUND = 1
EXHAUSTED = 0
OUT_OF_BUDGET = -1


@njit(cache=True)
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def lowest(x):
    # index of the lowest set bit of a nonzero mask
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def greedy_colors(adj, n, order, out):
    """First-Fit along ``order``; writes colours into ``out`` and returns the count."""
    for v in range(n):
        out[v] = 0
    top = 0
    for idx in range(n):
        v = order[idx]
        used = 0
        x = adj[v]
        while x:
            u = lowest(x)
            x &= x - 1
            if out[u] > 0:
                used |= np.int64(1) << out[u]
        c = 1
        while (used >> c) & 1:
            c += 1
        out[v] = c
        if c > top:
            top = c
    return top


@njit(cache=True)
def grundy_upper_bounds(adj, n):
    """Per-vertex ceiling on the colour a vertex can take in any Grundy colouring.

    A vertex of colour j needs distinct neighbours able to take colours
    1..j-1, so the ceiling is refined to a fixpoint starting from deg + 1.
    """
    b = np.empty(n, np.int64)
    for v in range(n):
        b[v] = popcount(adj[v]) + 1
    tmp = np.empty(max(n, 1), np.int64)
    changed = True
    while changed:
        changed = False
        for v in range(n):
            cnt = 0
            x = adj[v]
            while x:
                u = lowest(x)
                x &= x - 1
                tmp[cnt] = b[u]
                cnt += 1
            s = np.sort(tmp[:cnt])
            t = 0
            for i in range(cnt):
                if s[i] >= t + 1:
                    t += 1
            if t + 1 < b[v]:
                b[v] = t + 1
                changed = True
    return b


@njit(cache=True)
def _colour_classes(adj, p):
    """Classes used by a greedy colouring of ``p``; an upper bound on its clique number."""
    c = 0
    while p:
        c += 1
        avail = p
        while avail:
            v = lowest(avail)
            avail &= ~(adj[v] | (np.int64(1) << v))
            p &= ~(np.int64(1) << v)
    return c


@njit(cache=True)
def clique_number_rows(adj, n):
    """Maximum clique size by branch and bound with a greedy colouring bound."""
    if n == 0:
        return 0
    best = 0
    st_r = np.empty(n + 1, np.int64)
    st_p = np.empty(n + 1, np.int64)
    st_r[0] = 0
    st_p[0] = (np.int64(1) << n) - 1
    d = 0
    while d >= 0:
        p = st_p[d]
        r = st_r[d]
        if p == 0:
            if r > best:
                best = r
            d -= 1
            continue
        if r + _colour_classes(adj, p) <= best:
            d -= 1
            continue
        v = lowest(p)
        st_p[d] = p & ~(np.int64(1) << v)
        st_r[d + 1] = r + 1
        st_p[d + 1] = p & adj[v]
        d += 1
    return best


@njit(cache=True)
def search_level(adj, n, ub, k, root, color, counter, budget):
    """Look for a partial Grundy colouring in which ``root`` gets colour ``k``.

    Depth-first over open demands: a coloured vertex of colour j with no
    neighbour of colour i < j.  Every uncoloured vertex keeps a mask of the
    colours it may still take (proper, not barred, and with neighbours able
    to supply all lower colours, iterated to a fixpoint); the demand with
    fewest candidates is branched on.  Branch j of a demand bars the earlier
    candidates from colour i, so any Grundy colouring reaching k falls in
    exactly one branch.  On FOUND, ``color`` holds the witness (0 = uncoloured).
    """
    one = np.int64(1)
    for v in range(n):
        color[v] = 0
    cap = np.empty(n, np.int64)
    for v in range(n):
        lim = min(ub[v], k - 1)
        cap[v] = (one << (lim + 1)) - 2
    vbar = np.zeros(n, np.int64)
    poss = np.zeros(n, np.int64)
    st_u = np.empty(n, np.int64)
    st_i = np.empty(n, np.int64)
    st_cand = np.empty(n, np.int64)
    st_orig = np.empty(n, np.int64)

    color[root] = k
    colored = one << root
    depth = 0
    none = n + 1
    while True:
        # colour masks: singletons for coloured vertices, candidates otherwise
        for u in range(n):
            if color[u] > 0:
                poss[u] = one << color[u]
                continue
            forbidden = vbar[u]
            x = adj[u] & colored
            while x:
                w = lowest(x)
                x &= x - 1
                forbidden |= one << color[w]
            poss[u] = cap[u] & ~forbidden
        changed = True
        while changed:
            changed = False
            for u in range(n):
                p = poss[u]
                if color[u] > 0 or p == 0:
                    continue
                avail = np.int64(0)
                x = adj[u]
                while x:
                    w = lowest(x)
                    x &= x - 1
                    avail |= poss[w]
                t = 1
                while (avail >> t) & 1:
                    t += 1
                q = p & ((one << (t + 1)) - 1)
                if q != p:
                    poss[u] = q
                    changed = True
        best_cnt = none
        best_i = 0
        best_cand = np.int64(0)
        x = colored
        while x:
            w = lowest(x)
            x &= x - 1
            aw = adj[w]
            seen = np.int64(0)
            y = aw & colored
            while y:
                z = lowest(y)
                y &= y - 1
                seen |= one << color[z]
            for i in range(1, color[w]):
                if (seen >> i) & 1:
                    continue
                cand = np.int64(0)
                y = aw & ~colored
                while y:
                    z = lowest(y)
                    y &= y - 1
                    if (poss[z] >> i) & 1:
                        cand |= one << z
                c = popcount(cand)
                if c < best_cnt:
                    best_cnt = c
                    best_i = i
                    best_cand = cand
                    if c == 0:
                        break
            if best_cnt == 0:
                break
        if best_cnt == none:
            return FOUND
        counter[0] += 1
        if counter[0] > budget:
            return OUT_OF_BUDGET
        if best_cnt == 0:
            # backtrack to the most recent frame with an untried candidate
            while True:
                if depth == 0:
                    return EXHAUSTED
                depth -= 1
                u = st_u[depth]
                i = st_i[depth]
                color[u] = 0
                colored &= ~(one << u)
                if st_cand[depth] != 0:
                    vbar[u] |= one << i
                    break
                y = st_orig[depth]
                while y:
                    z = lowest(y)
                    y &= y - 1
                    vbar[z] &= ~(one << i)
        else:
            st_i[depth] = best_i
            st_cand[depth] = best_cand
            st_orig[depth] = best_cand
        cand = st_cand[depth]
        u = lowest(cand)
        st_cand[depth] = cand & (cand - 1)
        st_u[depth] = u
        color[u] = st_i[depth]
        colored |= one << u
        depth += 1


@njit(cache=True)
def extend_witness(adj, n, partial, out):
    """Greedy order: witness vertices by colour, then the rest by index."""
    order = np.empty(n, np.int64)
    pos = 0
    top = 0
    for v in range(n):
        if partial[v] > top:
            top = partial[v]
    for c in range(1, top + 1):
        for v in range(n):
            if partial[v] == c:
                order[pos] = v
                pos += 1
    for v in range(n):
        if partial[v] == 0:
            order[pos] = v
            pos += 1
    return greedy_colors(adj, n, order, out)


@njit(cache=True)
def grundy_exact(adj, n, budget, out):
    """Exact Grundy number by iterative deepening over witness searches.

    Returns ``(status, best, upper)``.  ``out`` holds a full First-Fit colouring
    with ``best`` colours.  With status OUT_OF_BUDGET, ``best`` is only a
    proven lower bound.
    """
    if n == 0:
        return EXHAUSTED, 0, 0
    ub = grundy_upper_bounds(adj, n)
    upper = 0
    for v in range(n):
        if ub[v] > upper:
            upper = ub[v]
    # singleton colour classes are pairwise adjacent, the rest have two or more vertices
    cap = (n + clique_number_rows(adj, n)) // 2
    if cap < upper:
        upper = cap
    order = np.arange(n)
    best = greedy_colors(adj, n, order, out)
    partial = np.zeros(n, np.int64)
    full = np.zeros(n, np.int64)
    counter = np.zeros(1, np.int64)
    k = best + 1
    while k <= upper:
        found = False
        for r in range(n):
            if ub[r] < k:
                continue
            st = search_level(adj, n, ub, k, r, partial, counter, budget)
            if st == OUT_OF_BUDGET:
                return OUT_OF_BUDGET, best, upper
            if st == FOUND:
                got = extend_witness(adj, n, partial, full)
                if got > best:
                    best = got
                    for v in range(n):
                        out[v] = full[v]
                found = True
                break
        if not found:
            upper = k - 1
            break
        k = best + 1
    if best > upper:
        upper = best
    return EXHAUSTED, best, upper


# -- subset dynamic programme --------------------------------------------

DP_DIRECT_MAX = 10
DP_MAX = 20


@njit(cache=True)
def _mis_scan(adj, s, table, want, st_r, st_p, st_x):
    """Scan maximal independent sets I of G[s] (Bron-Kerbosch on non-adjacency).

    Returns ``(best, argbest)`` where best = max table[s - I].  If ``want``
    is nonnegative the scan stops at the first I reaching it.
    """
    one = np.int64(1)
    best = -1
    arg = np.int64(0)
    depth = 0
    st_r[0] = 0
    st_p[0] = s
    st_x[0] = 0
    while depth >= 0:
        p = st_p[depth]
        if p == 0:
            if st_x[depth] == 0:
                val = table[s & ~st_r[depth]]
                if val > best:
                    best = val
                    arg = st_r[depth]
                    if val == want:
                        return best, arg
            depth -= 1
            continue
        v = lowest(p)
        st_p[depth] = p & ~(one << v)
        keep = s & ~adj[v] & ~(one << v)
        st_r[depth + 1] = st_r[depth] | (one << v)
        st_p[depth + 1] = p & keep
        st_x[depth + 1] = st_x[depth] & keep
        st_x[depth] |= one << v
        depth += 1
    return best, arg


@njit(cache=True)
def grundy_subset_dp(adj, n, out):
    """Grundy number via every induced subgraph, bottom-up over vertex subsets.

    The lowest colour class of a Grundy colouring is a maximal independent
    set of G and what remains is a Grundy colouring of G minus that set, so
    Gamma(S) = 1 + max over maximal independent I of G[S] of Gamma(S - I).
    Writes a colouring attaining the maximum into ``out``.
    """
    if n == 0:
        return 0
    size = np.int64(1) << n
    table = np.zeros(size, np.int8)
    st_r = np.empty(n + 1, np.int64)
    st_p = np.empty(n + 1, np.int64)
    st_x = np.empty(n + 1, np.int64)
    for s in range(1, size):
        best, _ = _mis_scan(adj, s, table, -1, st_r, st_p, st_x)
        table[s] = best + 1
    s = size - 1
    c = 1
    while s:
        _, layer = _mis_scan(adj, s, table, table[s] - 1, st_r, st_p, st_x)
        x = layer
        while x:
            v = lowest(x)
            x &= x - 1
            out[v] = c
        s &= ~layer
        c += 1
    return np.int64(table[size - 1])


@njit(cache=True)
def grundy_auto(adj, n, budget, out):
    """Engine selection: subset DP for tiny graphs, witness search first otherwise."""
    if n <= DP_DIRECT_MAX:
        v = grundy_subset_dp(adj, n, out)
        return EXHAUSTED, v, v
    if n <= DP_MAX:
        st, best, upper = grundy_exact(adj, n, min(budget, np.int64(1) << (n - 2)), out)
        if st == EXHAUSTED:
            return st, best, upper
        v = grundy_subset_dp(adj, n, out)
        return EXHAUSTED, v, v
    return grundy_exact(adj, n, budget, out)


# -- edge domination -------------------------------------------------------

@njit(cache=True)
def _edge_arrays(adj, n):
    m = 0
    for u in range(n):
        m += popcount(adj[u] >> (u + 1))
    eu = np.empty(m, np.int64)
    ev = np.empty(m, np.int64)
    e = 0
    for v in range(1, n):
        for u in range(v):
            if (adj[u] >> v) & 1:
                eu[e] = u
                ev[e] = v
                e += 1
    inc = np.zeros(n, np.int64)
    for e in range(m):
        inc[eu[e]] |= np.int64(1) << e
        inc[ev[e]] |= np.int64(1) << e
    return m, eu, ev, inc


@njit(cache=True)
def min_edge_dominating(adj, n, matching_only):
    """Minimum edge dominating set by branch and bound; returns ``(size, edge_mask)``.

    Every dominating set must use an edge touching an endpoint of the lowest
    undominated edge, so that is what gets branched on.  With
    ``matching_only`` the chosen edges must stay vertex-disjoint, which
    searches minimum maximal matchings instead.  Edges are numbered in
    graph6 pair order.
    """
    m, eu, ev, inc = _edge_arrays(adj, n)
    if m == 0:
        return 0, np.int64(0)
    all_edges = (np.int64(1) << m) - 1
    maxdom = 1
    for e in range(m):
        d = popcount(inc[eu[e]] | inc[ev[e]])
        if d > maxdom:
            maxdom = d
    # greedy maximal matching seeds the incumbent
    best_mask = np.int64(0)
    dom = np.int64(0)
    size = 0
    for e in range(m):
        if not (dom >> e) & 1:
            best_mask |= np.int64(1) << e
            dom |= inc[eu[e]] | inc[ev[e]]
            size += 1
    best = size

    st_dom = np.empty(m + 1, np.int64)
    st_chosen = np.empty(m + 1, np.int64)
    st_cand = np.empty(m + 1, np.int64)
    depth = 0
    st_dom[0] = 0
    st_chosen[0] = 0
    st_cand[0] = -1  # not yet expanded
    while depth >= 0:
        dom = st_dom[depth]
        chosen = st_chosen[depth]
        if st_cand[depth] == -1:
            undominated = all_edges & ~dom
            if undominated == 0:
                if depth < best:
                    best = depth
                    best_mask = chosen
                depth -= 1
                continue
            lb = (popcount(undominated) + maxdom - 1) // maxdom
            if depth + lb >= best:
                depth -= 1
                continue
            e = lowest(undominated)
            cand = (inc[eu[e]] | inc[ev[e]]) & ~chosen
            if matching_only:
                cand &= ~dom
            st_cand[depth] = cand
        cand = st_cand[depth]
        if cand == 0 or depth + 1 >= best:
            depth -= 1
            continue
        f = lowest(cand)
        st_cand[depth] = cand & (cand - 1)
        st_dom[depth + 1] = dom | inc[eu[f]] | inc[ev[f]]
        st_chosen[depth + 1] = chosen | (np.int64(1) << f)
        st_cand[depth + 1] = -1
        depth += 1
    return best, best_mask


# -- enumeration -----------------------------------------------------------

@njit(cache=True)
def rows_from_mask(n, mask, adj):
    for v in range(n):
        adj[v] = 0
    b = 0
    for j in range(1, n):
        for i in range(j):
            if (mask >> b) & 1:
                adj[i] |= np.int64(1) << j
                adj[j] |= np.int64(1) << i
            b += 1


@njit(cache=True)
def _first_in_each_component_on_side(n, adj, side):
    # canonical bipartition: the minimum vertex of every component lies in `side`
    seen = np.int64(0)
    for s in range(n):
        if (seen >> s) & 1:
            continue
        if not (side >> s) & 1:
            return False
        comp = np.int64(1) << s
        frontier = comp
        while frontier:
            nxt = np.int64(0)
            x = frontier
            while x:
                v = lowest(x)
                x &= x - 1
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
    return True


@njit(cache=True)
def labeled_bipartite_masks(n):
    """Edge masks (graph6 pair order) of all labeled bipartite graphs on n vertices, sorted."""
    npairs = n * (n - 1) // 2
    pair_bit = np.zeros((max(n, 1), max(n, 1)), np.int64)
    b = 0
    for j in range(1, n):
        for i in range(j):
            pair_bit[i, j] = b
            pair_bit[j, i] = b
            b += 1
    cap = 1024
    out = np.empty(cap, np.int64)
    cnt = 0
    adj = np.zeros(max(n, 1), np.int64)
    cross = np.empty(max(npairs, 1), np.int64)
    for side in range(1 << n):
        if n > 0 and not side & 1:
            continue
        nc = 0
        for j in range(1, n):
            for i in range(j):
                if ((side >> i) & 1) != ((side >> j) & 1):
                    cross[nc] = pair_bit[i, j]
                    nc += 1
        for sub in range(1 << nc):
            mask = np.int64(0)
            for t in range(nc):
                if (sub >> t) & 1:
                    mask |= np.int64(1) << cross[t]
            rows_from_mask(n, mask, adj)
            if _first_in_each_component_on_side(n, adj, side):
                if cnt == cap:
                    cap *= 2
                    grown = np.empty(cap, np.int64)
                    grown[:cnt] = out[:cnt]
                    out = grown
                out[cnt] = mask
                cnt += 1
    res = np.sort(out[:cnt])
    return res


@njit(cache=True)
def has_induced_c4(adj, n):
    for u in range(n):
        for w in range(u + 1, n):
            if (adj[u] >> w) & 1:
                continue
            common = adj[u] & adj[w]
            x = common
            while x:
                a = lowest(x)
                x &= x - 1
                if common & ~adj[a] & ~(np.int64(1) << a) & ~((np.int64(2) << a) - 1):
                    return True
    return False


@njit(cache=True)
def c4_free_masks(n):
    """Edge masks of all labeled C4-free graphs on n vertices, ascending."""
    total = np.int64(1) << (n * (n - 1) // 2)
    keep = np.zeros(total, np.bool_)
    adj = np.zeros(max(n, 1), np.int64)
    for mask in range(total):
        rows_from_mask(n, mask, adj)
        keep[mask] = not has_induced_c4(adj, n)
    return np.nonzero(keep)[0].astype(np.int64)


@njit(cache=True)
def cobip_formula_sweep(n, masks, budget):
    """For each bipartite H: Grundy number of its complement vs n - edge domination.

    Returns per-graph arrays ``(grundy, gamma, gamma_matching, status)``.
    """
    cnt = masks.shape[0]
    grundy = np.empty(cnt, np.int64)
    gamma = np.empty(cnt, np.int64)
    gamma_m = np.empty(cnt, np.int64)
    status = np.empty(cnt, np.int64)
    adj = np.zeros(max(n, 1), np.int64)
    comp = np.zeros(max(n, 1), np.int64)
    out = np.zeros(max(n, 1), np.int64)
    full = (np.int64(1) << n) - 1
    for t in range(cnt):
        rows_from_mask(n, masks[t], adj)
        for v in range(n):
            comp[v] = full & ~adj[v] & ~(np.int64(1) << v)
        st, best, _ = grundy_auto(comp, n, budget, out)
        grundy[t] = best
        status[t] = st
        g1, _ = min_edge_dominating(adj, n, False)
        g2, _ = min_edge_dominating(adj, n, True)
        gamma[t] = g1
        gamma_m[t] = g2
    return grundy, gamma, gamma_m, status


@njit(cache=True)
def max_first_fit_orderings(adj, n):
    """Largest First-Fit colour count over all n! vertex orderings.

    Plain depth-first walk of the ordering prefix tree; each vertex is
    coloured greedily when appended and uncoloured on backtrack.
    """
    if n == 0:
        return 0
    one = np.int64(1)
    color = np.zeros(n, np.int64)
    st_left = np.empty(n + 1, np.int64)
    st_v = np.empty(n + 1, np.int64)
    full = (one << n) - 1
    best = 0
    depth = 0
    st_left[0] = full
    used = np.int64(0)
    while depth >= 0:
        left = st_left[depth] & ~used
        if left == 0:
            # all candidates at this depth tried: undo the vertex placed at depth-1
            depth -= 1
            if depth >= 0:
                v = st_v[depth]
                color[v] = 0
                used &= ~(one << v)
            continue
        v = lowest(left)
        st_left[depth] &= ~(one << v)
        seen = np.int64(0)
        x = adj[v] & used
        while x:
            u = lowest(x)
            x &= x - 1
            seen |= one << color[u]
        c = 1
        while (seen >> c) & 1:
            c += 1
        if c > best:
            best = c
        color[v] = c
        used |= one << v
        st_v[depth] = v
        depth += 1
        if depth == n:
            depth -= 1
            color[v] = 0
            used &= ~(one << v)
            continue
        st_left[depth] = full
    return best


@njit(cache=True)
def connected_rows(adj, n):
    if n == 0:
        return True
    one = np.int64(1)
    seen = one
    frontier = one
    while frontier:
        nxt = np.int64(0)
        x = frontier
        while x:
            v = lowest(x)
            x &= x - 1
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (one << n) - 1


@njit(cache=True)
def grundy_of_masks(n, masks):
    """Grundy number and connectivity of each labeled graph given by its edge mask (n <= 10)."""
    cnt = masks.shape[0]
    value = np.empty(cnt, np.int64)
    conn = np.empty(cnt, np.bool_)
    adj = np.zeros(max(n, 1), np.int64)
    col = np.zeros(max(n, 1), np.int64)
    for t in range(cnt):
        rows_from_mask(n, masks[t], adj)
        value[t] = grundy_subset_dp(adj, n, col)
        conn[t] = connected_rows(adj, n)
    return value, conn
