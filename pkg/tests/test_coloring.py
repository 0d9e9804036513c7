from itertools import combinations, permutations

import numpy as np
import pytest

from grundy import _kernels
from grundy.coloring import (Coloring, PeelCertificate, SolverTimeout, _orderings_uncapped,
                             coloring_from_certificate, exact_grundy, greedy_color, grundy_oracle_orderings,
                             is_grundy_coloring, is_partial_grundy, maximal_independent_sets,
                             peel_certificate)
from grundy.generators import (SplitMix64, all_labeled_graphs, complete, complete_bipartite, cycle,
                               graph_from_mask, path, petersen, random_gnp, random_ktree, tree_tk)
from grundy.graph import (Graph, bits, chromatic_number_exact, degrees, induced_subgraph, mask_of)


def _shuffled(rng, n):
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    return order


# -- greedy_color ----------------------------------------------------------------------

def test_greedy_complete_graph_uses_every_colour():
    rng = SplitMix64(1)
    for _ in range(10):
        c = greedy_color(complete(6), _shuffled(rng, 6))
        assert sorted(c.colors) == [1, 2, 3, 4, 5, 6]


def test_greedy_p4_bad_order():
    a, b, c, d = range(4)
    col = greedy_color(path(4), (a, d, b, c))
    assert col.colors == (1, 2, 3, 1)
    assert col.k == 3


def test_greedy_k33_always_two():
    for order in permutations(range(6)):
        assert greedy_color(complete_bipartite(3, 3), order).k == 2


def test_greedy_rejects_non_permutation():
    with pytest.raises(ValueError):
        greedy_color(path(3), [0, 0, 1])


def test_greedy_outputs_are_grundy_and_respect_prefix_degree():
    rng = SplitMix64(2024)
    for t in range(1000):
        n = rng.between(1, 12)
        g = random_gnp(n, rng.random(), rng.next_u64())
        order = _shuffled(rng, n)
        c = greedy_color(g, order)
        assert is_grundy_coloring(g, c)
        placed = 0
        for v in order:
            assert c.colors[v] <= 1 + (g.rows[v] & placed).bit_count()
            placed |= 1 << v


# -- validators -------------------------------------------------------------------------

def test_is_grundy_examples():
    assert is_grundy_coloring(cycle(4), Coloring((1, 2, 1, 2)))
    assert not is_grundy_coloring(path(3), Coloring((1, 3, 1)))
    assert not is_grundy_coloring(path(3), Coloring((1, 1, 2)))
    assert not is_grundy_coloring(path(3), Coloring((1, 2, 0)))


def test_partial_grundy_examples():
    v, a, b, c, d = range(5)
    g = Graph.from_edges(5, [(v, a), (v, b), (v, c), (a, b), (b, d), (a, d)])
    assert is_partial_grundy(g, Coloring((4, 2, 3, 1, 1)))
    assert is_partial_grundy(path(4), Coloring((0, 0, 0, 0)))
    assert not is_partial_grundy(path(2), Coloring((1, 1)))


def test_partial_grundy_implies_lower_bound():
    rng = SplitMix64(77)
    for _ in range(200):
        n = rng.between(4, 11)
        g = random_gnp(n, rng.random(), rng.next_u64())
        support = [v for v in range(n) if rng.below(3)]
        if not support:
            continue
        sub = induced_subgraph(g, support)
        local = greedy_color(sub, _shuffled(rng, len(support)))
        colors = [0] * n
        for i, v in enumerate(support):
            colors[v] = local.colors[i]
        partial = Coloring(tuple(colors))
        assert is_partial_grundy(g, partial)
        assert exact_grundy(g).value >= partial.k


def test_coloring_csv_round_trip():
    c = Coloring((1, 0, 3, 2))
    assert c.to_csv() == "0:1\n2:3\n3:2\n"
    assert Coloring.from_csv(c.to_csv(), 4) == c


# -- exact solver --------------------------------------------------------------------------

@pytest.mark.parametrize("a,b", [(1, 1), (1, 4), (2, 2), (2, 5), (3, 3), (4, 6)])
def test_exact_complete_bipartite(a, b):
    assert exact_grundy(complete_bipartite(a, b)).value == 2


def test_exact_examples():
    assert exact_grundy(tree_tk(5)).value == 5
    assert exact_grundy(path(4)).value == 3
    assert exact_grundy(cycle(4)).value == 2
    res = exact_grundy(petersen())
    assert res.value == 4
    assert is_grundy_coloring(petersen(), res.witness) and res.witness.k == 4


def test_petersen_via_ordering_enumeration():
    assert _orderings_uncapped(petersen()) == 4


def test_p4_via_all_orderings():
    assert max(greedy_color(path(4), o).k for o in permutations(range(4))) == 3


def test_exact_caps_and_empty():
    assert exact_grundy(Graph.empty(0)).value == 0
    with pytest.raises(ValueError):
        exact_grundy(Graph.empty(41))
    with pytest.raises(ValueError):
        exact_grundy(path(21), engine="subsets")
    with pytest.raises(ValueError):
        exact_grundy(path(3), engine="nope")


@pytest.mark.parametrize("engine", ["witness", "subsets"])
def test_engines_agree(engine):
    rng = SplitMix64(5)
    for _ in range(150):
        n = rng.between(2, 13)
        g = random_gnp(n, rng.random(), rng.next_u64())
        res = exact_grundy(g, engine=engine)
        assert res.value == exact_grundy(g, engine="auto").value
        assert is_grundy_coloring(g, res.witness) and res.witness.k == res.value


def test_witness_engine_on_sparse_inputs():
    for k in range(1, 7):
        assert exact_grundy(tree_tk(k), engine="witness").value == k
    for seed in range(10):
        g = random_ktree(18, 2, seed)
        assert exact_grundy(g, engine="witness").value == exact_grundy(g, engine="subsets").value


def test_timeout_is_reported_with_valid_bounds():
    g = random_gnp(20, 0.5, 3)
    truth = exact_grundy(g, engine="subsets").value
    with pytest.raises(SolverTimeout) as info:
        exact_grundy(g, timeout=1e-4, engine="witness")
    e = info.value
    assert e.lower <= truth <= e.upper
    assert is_grundy_coloring(g, e.witness) and e.witness.k == e.lower


def test_witness_is_deterministic():
    g = random_gnp(14, 0.4, 8)
    assert exact_grundy(g).witness == exact_grundy(g).witness


def test_exact_matches_oracle_exhaustive_n_le_6():
    for n in range(1, 7):
        masks = np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
        fast, _ = _kernels.grundy_of_masks(n, masks)
        for mask in range(len(masks)):
            g = graph_from_mask(n, mask)
            want = grundy_oracle_orderings(g)
            assert fast[mask] == want
            if mask % 37 == 0:
                assert exact_grundy(g).value == want


def test_exact_matches_oracle_random_n_le_9():
    rng = SplitMix64(99)
    for _ in range(1000):
        n = rng.between(1, 9)
        g = random_gnp(n, rng.random(), rng.next_u64())
        assert exact_grundy(g).value == grundy_oracle_orderings(g)


def test_chi_le_grundy_le_delta_plus_one():
    rng = SplitMix64(3)
    for _ in range(300):
        n = rng.between(1, 12)
        g = random_gnp(n, rng.random(), rng.next_u64())
        gr = exact_grundy(g).value
        assert chromatic_number_exact(g) <= gr <= degrees(g)[2] + 1


def test_induced_monotonicity():
    rng = SplitMix64(11)
    for _ in range(500):
        n = rng.between(1, 9)
        g = random_gnp(n, rng.random(), rng.next_u64())
        s = rng.below(1 << n)
        assert exact_grundy(induced_subgraph(g, s)).value <= exact_grundy(g).value


def _complete_bipartite_masks(n):
    """Edge masks of all K_{a,b} (a, b >= 1) on vertex set 0..n-1."""
    out = set()
    for side in range(1, (1 << n) - 1):
        mask = 0
        b = 0
        for j in range(1, n):
            for i in range(j):
                if ((side >> i) ^ (side >> j)) & 1:
                    mask |= 1 << b
                b += 1
        out.add(mask)
    return out


def test_grundy_two_iff_complete_bipartite_connected_n_le_7():
    for n in range(1, 8):
        masks = np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
        value, conn = _kernels.grundy_of_masks(n, masks)
        got = {int(m) for m in masks[(value == 2) & conn]}
        assert got == _complete_bipartite_masks(n)


def test_oracle_examples_and_cap():
    assert grundy_oracle_orderings(complete(3)) == 3
    assert grundy_oracle_orderings(cycle(5)) == 3
    assert max(greedy_color(cycle(5), o).k for o in permutations(range(5))) == 3
    with pytest.raises(ValueError):
        grundy_oracle_orderings(path(10))


# -- maximal independent sets and peeling ------------------------------------------------

def _mis_brute(g, within):
    out = []
    verts = list(bits(within))
    for k in range(1, len(verts) + 1):
        for sub in combinations(verts, k):
            s = mask_of(sub)
            if any(g.rows[v] & s for v in sub):
                continue
            if all(g.rows[u] & s for u in verts if not (s >> u) & 1):
                out.append(s)
    return sorted(out)


def test_maximal_independent_sets_against_brute_force():
    rng = SplitMix64(4)
    for _ in range(100):
        n = rng.between(1, 9)
        g = random_gnp(n, rng.random(), rng.next_u64())
        within = rng.below(1 << n) | 1
        got = list(maximal_independent_sets(g, within))
        assert len(got) == len(set(got))
        assert sorted(got) == _mis_brute(g, within)


def _peel_exists_brute(g, alive):
    if alive == 0:
        return True
    rows = g.rows

    def mindeg(s):
        return min((rows[v] & s).bit_count() for v in bits(s))

    floor = mindeg(alive) - 1
    for layer in _mis_brute(g, alive):
        rest = alive & ~layer
        if rest and mindeg(rest) < floor:
            continue
        if _peel_exists_brute(g, rest):
            return True
    return False


def test_peel_examples():
    cert = peel_certificate(complete(5))
    assert cert is not None and cert.layers == ((0,), (1,), (2,), (3,), (4,))
    assert peel_certificate(cycle(5)) is None
    g = random_ktree(12, 3, 2)
    cert = peel_certificate(g)
    assert cert is not None and cert.t >= 4
    col = coloring_from_certificate(g, cert)
    assert is_grundy_coloring(g, col) and col.k == cert.t >= degrees(g)[1] + 1
    assert cert.t <= exact_grundy(g).value


def test_peel_existence_against_brute_force():
    rng = SplitMix64(8)
    for _ in range(120):
        n = rng.between(1, 8)
        g = random_gnp(n, rng.random(), rng.next_u64())
        cert = peel_certificate(g)
        assert (cert is not None) == _peel_exists_brute(g, g.vertex_mask)
        if cert is not None:
            col = coloring_from_certificate(g, cert)
            assert is_grundy_coloring(g, col)
            assert cert.t >= degrees(g)[1] + 1


def test_peel_layers_satisfy_the_degree_condition():
    for seed in range(30):
        g = random_ktree(11, 1 + seed % 4, seed)
        cert = peel_certificate(g)
        assert cert is not None
        alive = g.vertex_mask
        for layer in cert.layers:
            before = min((g.rows[v] & alive).bit_count() for v in bits(alive))
            alive &= ~mask_of(layer)
            if alive:
                after = min((g.rows[v] & alive).bit_count() for v in bits(alive))
                assert after >= before - 1


def test_certificate_text_round_trip_and_validation():
    g = complete(3)
    cert = peel_certificate(g)
    assert cert.to_text() == "0\n1\n2\n"
    assert PeelCertificate.from_text(cert.to_text()) == cert
    assert coloring_from_certificate(g, cert).colors == (1, 2, 3)
    with pytest.raises(ValueError):
        coloring_from_certificate(g, PeelCertificate(((0,), (1,))))
    with pytest.raises(ValueError):
        coloring_from_certificate(path(3), PeelCertificate(((0,), (1, 2))))
    with pytest.raises(ValueError):
        peel_certificate(Graph.empty(0))
