import pytest

from grundy.cobipartite import bipartition
from grundy.detect import has_induced_c4, is_2k2_free, is_chordal
from grundy.generators import (FAMILIES, GenSpec, SplitMix64, all_labeled_graphs, bipartite_masks,
                               c4_free_masks, chain_graph, chain_graph_from_thresholds, complete,
                               complete_bipartite, cycle, empty, graph_from_mask, graph_mask,
                               incidence_projective_plane, path, random_gnp, random_ktree, tree_tk)
from grundy.graph import (clique_number, degrees, girth, is_connected, to_graph6)


def test_splitmix64_reference_stream():
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]
    rng = SplitMix64(1234567)
    assert rng.next_u64() == 6457827717110365317


def test_splitmix64_helpers_stay_in_range():
    rng = SplitMix64(9)
    for _ in range(2000):
        assert 0 <= rng.random() < 1
        assert 3 <= rng.between(3, 7) <= 7
        assert 0 <= rng.below(5) < 5
    with pytest.raises(ValueError):
        rng.below(0)


def test_tree_tk_small_cases():
    assert tree_tk(1).n == 1 and tree_tk(1).m == 0
    assert tree_tk(2) == complete(2)
    t3 = tree_tk(3)
    assert t3.n == 4 and t3.m == 3 and degrees(t3)[2] == 2 and is_connected(t3)


@pytest.mark.parametrize("k", range(1, 11))
def test_tree_tk_shape(k):
    t = tree_tk(k)
    assert t.n == 2 ** (k - 1)
    assert t.m == t.n - 1 and is_connected(t) and girth(t) is None


def test_tree_tk_range():
    for bad in (0, 11):
        with pytest.raises(ValueError):
            tree_tk(bad)


def test_standard_families():
    c4 = complete_bipartite(2, 2)
    assert c4.m == 4 and degrees(c4)[1:] == (2, 2) and is_connected(c4)
    assert cycle(3) == complete(3)
    assert path(4).m == 3
    for bad in (lambda: cycle(2), lambda: path(0), lambda: complete(0), lambda: complete_bipartite(0, 3)):
        with pytest.raises(ValueError):
            bad()


def test_random_ktree():
    assert random_ktree(4, 3, 1) == complete(4)
    for seed in range(100):
        k = 1 + seed % 6
        g = random_ktree(20, k, seed)
        assert is_chordal(g)
        assert degrees(g)[1] == k
        assert clique_number(g) == k + 1
        assert g.m == k * (k + 1) // 2 + (20 - k - 1) * k
    g = random_ktree(12, 3, 42)
    assert degrees(g)[1] == 3 and clique_number(g) == 4
    with pytest.raises(ValueError):
        random_ktree(3, 3, 0)


def test_chain_graphs():
    assert chain_graph_from_thresholds(3, [3, 3]) == complete_bipartite(2, 3)
    assert chain_graph_from_thresholds(3, [0, 0]).m == 0
    for seed in range(300):
        h = chain_graph(1 + seed % 6, 1 + (seed // 6) % 6, seed)
        assert is_2k2_free(h) and bipartition(h)


def test_projective_planes():
    for q in (2, 3, 5, 7):
        g = incidence_projective_plane(q)
        big = q * q + q + 1
        assert g.n == 2 * big
        assert degrees(g)[1:] == (q + 1, q + 1)
        assert girth(g) == 6
        assert bipartition(g)
        assert not has_induced_c4(g)
    assert incidence_projective_plane(3).n == 26
    with pytest.raises(ValueError):
        incidence_projective_plane(4)


def test_labeled_streams():
    assert sum(1 for _ in all_labeled_graphs(3)) == 8
    assert sum(1 for _ in all_labeled_graphs(4)) == 64
    assert len(list(all_labeled_graphs(1))) == 1
    with pytest.raises(ValueError):
        next(all_labeled_graphs(8))


def test_labeled_stream_n7_size():
    # the last graph of the ascending stream is K_7
    count = 0
    last = None
    for last in all_labeled_graphs(7):
        count += 1
    assert count == 2 ** 21 and last == complete(7)


def test_mask_round_trip():
    for seed in range(50):
        g = random_gnp(8, 0.5, seed)
        assert graph_from_mask(8, graph_mask(g)) == g


def test_exhaustive_class_counts():
    # labeled bipartite graphs and labeled C4-free graphs, independently counted
    assert [len(bipartite_masks(n)) for n in range(1, 8)] == [1, 2, 7, 41, 376, 5177, 103237]
    assert [len(c4_free_masks(n)) for n in range(1, 7)] == [1, 2, 8, 61, 834, 19258]
    for n in range(1, 6):
        bip = {graph_mask(g) for g in all_labeled_graphs(n) if bipartition(g)}
        assert bip == {int(x) for x in bipartite_masks(n)}
        free = {graph_mask(g) for g in all_labeled_graphs(n) if not has_induced_c4(g)}
        assert free == {int(x) for x in c4_free_masks(n)}


def test_gnp_extremes_and_determinism():
    assert random_gnp(6, 0.0, 5).m == 0
    assert random_gnp(6, 1.0, 5) == complete(6)
    assert to_graph6(random_gnp(12, 0.4, 2026)) == to_graph6(random_gnp(12, 0.4, 2026))
    with pytest.raises(ValueError):
        random_gnp(4, 1.5, 0)


def test_genspec_streams_are_reproducible():
    for fam, kw in [("ktree", {}), ("chain", {}), ("gnp", {}), ("ktree", {"k": 3, "n": 12}),
                    ("gnp", {"n": 8, "p": 0.3})]:
        a = [to_graph6(g) for g in GenSpec(fam, seed=5, samples=20, **kw).stream()]
        b = [to_graph6(g) for g in GenSpec(fam, seed=5, samples=20, **kw).stream()]
        assert a == b and len(set(a)) > 1
    assert GenSpec("tk", k=4).build() == tree_tk(4)
    assert GenSpec("plane", q=2).build() == incidence_projective_plane(2)
    assert GenSpec("bipartite", a=2, b=3).build() == complete_bipartite(2, 3)
    with pytest.raises(ValueError):
        GenSpec("tk").build()
    with pytest.raises(ValueError):
        GenSpec("nope").build()
    assert "ktree" in FAMILIES and empty(3).m == 0
