import json

import pytest

from grundy import harness
from grundy.coloring import Coloring, SolverTimeout
from grundy.generators import (GenSpec, chain_graph, complete, cycle, empty, incidence_projective_plane,
                               path, petersen, random_ktree)
from grundy.graph import complement, from_graph6
from grundy.harness import (VerifyConfig, check_chordal_bound, check_cobip_bound, check_conjecture,
                            check_log_bound, check_remark1, family_probe_kll, labeled_items, log_bound,
                            run_check)


def items(*graphs):
    return [(f"g{i}", g) for i, g in enumerate(graphs)]


def test_conjecture_rows():
    r = check_conjecture(items(cycle(5), complete(5), cycle(4)))
    assert r.skipped == 1 and r.checked == 2
    c5, k5 = r.rows
    assert (c5.delta, c5.chi_ff, c5.bound_value, c5.holds) == (2, 3, "3", True)
    assert (k5.delta, k5.chi_ff, k5.holds) == (4, 5, True)
    assert r.outcome == "PASS" and r.exit_code == 0


def test_conjecture_small_sweep_by_delta():
    r = check_conjecture(labeled_items(5))
    assert r.outcome == "PASS"
    assert r.checked + r.skipped == sum(2 ** (n * (n - 1) // 2) for n in range(1, 6))
    assert all(b["checked"] == b["holds"] for b in r.by_delta().values())
    prefiltered = check_conjecture(labeled_items(5, c4_free_only=True))
    assert prefiltered.to_csv() == r.to_csv()


def test_chordal_rows():
    r = check_chordal_bound(items(complete(6), cycle(4), random_ktree(15, 3, 1)), exact_sample=1)
    assert r.checked == 2 and r.skipped == 1
    kn, kt = r.rows
    assert (kn.chi_ff, kn.bound_value, kn.status) == (6, "6", "exact")
    assert kt.status == "certified" and kt.chi_ff >= 4 and kt.holds


def test_chordal_certified_rows_agree_with_exact():
    stream = list(items(*GenSpec("ktree", samples=40, seed=3).stream()))
    fast = check_chordal_bound(stream)
    slow = check_chordal_bound(stream, exact_sample=40)
    for a, b in zip(fast.rows, slow.rows):
        assert a.status == "certified" and b.status == "exact"
        assert b.chi_ff >= a.chi_ff >= a.delta + 1


def test_cobip_rows():
    r = check_cobip_bound(items(chain_graph(3, 4, 1), cycle(6), empty(5), cycle(5)))
    assert r.skipped == 2
    chain, emp = r.rows
    assert chain.holds and chain.status == "formula"
    assert (emp.chi_ff, emp.bound_value, emp.holds) == (5, "5", True)
    assert from_graph6(emp.graph6) == complete(5)


def test_cobip_chain_stream():
    r = check_cobip_bound(items(*GenSpec("chain", samples=300, seed=7).stream()))
    assert r.outcome == "PASS" and r.skipped == 0 and r.mismatches == 0


def test_log_bound_examples():
    r = check_log_bound(items(petersen(), incidence_projective_plane(2), cycle(5), complete(3)), m=2)
    assert r.skipped == 1
    pet, heawood, c5 = r.rows
    assert (pet.bound_value, pet.bound_display, pet.chi_ff, pet.holds) == ("log2(4)", 2, 4, True)
    assert (heawood.bound_value, heawood.chi_ff, heawood.holds) == ("log2(4)", 4, True)
    assert (c5.bound_value, c5.bound_display, c5.chi_ff, c5.holds) == ("log2(3)", 2, 3, True)


def test_log_bound_exact_comparison():
    b = log_bound(3, 2)
    assert b.test(2) and not b.test(1)
    b = log_bound(7, 2)
    assert b.test(3) and not b.test(2)
    b = log_bound(3, 3)
    assert b.expr == "log2(13/4)+1"
    assert b.test(3) and not b.test(2)
    # exact power of two sits on the boundary
    b = log_bound(2, 3)
    assert b.expr == "log2(3)+1" and b.test(3) and not b.test(2)
    with pytest.raises(ValueError):
        log_bound(3, 1)


def test_log_bound_m3_uses_induced_k23():
    r = check_log_bound(items(cycle(6), petersen()), m=3)
    assert r.checked == 2 and all(x.holds for x in r.rows)


def test_remark1_rows():
    r = check_remark1(items(complete(5), path(4), random_ktree(14, 3, 2), cycle(5)))
    assert r.skipped == 1
    kn, p4, kt = r.rows
    assert (kn.bound_value, kn.chi_ff) == ("5", 5)
    assert (p4.bound_value, p4.chi_ff, p4.holds) == ("2", 3, True)
    assert kt.bound_value == "4" and kt.chi_ff >= 4


def test_probe_table():
    table, report = family_probe_kll(2, 1, 4, samples=120, seed=3)
    assert report.outcome == "PASS"
    for delta, count, low in table:
        assert count > 0
        if delta >= 1:
            assert low >= 2
    # C4-free inputs only, so no K_{a,b} with a, b >= 2 reaches the probe
    assert all(r.c4free for r in report.rows)


def test_parallel_rows_match_serial():
    stream = list(labeled_items(5, c4_free_only=True))
    a = run_check(stream, VerifyConfig(bound="conjecture", workers=1))
    b = run_check(stream, VerifyConfig(bound="conjecture", workers=3))
    assert a.to_csv() == b.to_csv()


def test_runtime_column_is_opt_in():
    r = check_conjecture(items(cycle(5)))
    assert "runtime_us" not in r.to_csv()
    assert r.to_csv(with_runtime=True).splitlines()[0].endswith(",runtime_us")


def test_summary_json_fields():
    r = check_conjecture(items(cycle(5)))
    data = json.loads(r.summary_json({"seed": 1}))
    for key in ("checked", "passed", "failed", "inconclusive", "wall_time_s", "config", "by_delta", "status"):
        assert key in data
    assert data["config"] == {"seed": 1}


def test_failed_row_is_reverified_from_the_dump(monkeypatch, tmp_path):
    monkeypatch.setattr(harness, "_solve", lambda g, t: (1, "exact"))
    dump = tmp_path / "bad.g6"
    r = check_conjecture(items(cycle(5), path(1)), dump_g6=str(dump))
    assert r.outcome == "FAILED" and r.exit_code == 1
    assert r.confirmed == ["g0"]
    assert dump.read_text() == r.rows[0].graph6 + "\n"


def test_failure_that_does_not_reproduce_is_inconclusive(monkeypatch):
    real = harness._solve
    calls = []

    def flaky(g, t):
        calls.append(g)
        return (1, "exact") if len(calls) == 1 else real(g, t)

    monkeypatch.setattr(harness, "_solve", flaky)
    r = check_conjecture(items(cycle(5)))
    assert r.unconfirmed == ["g0"] and r.outcome == "INCONCLUSIVE" and r.exit_code == 2


def test_timeouts_are_inconclusive(monkeypatch):
    def slow(g, timeout=None, engine="auto"):
        raise SolverTimeout(1, g.n, Coloring((1,) * g.n), 0.0)

    monkeypatch.setattr(harness, "exact_grundy", slow)
    r = check_conjecture(items(cycle(5)), timeout_ms=1)
    assert r.rows[0].status == "timeout" and not r.rows[0].holds
    assert r.outcome == "INCONCLUSIVE" and r.exit_code == 2 and r.failed == 0


def test_timeout_lower_bound_can_still_prove_the_bound(monkeypatch):
    def slow(g, timeout=None, engine="auto"):
        raise SolverTimeout(3, 3, Coloring((1,) * g.n), 0.0)

    monkeypatch.setattr(harness, "exact_grundy", slow)
    r = check_conjecture(items(cycle(5)), timeout_ms=1)
    assert r.rows[0].status == "lower-bound" and r.rows[0].holds and r.outcome == "PASS"


def test_unknown_bound():
    with pytest.raises(ValueError):
        run_check([], VerifyConfig(bound="nope"))


def test_cobip_mismatch_is_a_failure(monkeypatch):
    monkeypatch.setattr(harness, "grundy_cobipartite", lambda h: h.n + 1)
    r = check_cobip_bound(items(chain_graph(3, 3, 2)))
    assert r.mismatches == 1 and r.outcome == "FAILED"
