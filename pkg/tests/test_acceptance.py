"""Acceptance criteria, each at its stated budget.

Every test records one PASS/FAIL line, printed in the pytest terminal summary
under "acceptance criteria". The long-running searches go through the CLI
entry point, the same path a shell user would take.
"""
from __future__ import annotations

import json
import random
import time
from math import comb

import pytest

from test_witness import check_assignment
from vcx.analysis import transversal_number
from vcx.bits import colex_k_subsets, elements_of
from vcx.cli import main
from vcx.constructions import ak_bound, bound_table, paper_family, random_family
from vcx.core import Family, incremental_vc_check, uniform_vc_at_most, vc_dimension
from vcx.formats import from_json_obj
from vcx.witness import blc_summary, witness_assignment


def cli_json(capsys, *argv):
    start = time.perf_counter()
    code = main(list(argv))
    elapsed = time.perf_counter() - start
    return code, json.loads(capsys.readouterr().out), elapsed


def test_criterion_1_n6(capsys, record):
    code, rep, t_fast = cli_json(capsys, "search-max", "--n", "6", "--k", "3", "--d", "2")
    fast_ok = code == 0 and rep["optimum"] == 13 and rep["verified"] and t_fast < 10
    code_b, base, t_base = cli_json(capsys, "search-max", "--n", "6", "--k", "3", "--d", "2", "--baseline")
    base_ok = code_b == 0 and base["optimum"] == 13 and base["verified"] and t_base < 600
    record(
        "1",
        fast_ok and base_ok,
        f"n=6 M={rep['optimum']} in {t_fast:.2f}s (<10s); baseline M={base['optimum']} in {t_base:.1f}s (<600s)",
    )
    assert fast_ok and base_ok


def test_criterion_2_n7(capsys, record):
    code, rep, t = cli_json(capsys, "search-max", "--n", "7", "--k", "3", "--d", "2", "--workers", "8")
    ok = code == 0 and rep["complete"] and rep["optimum"] == 16 and rep["verified"] and t <= 1800
    record("2", ok, f"n=7 M={rep.get('optimum')} with 8 workers in {t:.1f}s (<=1800s)")
    assert ok


def test_criterion_3_small_n(capsys, record):
    details, ok = [], True
    for n in (3, 4, 5):
        code, rep, t = cli_json(capsys, "search-max", "--n", str(n))
        good = code == 0 and rep["optimum"] == comb(n, 3) and t < 1
        ok &= good
        details.append(f"n={n} M={rep['optimum']} ({t:.3f}s)")
    record("3", ok, "; ".join(details) + " vs binom(n,3), each <1s")
    assert ok


def test_criterion_4_fixtures(record):
    timings = {}
    start = time.perf_counter()
    f6 = paper_family("f6_13")
    ok6 = len(f6) == 13 and vc_dimension(f6) == 2
    timings["f6_13"] = time.perf_counter() - start
    start = time.perf_counter()
    f7 = paper_family("f7_16")
    ok7 = len(f7) == 16 and vc_dimension(f7) == 2 and transversal_number(f7).tau == 3
    timings["f7_16"] = time.perf_counter() - start
    start = time.perf_counter()
    f8 = paper_family("f8_45")
    ok8 = (
        len(f8) == 45 and f8.n == 8 and f8.uniform_k == 4
        and vc_dimension(f8) == 3 and len(f8) > ak_bound(8, 3) == 39
    )
    timings["f8_45"] = time.perf_counter() - start
    fast = all(t < 1 for t in timings.values())
    ok = ok6 and ok7 and ok8 and fast
    record("4", ok, ", ".join(f"{k} ok in {v:.3f}s" for k, v in timings.items()))
    assert ok


def test_criterion_5_decide(capsys, record):
    code, none, t7 = cli_json(capsys, "decide", "--n", "7", "--k", "3", "--d", "2", "--target", "17", "--workers", "8")
    ok7 = code == 0 and none["complete"] and none["exists"] is False and t7 <= 1800
    code, some, t8 = cli_json(capsys, "decide", "--n", "8", "--k", "3", "--d", "2", "--target", "22")
    cert = from_json_obj(some["certificate"]) if some.get("certificate") else None
    ok8 = (
        code == 0 and some["exists"] is True and some["verified"]
        and cert is not None and len(cert) == 22 and uniform_vc_at_most(cert, 2) and t8 <= 7200
    )
    record("5", ok7 and ok8, f"n=7 target 17: none, proved in {t7:.1f}s; n=8 target 22: verified family in {t8:.2f}s")
    assert ok7 and ok8


def test_criterion_6_property_suite(record):
    rng = random.Random(2024)
    start = time.perf_counter()
    violations = {"a": 0, "b": 0, "c": 0, "d": 0}
    for seed in range(1000):
        n = rng.randint(4, 8)
        fam = random_family(n, 3, 2, rng.randint(1, comb(n, 3)), seed)
        # (a) incremental vs full recheck, every candidate
        for c in colex_k_subsets(n, 3):
            if c in fam.masks:
                continue
            ext = Family(fam.ground, fam.masks + (c,), 3)
            full = uniform_vc_at_most(ext, 2)
            if incremental_vc_check(fam, c, 2) != full:
                violations["a"] += 1
            # (b) on a sample of extensions, some of which exceed VC 2
            if c % 7 == seed % 7 and full != (vc_dimension(ext) <= 2):
                violations["b"] += 1
        if uniform_vc_at_most(fam, 2) != (vc_dimension(fam) <= 2):
            violations["b"] += 1
        # (c) defining property, maximality, pair-witness distinctness
        try:
            check_assignment(fam)
        except AssertionError:
            violations["c"] += 1
        # (d) m == #size-2 + #size-1 + #size-0 witnesses
        counts = blc_summary(witness_assignment(fam)).size_counts
        if sum(counts.get(s, 0) for s in (0, 1, 2)) != len(fam):
            violations["d"] += 1
    elapsed = time.perf_counter() - start
    ok = not any(violations.values()) and elapsed < 120
    record("6", ok, f"1000 families, violations {violations}, {elapsed:.1f}s (<120s)")
    assert ok


def test_criterion_7_linear_triangle(record):
    tri = Family.from_sets(6, [(1, 4, 2), (2, 6, 3), (1, 5, 3)], 3)
    cert = transversal_number(tri)
    got = sorted(elements_of(t) for t in cert.minimum_transversals)
    expected = [(1, 2), (1, 3), (1, 6), (2, 3), (2, 5), (3, 4)]
    ok = cert.tau == 2 and got == expected
    record("7", ok, f"tau={cert.tau}, {len(got)} minimal 2-transversals {got}")
    assert ok


def test_criterion_8_enumerate_n7(capsys, record):
    code, rep, t = cli_json(capsys, "enumerate", "--n", "7", "--k", "3", "--d", "2")
    taus = [c["tau"] for c in rep.get("classes", [])]
    ok = code == 0 and rep["complete"] and 3 in taus and 2 in taus and t <= 4 * 3600
    record("8", ok, f"{len(taus)} extremal classes at n=7, tau values {sorted(set(taus))}, {t:.1f}s (<=4h)")
    assert ok


def test_criterion_9_bound_table(record):
    rows = {r["n"]: r for r in bound_table(range(6, 13), 2)}
    ok = rows[6]["ak"] == 11 and rows[6]["exact"] == 13
    ok &= all(rows[n]["exact"] == comb(n - 1, 2) + 1 for n in range(7, 13))
    record("9", ok, "d=2: " + ", ".join(f"n={n} AK {r['ak']} / exact {r['exact']}" for n, r in rows.items()))
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
