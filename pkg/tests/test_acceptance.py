"""Acceptance criteria 1-11, each checked at its stated tolerance.

Every test records one ``criterion N: PASS|FAIL`` line; the lines are printed
in the pytest terminal summary, or directly when this file is run as a script.
"""

import math
import time

import pytest

from pyramids import checks, lego, series
from pyramids.growth import fit_growth

RESULTS = {}

RIGHT_GRID = {2: 10, 3: 8, 4: 7, 5: 6}


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    return ok


def _failed(results):
    return [f"{c.name} ({c.detail})" for c in results if not c.ok]


def test_criterion_01_pyramid_counts():
    t = time.perf_counter()
    res = checks.pyramid_counts(checks.COUNT_GRID)
    elapsed = time.perf_counter() - t
    anchor = next(c for c in res if c.name == "a=2 m=3").detail == "10 vs 10"
    ok = not _failed(res) and anchor and elapsed <= 60
    assert record(1, ok, f"{len(res)} (a,m) pairs, anchor a=2 m=3 -> 10, {elapsed:.1f}s (limit 60s)"), _failed(res)


def test_criterion_02_right_pyramid_counts():
    res = checks.right_pyramids(checks.COUNT_GRID)
    anchor = next(c for c in res if c.name == "a=2 m=3").detail == "5 vs 5"
    assert record(2, not _failed(res) and anchor, f"{len(res)} (a,m) pairs, anchor a=2 m=3 -> 5"), _failed(res)


def test_criterion_03_round_trips():
    res = checks.roundtrips((2, 3, 4), max_string=16, max_up=4, right_m=RIGHT_GRID)
    res += checks.roundtrips((5,), max_string=16, max_up=0, right_m=RIGHT_GRID)
    fig = [c for c in res if c.name == "dimer size-3 table"]
    ok = not _failed(res) and fig and fig[0].ok
    assert record(3, ok, "; ".join(f"{c.name}: {c.detail}" for c in res if c.detail)), _failed(res)


def test_criterion_04_factorization():
    t = time.perf_counter()
    res = checks.factorization((3, 4), 12)
    elapsed = time.perf_counter() - t
    ok = not _failed(res) and elapsed <= 120
    assert record(4, ok, "; ".join(c.detail for c in res) + f"; {elapsed:.1f}s (limit 120s)"), _failed(res)


def test_criterion_05_transfer():
    res = checks.transfer_suite(range(3, 9), 12)
    assert record(5, not _failed(res), f"{len(res)} exact identities for a=3..8, r<=12"), _failed(res)


def test_criterion_06_series():
    res = checks.series_suite((2, 3, 4, 5), 200, 30)
    assert record(6, not _failed(res), f"{len(res)} identities to order 200 (compositions to 30)"), _failed(res)


def test_criterion_07_widths():
    res = checks.width_histograms({2: 9, 3: 7})
    biv = series.series_B_bivariate(2, 2)
    anchor = biv[2, 0] == 2 and biv[2, 1] == 1
    ratios = checks.width_ratios((2, 3), 2000, (0.95, 1.05))
    ok = not _failed(res + ratios) and anchor
    detail = "histograms a=2 m<=9, a=3 m<=7; ratios " + ", ".join(c.detail for c in ratios) + " in [0.95, 1.05]"
    assert record(7, ok, detail), _failed(res + ratios)


def test_criterion_08_asymptotics():
    res = checks.asymptotics((2, 3), 10**4, 0.01)
    assert record(8, not _failed(res), "log errors " + ", ".join(c.detail for c in res) + " < 0.01"), _failed(res)


def test_criterion_09_lego():
    res = checks.lego_suite({2: 6, 3: 5})
    assert record(9, not _failed(res), "; ".join(f"{c.name}: {c.detail}" for c in res[:-1])), _failed(res)


def test_criterion_10_monte_carlo():
    exact = math.comb(19, 9)
    hits = 0
    for seed in range(20):
        e = lego.mc_estimate(2, 10, 2000, seed=seed, mode="pyramid")
        hits += abs(e.estimate - exact) <= 5 * e.stderr
    flat_ok = True
    zs = []
    for m in range(1, 7):
        exact_l = lego.count_flat_exhaustive(2, m)
        e = lego.mc_estimate(2, m, 4000, seed=100 + m, mode="flat")
        dev = abs(e.estimate - exact_l)
        flat_ok &= dev <= 5 * e.stderr if e.stderr > 0 else dev == 0
        zs.append(dev / e.stderr if e.stderr > 0 else 0.0)
    ok = hits >= 18 and flat_ok
    detail = f"B_10 within 5 stderr for {hits}/20 seeds; flat m<=6 max |z| = {max(zs):.2f}"
    assert record(10, ok, detail)


def test_criterion_11_growth_fit():
    out = []
    ok = True
    for a, target in ((2, 4.0), (3, 27 / 4)):
        est = fit_growth([series.count_B(a, m) for m in range(16, 41)], start=16)
        rel = abs(est.H - target) / target
        ok &= rel < 0.01
        out.append(f"a={a} H={est.H:.5f} (rel err {rel:.1e})")
    assert record(11, ok, "; ".join(out))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
