"""End-to-end acceptance checks, one test per criterion.

Run with ``pytest -m acceptance -s`` to see the PASS/FAIL lines inline; they
are also repeated in the terminal summary.
"""

import random
import time
from itertools import product
from math import isqrt

import pytest

from polysum import checks
from polysum.cli import main
from polysum.lattice import CASES, EXCEPTIONAL_IMAGE, apply_isometry, form_value, in_obstruction, solve_system
from polysum.nonrep import family, family_member, verify_not_represented
from polysum.polygonal import exceptional_set, generalized_values_up_to, represents
from polysum.universality import (
    CRITERION_M7,
    CRITERION_M9,
    large_m_targets,
    min_universal_length,
    verify_large_m,
)

pytestmark = pytest.mark.acceptance


def test_criterion_01_m9_exception(criterion):
    t = time.perf_counter()
    got = exceptional_set(9, (1, 2, 2, 2), 301)
    dt = time.perf_counter() - t
    criterion(1, got == [34] and dt < 10, f"E(9,(1,2,2,2)) up to 301 = {got} in {dt:.2f}s")


def test_criterion_02_m7_all_below_3500(criterion):
    t = time.perf_counter()
    got = exceptional_set(7, (1, 1, 1, 1), 3499, jobs=4)
    dt = time.perf_counter() - t
    criterion(2, got == [] and dt < 60, f"{len(got)} misses below 3500 at m=7, 4 workers, {dt:.2f}s")


def test_criterion_03_criterion_failures(criterion):
    cases = [(7, (1, 1, 1), 10, CRITERION_M7), (7, (1, 1, 2), 23, CRITERION_M7),
             (7, (1, 2, 2), 19, CRITERION_M7), (9, (1, 2, 2, 2), 34, CRITERION_M9)]
    bad = []
    for m, a, miss, crit in cases:
        for n in crit:
            hit = represents(m, a, n) is not None
            if hit == (n == miss):
                bad.append((m, a, n))
    criterion(3, not bad, f"exactly one criterion element missed per sum; violations {bad}")


def _realized_pairs(case, bound):
    """Every (a, b) = (sum c x^2, sum c x) with a <= bound, by direct enumeration."""
    box = [range(-isqrt(bound // c), isqrt(bound // c) + 1) for c in case]
    out = set()
    for x in product(*box):
        a = sum(c * v * v for c, v in zip(case, x))
        if a <= bound:
            out.add((a, sum(c * v for c, v in zip(case, x))))
    return out


def test_criterion_04_system_versus_obstruction(criterion):
    t = time.perf_counter()
    res = checks.check_binary_lattice(60)
    bad = []
    for case, c in CASES.items():
        realized = _realized_pairs(case, 60)
        A = c.total
        for a in range(61):
            for b in range(-isqrt(A * a), isqrt(A * a) + 1):
                if (a - b) % 2 or A * a - b * b <= 0:
                    continue
                solvable = solve_system(case, a, b) is not None
                if solvable != ((a, b) in realized) or solvable == in_obstruction(case, A * a - b * b):
                    bad.append((case, a, b))
    dt = time.perf_counter() - t
    pairs = sum(p["pairs"] for p in res["cases"])
    ok = res["passed"] and not bad and dt < 60
    criterion(4, ok, f"{pairs} (a,b) pairs, {len(bad)} counterexamples vs enumeration, {dt:.2f}s")


def test_criterion_05_isometry(criterion):
    rng = random.Random(2024)
    bad = 0
    for _ in range(10**4):
        case = rng.choice(list(EXCEPTIONAL_IMAGE))
        v = [rng.randint(-10**6, 10**6) for _ in range(4)]
        if form_value(case, apply_isometry(case, v)) != form_value(case, v):
            bad += 1
    images = {c: apply_isometry(c, u) for c, u in EXCEPTIONAL_IMAGE.items()}
    ok = bad == 0 and all(img == (1, 1, 1, 1) for img in images.values())
    criterion(5, ok, f"{bad} form changes in 10^4 vectors; images {sorted(set(images.values()))}")


def test_criterion_06_constructive(criterion):
    t = time.perf_counter()
    plan = checks.constructive_plan(5, 12, 200, 10**5, seed=0)
    recs = list(checks.constructive_records(plan, cross_check=True, jobs=1))
    res = checks.summarize_constructive(recs)
    dt = time.perf_counter() - t
    expected = sum(len(ns) for _, _, ns in plan)
    ok = res["passed"] and res["count"] == expected == 200 * len(plan) and dt < 120
    criterion(6, ok, f"{res['count']} N over {len(plan)} (m, case) pairs, max k {res['max_k']}, {dt:.2f}s")


def _oracle_missed(m, case, n):
    vals = [v for v, _ in generalized_values_up_to(m, n)]
    vs = set(vals)
    c1, c2, c3, c4 = case
    for x, y, z in product(vals, repeat=3):
        r = n - c1 * x - c2 * y - c3 * z
        if r >= 0 and r % c4 == 0 and r // c4 in vs:
            return False
    return True


def test_criterion_07_nonrep_family(criterion):
    # independent arithmetic: ord_5(2) = 4, A = 4, l = 2, N0 = 8
    n1 = (4**4 * (5 * 8 + 4 * 2**2) - 4 * 2**2) // 5
    f = family(12, (1, 1, 1, 1))
    rep = verify_not_represented(f, 1)
    g = verify_not_represented(family(16, (1, 1, 2, 2)), 0)
    ok = (
        n1 == 2864
        and family_member(f, 1) == n1
        and rep.complete
        and g.complete
        and [n for _, n, _ in g.entries] == [10]
        and _oracle_missed(12, (1, 1, 1, 1), 8)
        and _oracle_missed(12, (1, 1, 1, 1), 2864)
        and _oracle_missed(16, (1, 1, 2, 2), 10)
    )
    criterion(7, ok, f"N_1 = {family_member(f, 1)} (hand {n1}); 8, 2864 at m=12 and 10 at m=16 not represented")


def test_criterion_08_ternary_and_hyperplane(criterion):
    t = time.perf_counter()
    res = checks.check_ternary(2000, (5, 7, 9, 19))
    dt = time.perf_counter() - t
    ok = res["passed"] and dt < 30
    criterion(8, ok, f"{len(res['misses'])} misses, {len(res['bad_lifts'])} bad lifts up to 2000, {dt:.2f}s")


def test_criterion_09_consistency(criterion):
    res = checks.check_consistency(10, 30, 40, 20)
    criterion(9, res["passed"], f"{res['checked']} (m, alpha, beta) triples, {len(res['disagreements'])} disagreements")


def test_criterion_10_min_length(criterion):
    ok = (
        min_universal_length(9) == 4
        and all(min_universal_length(m) == m // 2 for m in range(11, 60, 2))
        and all(min_universal_length(m) == m // 2 - 1 for m in range(10, 61, 2))
    )
    criterion(10, ok, "minimal universal lengths for m in [9, 60]")


def test_criterion_11_residue_cover(criterion):
    runs = [(m, t) for m in (19, 20, 21, 22, 23) for t in large_m_targets(m)]
    reports = [verify_large_m(m, t) for m, t in runs]
    variants = {(r.m, r.variant) for r in reports}
    need = {(19, "A"), (19, "B"), (21, "A"), (21, "B"), (23, "A"), (23, "B"), (20, "B"), (22, "B")}
    ok = all(r.passed for r in reports) and need <= variants
    criterion(11, ok, f"{sum(r.passed for r in reports)}/{len(reports)} (m, target) runs pass all three checks")


def _cli_report(tmp_path, name, argv, jobs):
    path = tmp_path / f"{name}-{jobs}.jsonl"
    code = main([*argv, "--jobs", str(jobs), "--report", str(path)])
    return code, path.read_bytes()


def test_criterion_12_determinism(criterion, tmp_path, capsys):
    runs = {
        "c1": ["exceptional", "--m", "9", "--coeffs", "1,2,2,2", "--bound", "301"],
        "c2": ["exceptional", "--m", "7", "--coeffs", "1,1,1,1", "--bound", "3499"],
        "c6": ["verify", "constructive", "--m-min", "5", "--m-max", "12", "--samples", "200", "--width", "100000"],
    }
    same = {}
    for name, argv in runs.items():
        serial = _cli_report(tmp_path, name, argv, 1)
        wide = _cli_report(tmp_path, name, argv, 8)
        same[name] = serial == wide and len(serial[1]) > 0
    capsys.readouterr()
    criterion(12, all(same.values()), f"byte-identical reports jobs=1 vs jobs=8: {same}")
