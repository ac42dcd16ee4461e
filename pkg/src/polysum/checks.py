"""Verification sweeps over the library, one function per suite.

Every sweep returns plain records (dicts) in a fixed order so that a run
with one worker and a run with many produce identical output.
"""

from __future__ import annotations

import random
from itertools import product
from math import isqrt
from typing import Iterator, Sequence

from polysum._pool import chunk_ranges, parallel_imap, parallel_map
from polysum.lattice import (
    CASES,
    EXCEPTIONAL_IMAGE,
    apply_isometry,
    canonicalize,
    check_solution,
    hyperplane_witness,
    is_excluded_ternary,
    obstructed,
    solve_system,
    ternary_represents,
)
from polysum.polygonal import Coeffs, ReachTable, check_coeffs, check_gonality, evaluate
from polysum.solver import construct, is_supported, min_constructive
from polysum.universality import (
    classify_by_criterion,
    classify_closed_form,
    large_m_targets,
    verify_large_m,
)


def witness_record(m: int, a: Sequence[int], n: int, w: Sequence[int] | None) -> dict:
    return {"m": m, "coeffs": list(a), "n": n, "witness": None if w is None else list(w)}


def _scan_chunk(args: tuple[int, Coeffs, int, int]) -> list[dict]:
    m, a, lo, hi = args
    table = ReachTable(m, a, hi)
    return [witness_record(m, a, n, table.witness(n)) for n in range(lo, hi + 1)]


def scan_records(m: int, a: Sequence[int], lo: int, hi: int, jobs: int = 1) -> Iterator[dict]:
    """One witness record per ``n`` in ``[lo, hi]``, in increasing order."""
    check_gonality(m)
    a = check_coeffs(a)
    tasks = [(m, a, s, e) for s, e in chunk_ranges(lo, hi, jobs)]
    for part in parallel_imap(_scan_chunk, tasks, jobs):
        yield from part


# -- hyperplane / ternary form -------------------------------------------------


def _ternary_chunk(args: tuple[int, int, tuple[int, ...]]) -> dict:
    lo, hi, ms = args
    misses, converse_hits, bad_lifts = [], [], []
    for n in range(lo, hi + 1):
        excluded = is_excluded_ternary(n)
        sol = ternary_represents(n)
        if excluded:
            if sol is not None:
                converse_hits.append(n)
            continue
        if sol is None:
            misses.append(n)
            continue
        for m in ms:
            chk = hyperplane_witness(m, n)
            if not chk.covered or chk.witness is None:
                bad_lifts.append([m, n])
    return {"misses": misses, "converse_hits": converse_hits, "bad_lifts": bad_lifts}


def check_ternary(bound: int = 2000, ms: Sequence[int] = (5, 7, 9, 19), jobs: int = 1) -> dict:
    """Every ``1 <= N <= bound`` outside ``4^s(8t+1)`` is hit by the ternary
    form, and the lifted (1,2,2,2) witness evaluates to ``(m-2)N``.

    ``converse_hits`` lists excluded ``N`` that the form represents anyway;
    it is reported, not judged.
    """
    tasks = [(lo, hi, tuple(ms)) for lo, hi in chunk_ranges(1, bound, jobs)]
    out = {"suite": "ternary", "bound": bound, "ms": list(ms), "misses": [], "converse_hits": [], "bad_lifts": []}
    for part in parallel_map(_ternary_chunk, tasks, jobs):
        for key in ("misses", "converse_hits", "bad_lifts"):
            out[key].extend(part[key])
    out["passed"] = not out["misses"] and not out["bad_lifts"]
    return out


# -- binary lattice equivalence ------------------------------------------------


def _binary_case(args: tuple[tuple[int, ...], int]) -> dict:
    a_vec, bound = args
    c = CASES[a_vec]
    A = c.total
    pairs = 0
    mismatches = []
    for a in range(1, bound + 1):
        r = isqrt(A * a)
        for b in range(-r, r + 1):
            if (a - b) % 2 or A * a - b * b <= 0:
                continue
            pairs += 1
            x = solve_system(c, a, b)
            if x is not None and not check_solution(c, x, a, b):
                mismatches.append([a, b, "bad solution"])
                continue
            if (x is not None) == obstructed(c.a, A * a - b * b):
                mismatches.append([a, b, x is not None])
    # exceptional-shape representations must canonicalize to integral solutions
    shapes = 0
    non_integral = []
    if a_vec in EXCEPTIONAL_IMAGE:
        u = EXCEPTIONAL_IMAGE[a_vec]
        box = [range(-isqrt(bound // ci), isqrt(bound // ci) + 1) for ci in a_vec]
        for y in product(*box):
            a = sum(ci * yi * yi for ci, yi in zip(a_vec, y))
            if a > bound:
                continue
            b = sum(ci * ui * yi for ci, ui, yi in zip(a_vec, u, y))
            if (a - b) % 2 or A * a - b * b <= 0:
                continue
            shapes += 1
            try:
                x = canonicalize(a_vec, y)
            except ValueError:
                non_integral.append(list(y))
                continue
            if not check_solution(a_vec, x, a, b):
                non_integral.append(list(y))
    return {
        "case": list(a_vec),
        "pairs": pairs,
        "mismatches": mismatches,
        "exceptional_shapes": shapes,
        "non_integral": non_integral,
    }


def check_binary_lattice(bound: int = 60, jobs: int = 1) -> dict:
    """Solvability of the quadratic-linear system versus the obstruction
    family, for every case, ``a <= bound`` and admissible ``b``."""
    parts = parallel_map(_binary_case, [(a, bound) for a in CASES], jobs)
    passed = all(not p["mismatches"] and not p["non_integral"] for p in parts)
    return {"suite": "binary-lattice", "bound": bound, "cases": parts, "passed": passed}


def isometry_images() -> dict[tuple[int, ...], tuple]:
    return {a: apply_isometry(a, u) for a, u in EXCEPTIONAL_IMAGE.items()}


# -- large m residue cover -----------------------------------------------------


def _large_m(args: tuple[int, tuple[int, int], int, int]) -> dict:
    m, target, max_m, reduction = args
    return verify_large_m(m, target, max_m=max_m, reduction_bound=reduction).as_dict()


def check_residue_cover(
    ms: Sequence[int] = (19, 20, 21, 22, 23), max_m: int = 101, reduction_factor: int = 0, jobs: int = 1
) -> dict:
    tasks = [(m, t, max_m, reduction_factor * m) for m in ms for t in large_m_targets(m)]
    reports = parallel_map(_large_m, tasks, jobs)
    return {"suite": "residue-cover", "reports": reports, "passed": all(r["passed"] for r in reports)}


# -- constructive pipeline -----------------------------------------------------


def constructive_plan(
    m_min: int = 5, m_max: int = 12, samples: int = 200, width: int = 10**5, seed: int = 0
) -> list[tuple[int, tuple[int, ...], list[int]]]:
    """The (m, case, N list) batches, drawn once from ``seed``."""
    rng = random.Random(seed)
    plan = []
    for m in range(m_min, m_max + 1):
        for a in CASES:
            if not is_supported(m, a):
                continue
            lo = min_constructive(m, a)
            plan.append((m, a, [rng.randint(lo, lo + width) for _ in range(samples)]))
    return plan


def _construct_batch(args: tuple[int, tuple[int, ...], list[int], bool]) -> list[dict]:
    m, a, ns, cross = args
    table = ReachTable(m, a, max(ns)) if cross else None
    out = []
    for n in ns:
        c = construct(m, a, n)
        rec = c.as_dict()
        rec["ok"] = evaluate(m, a, c.witness) == n
        rec["within_span"] = c.selection.k <= CASES[a].span - 1
        if table is not None:
            rec["brute_force"] = table.represented(n)
        out.append(rec)
    return out


def constructive_records(plan, cross_check: bool = False, jobs: int = 1) -> Iterator[dict]:
    tasks = [(m, a, ns, cross_check) for m, a, ns in plan]
    for part in parallel_imap(_construct_batch, tasks, jobs):
        yield from part


def summarize_constructive(records: Sequence[dict]) -> dict:
    bad = [r for r in records if not r["ok"] or not r["within_span"] or r.get("brute_force") is False]
    return {
        "suite": "constructive",
        "count": len(records),
        "max_k": max((r["selection"]["k"] for r in records), default=0),
        "failures": [[r["m"], r["coeffs"], r["n"]] for r in bad],
        "passed": not bad,
    }


# -- closed form versus criterion set ------------------------------------------


def _consistency_m(args: tuple[int, int, int]) -> list[list[int]]:
    m, alpha_max, beta_max = args
    bad = []
    for alpha in range(alpha_max + 1):
        for beta in range(beta_max + 1):
            if alpha + beta == 0:
                continue
            x = classify_closed_form(m, alpha, beta)
            y = classify_by_criterion(m, alpha, beta)
            if x.universal != y.universal or bool(x.witness_failures) != bool(y.witness_failures):
                bad.append([m, alpha, beta])
    return bad


def check_consistency(
    m_min: int = 10, m_max: int = 30, alpha_max: int = 40, beta_max: int = 20, jobs: int = 1
) -> dict:
    tasks = [(m, alpha_max, beta_max) for m in range(m_min, m_max + 1)]
    bad = [row for part in parallel_map(_consistency_m, tasks, jobs) for row in part]
    checked = (m_max - m_min + 1) * ((alpha_max + 1) * (beta_max + 1) - 1)
    return {"suite": "consistency", "checked": checked, "disagreements": bad, "passed": not bad}
