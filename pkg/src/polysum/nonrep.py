"""Infinite families of integers missed by (1,1,1,1) and (1,1,2,2).

When ``m = 4l + 4`` with ``l >= 2`` these two sums miss every

    N_t = (4^(n t) ((2l+1) N_0 + A l^2) - A l^2) / (2l+1),   t = 0, 1, 2, ...

where ``n`` is the multiplicative order of 2 modulo ``2l+1`` and ``N_0`` is
any missed seed with ``(2l+1) N_0 + A l^2 = 0 (mod 4)``.  The values grow
geometrically, so everything here stays in Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from polysum._pool import parallel_map
from polysum.lattice import QuaternaryCase, get_case
from polysum.polygonal import check_gonality, represents

EXCEPTIONAL_CASES = ((1, 1, 1, 1), (1, 1, 2, 2))


def mult_order(a: int, b: int) -> int:
    """Smallest ``k >= 1`` with ``a**k = 1 (mod b)``."""
    if b < 2:
        raise ValueError(f"modulus must be >= 2, got {b}")
    if gcd(a, b) != 1:
        raise ValueError(f"gcd({a}, {b}) != 1")
    x = a % b
    k = 1
    while x != 1:
        x = x * a % b
        k += 1
    return k


def _check_exceptional(m: int, case: QuaternaryCase | Sequence[int]) -> QuaternaryCase:
    check_gonality(m)
    if m % 4 or m <= 8:
        raise ValueError(f"m must be a multiple of 4 greater than 8, got {m}")
    c = get_case(case)
    if c.a not in EXCEPTIONAL_CASES:
        raise ValueError(f"case {c} has no non-represented family")
    return c


def default_seed(m: int, case: QuaternaryCase | Sequence[int]) -> int:
    """10 for (1,1,2,2) with odd ``l = (m-4)/4``, otherwise 8."""
    c = _check_exceptional(m, case)
    l = (m - 4) // 4
    return 10 if c.a == (1, 1, 2, 2) and l % 2 else 8


@dataclass(frozen=True)
class NonRepFamily:
    """Parameters of one family; construction verifies the seed by search."""

    m: int
    case: QuaternaryCase
    seed: int
    l: int = field(init=False)
    order: int = field(init=False)

    def __post_init__(self):
        c = _check_exceptional(self.m, self.case)
        object.__setattr__(self, "case", c)
        l = (self.m - 4) // 4
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "order", mult_order(2, 2 * l + 1))
        if self.seed < 1:
            raise ValueError("seed must be positive")
        if ((2 * l + 1) * self.seed + c.total * l * l) % 4:
            raise ValueError(f"seed {self.seed} fails the congruence (2l+1)N0 + Al^2 = 0 (mod 4)")
        if represents(self.m, c.a, self.seed) is not None:
            raise ValueError(f"seed {self.seed} is represented for m={self.m}, case {c}")


def family(m: int, case: QuaternaryCase | Sequence[int], seed: int | None = None) -> NonRepFamily:
    c = _check_exceptional(m, case)
    return NonRepFamily(m, c, default_seed(m, c) if seed is None else seed)


def family_member(params: NonRepFamily, t: int) -> int:
    if t < 0:
        raise ValueError("t must be non-negative")
    l, A = params.l, params.case.total
    q = 2 * l + 1
    num = 4 ** (params.order * t) * (q * params.seed + A * l * l) - A * l * l
    if num % q:
        raise AssertionError(f"N_{t} numerator not divisible by {q}")
    return num // q


@dataclass
class NonRepReport:
    m: int
    coeffs: tuple[int, ...]
    seed: int
    budget: int
    # (t, N_t, checked): checked is False when N_t exceeded the budget
    entries: list[tuple[int, int, bool]] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return all(checked for _, _, checked in self.entries)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "coeffs": list(self.coeffs),
            "seed": self.seed,
            "budget": self.budget,
            "complete": self.complete,
            "entries": [
                {"t": t, "n": n, "status": "not_represented" if ok else "skipped"}
                for t, n, ok in self.entries
            ],
        }


def _search(args: tuple[int, tuple[int, ...], int]) -> tuple[int, ...] | None:
    m, a, n = args
    return represents(m, a, n)


def verify_not_represented(params: NonRepFamily, t_max: int, budget: int = 10**6, jobs: int = 1) -> NonRepReport:
    """Exhaustively confirm ``N_0 .. N_t_max`` are not represented.

    ``N_t`` above ``budget`` are recorded as skipped and the report is then
    incomplete.  A witness for any ``N_t`` raises: it would contradict the
    descent argument the family rests on.
    """
    report = NonRepReport(params.m, params.case.a, params.seed, budget)
    values = [(t, family_member(params, t)) for t in range(t_max + 1)]
    todo = [(params.m, params.case.a, n) for _, n in values if n <= budget]
    found = iter(parallel_map(_search, todo, jobs))
    for t, n in values:
        if n > budget:
            report.entries.append((t, n, False))
            continue
        w = next(found)
        if w is not None:
            raise AssertionError(f"N_{t} = {n} is represented by {w}")
        report.entries.append((t, n, True))
    return report
