"""Generalized m-gonal numbers and exact representability by weighted sums.

A weighted sum with coefficient vector ``a`` evaluates
``sum(a_i * P_m(x_i))`` over integer tuples ``x``.  Representability is
decided with suffix reachability bitsets (Python ints used as bit arrays),
so a negative answer always means the full candidate space was exhausted.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Iterator, Sequence

from polysum._pool import chunk_ranges, parallel_map

Coeffs = tuple[int, ...]
Witness = tuple[int, ...]


def check_gonality(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"gonality must be an int, got {type(m).__name__}")
    if m < 3:
        raise ValueError(f"gonality must be >= 3, got {m}")
    return m


def coeff_vector(alpha: int, beta: int) -> Coeffs:
    """Return the vector with ``alpha`` ones followed by ``beta`` twos."""
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be non-negative")
    if alpha + beta < 1:
        raise ValueError("coefficient vector must be non-empty")
    return (1,) * alpha + (2,) * beta


def check_coeffs(a: Sequence[int]) -> Coeffs:
    a = tuple(a)
    if not a:
        raise ValueError("coefficient vector must be non-empty")
    if any(not isinstance(c, int) or c < 1 for c in a):
        raise ValueError(f"coefficients must be positive integers, got {a}")
    return a


def pm_value(m: int, x: int) -> int:
    """Generalized m-gonal number ``(m-2)(x^2-x)/2 + x``."""
    check_gonality(m)
    # x^2 - x is always even, so the division is exact
    return (m - 2) * (x * x - x) // 2 + x


def x_range(m: int, bound: int) -> tuple[int, int]:
    """Return the inclusive range ``(lo, hi)`` of x with ``P_m(x) <= bound``.

    ``P_m(x) <= bound`` is the quadratic inequality
    ``(m-2)x^2 - (m-4)x - 2*bound <= 0``; the integer endpoints come from
    the exact integer square root of its discriminant, then get nudged by
    at most one step each to absorb the floor.
    """
    check_gonality(m)
    if bound < 0:
        return 1, 0
    lead = m - 2
    disc = (m - 4) ** 2 + 8 * lead * bound
    root = isqrt(disc)
    hi = (m - 4 + root) // (2 * lead)
    lo = -((root - (m - 4)) // (2 * lead))
    while pm_value(m, hi + 1) <= bound:
        hi += 1
    while pm_value(m, hi) > bound:
        hi -= 1
    while pm_value(m, lo - 1) <= bound:
        lo -= 1
    while pm_value(m, lo) > bound:
        lo += 1
    return lo, hi


def zigzag(lo: int, hi: int) -> Iterator[int]:
    """Yield the integers of ``[lo, hi]`` in the order 0, 1, -1, 2, -2, ..."""
    if lo > hi:
        return
    k = 0
    while True:
        pos, neg = k, -k
        if pos > hi and neg < lo:
            return
        if lo <= pos <= hi:
            yield pos
        if k and lo <= neg <= hi:
            yield neg
        k += 1


def enumeration_key(x: int) -> tuple[int, int]:
    """Sort key that reproduces the zigzag order."""
    return abs(x), x < 0


def generalized_values_up_to(m: int, bound: int) -> list[tuple[int, int]]:
    """All distinct values ``P_m(x) <= bound`` in increasing order.

    Each value is paired with the first ``x`` producing it in zigzag order.
    """
    check_gonality(m)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    seen: dict[int, int] = {}
    for x in zigzag(*x_range(m, bound)):
        seen.setdefault(pm_value(m, x), x)
    return sorted(seen.items())


def evaluate(m: int, a: Sequence[int], x: Sequence[int]) -> int:
    if len(a) != len(x):
        raise ValueError(f"witness length {len(x)} != coefficient count {len(a)}")
    return sum(c * pm_value(m, xi) for c, xi in zip(a, x))


class ReachTable:
    """Suffix reachability tables for one (m, coeffs) pair up to ``limit``.

    ``suffix[i]`` has bit ``n`` set iff ``n`` is represented by the slots
    ``i, i+1, ...``; ``suffix[k]`` is the single bit for 0.
    """

    def __init__(self, m: int, a: Coeffs, limit: int):
        self.m = m
        self.a = a
        self.limit = limit
        mask = (1 << (limit + 1)) - 1
        values = [v for v, _ in generalized_values_up_to(m, limit)]
        suffix = [0] * (len(a) + 1)
        suffix[-1] = 1
        for i in range(len(a) - 1, -1, -1):
            nxt = suffix[i + 1]
            acc = 0
            c = a[i]
            for v in values:
                shift = c * v
                if shift > limit:
                    break
                acc |= nxt << shift
            suffix[i] = acc & mask
        self.suffix = suffix

    def represented(self, n: int) -> bool:
        return bool(self.suffix[0] >> n & 1)

    def witness(self, n: int) -> Witness | None:
        if not self.represented(n):
            return None
        rem = n
        out = []
        for i, c in enumerate(self.a):
            nxt = self.suffix[i + 1]
            for x in zigzag(*x_range(self.m, rem // c)):
                left = rem - c * pm_value(self.m, x)
                if nxt >> left & 1:
                    out.append(x)
                    rem = left
                    break
            else:  # pragma: no cover - tables are exact
                raise AssertionError("reachability table inconsistent")
        return tuple(out)


def _bucket(n: int) -> int:
    return max(64, 1 << n.bit_length())


@lru_cache(maxsize=32)
def _reach(m: int, a: Coeffs, limit: int) -> ReachTable:
    return ReachTable(m, a, limit)


def reach_table(m: int, a: Sequence[int], n: int) -> ReachTable:
    """Cached reachability table covering at least ``[0, n]``."""
    return _reach(check_gonality(m), check_coeffs(a), _bucket(n))


def represents(m: int, a: Sequence[int], n: int) -> Witness | None:
    """Return a witness ``x`` with ``sum(a_i P_m(x_i)) == n`` or ``None``.

    The witness is the lexicographically first one when each slot runs
    through 0, 1, -1, 2, -2, ...  ``None`` is only returned after every
    tuple with ``a_i * P_m(x_i) <= n`` has been ruled out.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    w = reach_table(m, a, n).witness(n)
    if w is not None:
        assert evaluate(m, a, w) == n
    return w


def _exceptions_in(args: tuple[int, Coeffs, int, int]) -> list[int]:
    m, a, lo, hi = args
    bits = ReachTable(m, a, hi).suffix[0]
    return [n for n in range(lo, hi + 1) if not bits >> n & 1]


def exceptional_set(m: int, a: Sequence[int], bound: int, jobs: int = 1) -> list[int]:
    """Sorted list of the ``n`` in ``[0, bound]`` not represented by ``a``.

    With ``jobs > 1`` the interval is split into contiguous chunks scanned
    in worker processes; results are merged in chunk order.
    """
    check_gonality(m)
    a = check_coeffs(a)
    if bound < 0:
        raise ValueError("bound must be non-negative")
    tasks = [(m, a, lo, hi) for lo, hi in chunk_ranges(0, bound, jobs)]
    out: list[int] = []
    for part in parallel_map(_exceptions_in, tasks, jobs):
        out.extend(part)
    return out
