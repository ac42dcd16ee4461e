"""Constructive representation of large integers by the quaternary sums.

For ``N`` above ``threshold * (m-2)^3`` the pipeline is:

1. pick ``b = N (mod m-2)`` inside a window of width ``span * (m-2)`` so
   that ``D = A*a - b^2`` avoids the obstruction family, where
   ``a = 2(N-b)/(m-2) + b``;
2. solve ``sum(c_i x_i^2) = a``, ``sum(c_i x_i) = b``;
3. read the solution as a polygonal witness for ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Sequence

from polysum.lattice import QuaternaryCase, obstructed, get_case, lift_to_polygonal, solve_system
from polysum.polygonal import Witness, check_gonality


class UnsupportedConfiguration(ValueError):
    """The linear-sum selection is not guaranteed for this (m, case) pair."""


class BelowThreshold(ValueError):
    """``N`` is too small for the constructive pipeline; use ``represents``."""


def is_supported(m: int, case: QuaternaryCase | Sequence[int]) -> bool:
    """Whether the selection step is guaranteed to succeed.

    m = 8 is excluded along with the rest of m = 0 (mod 4) even though
    those sums are universal: the residue argument does not reach it.
    """
    c = get_case(case)
    return not (m % 4 == 0 and c.a in ((1, 1, 1, 1), (1, 1, 2, 2)))


def _check(m: int, case: QuaternaryCase | Sequence[int]) -> QuaternaryCase:
    check_gonality(m)
    if m < 5:
        raise ValueError(f"m must be >= 5, got {m}")
    c = get_case(case)
    if not is_supported(m, c):
        raise UnsupportedConfiguration(f"case {c} is not covered when m = 0 (mod 4), m={m}")
    return c


@dataclass(frozen=True)
class SelectionInterval:
    lo: Fraction
    hi: Fraction

    def __contains__(self, b: int) -> bool:
        return self.lo <= b <= self.hi


def selection_interval(m: int, case: QuaternaryCase | Sequence[int]) -> SelectionInterval:
    """Window of width ``span*(m-2)`` centred at ``A(m-4)/(2(m-2))``."""
    check_gonality(m)
    if m < 5:
        raise ValueError(f"m must be >= 5, got {m}")
    c = get_case(case)
    centre = Fraction(c.total * (m - 4), 2 * (m - 2))
    half = Fraction(c.span * (m - 2), 2)
    return SelectionInterval(centre - half, centre + half)


@dataclass
class Selection:
    n: int
    b0: int
    k: int
    b: int
    a: int
    d: int
    # (b_k, a_k, D_k) for every candidate examined, in order
    trace: list[tuple[int, int, int]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "b0": self.b0,
            "k": self.k,
            "b": self.b,
            "a": self.a,
            "d": self.d,
            "trace": [list(t) for t in self.trace],
        }


def select_linear_sum(m: int, case: QuaternaryCase | Sequence[int], n: int) -> Selection:
    """Choose ``b`` for ``N = n`` by scanning ``b0, b0 + (m-2), ...``.

    ``b0`` is the smallest integer in the window congruent to ``n`` mod
    ``m-2``.  The first of the ``span`` candidates whose ``D`` is outside
    the obstruction family is taken; running out of candidates is a bug.
    """
    c = _check(m, case)
    mod = m - 2
    window = selection_interval(m, c)
    start = ceil(window.lo)
    b0 = start + (n - start) % mod
    trace = []
    for k in range(c.span):
        b = b0 + k * mod
        a = 2 * (n - b) // mod + b
        d = c.total * a - b * b
        trace.append((b, a, d))
        if not obstructed(c.a, d):
            return Selection(n, b0, k, b, a, d, trace)
    raise AssertionError(f"no admissible b among {c.span} candidates for m={m}, case={c}, N={n}")


def min_constructive(m: int, case: QuaternaryCase | Sequence[int]) -> int:
    """Smallest integer at or above ``threshold * (m-2)^3``."""
    c = get_case(case)
    return ceil(c.threshold * (m - 2) ** 3)


@dataclass
class Construction:
    m: int
    case: QuaternaryCase
    n: int
    selection: Selection
    witness: Witness

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "coeffs": list(self.case.a),
            "n": self.n,
            "witness": list(self.witness),
            "selection": self.selection.as_dict(),
        }


def construct(m: int, case: QuaternaryCase | Sequence[int], n: int) -> Construction:
    """Run the full pipeline and keep the selection trace."""
    c = _check(m, case)
    if n < c.threshold * (m - 2) ** 3:
        raise BelowThreshold(
            f"N={n} is below {c.threshold}*(m-2)^3 = {float(c.threshold * (m - 2) ** 3):g}; use represents()"
        )
    sel = select_linear_sum(m, c, n)
    assert sel.d > 0, f"D={sel.d} not positive above threshold"
    x = solve_system(c, sel.a, sel.b)
    if x is None:
        raise AssertionError(f"system unsolvable for a={sel.a}, b={sel.b} although D={sel.d} is admissible")
    got, w = lift_to_polygonal(m, c, x, sel.a, sel.b)
    assert got == n
    return Construction(m, c, n, sel, w)


def constructive_represent(m: int, case: QuaternaryCase | Sequence[int], n: int) -> Witness:
    return construct(m, case, n).witness
