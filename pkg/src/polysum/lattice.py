"""Quaternary diagonal lattices, their obstruction families and helpers.

The four coefficient vectors handled here are the quaternary ones with
entries 1 or 2.  For each of them the system

    sum(a_i * x_i**2) == a,    sum(a_i * x_i) == b

is solvable exactly when ``A*a - b*b`` avoids a parametric family of
integers (the obstruction family), provided ``a = b (mod 2)`` and
``A*a - b*b > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from polysum.polygonal import (
    Witness,
    check_gonality,
    enumeration_key,
    evaluate,
    represents,
    zigzag,
)

Vec4 = tuple[int, int, int, int]


@dataclass(frozen=True)
class QuaternaryCase:
    """One of the four quaternary coefficient vectors.

    ``span`` is how many consecutive residue-class candidates the linear
    sum selection may need, and ``threshold`` the cubic constant above
    which every integer is represented.
    """

    a: Vec4
    span: int
    threshold: Fraction

    @property
    def total(self) -> int:
        return sum(self.a)

    def __str__(self) -> str:
        return ",".join(map(str, self.a))


CASES: dict[Vec4, QuaternaryCase] = {
    c.a: c
    for c in (
        QuaternaryCase((1, 1, 1, 1), 2, Fraction(1, 8)),
        QuaternaryCase((1, 1, 1, 2), 2, Fraction(1, 10)),
        QuaternaryCase((1, 1, 2, 2), 4, Fraction(1, 3)),
        QuaternaryCase((1, 2, 2, 2), 7, Fraction(7, 8)),
    )
}


def get_case(case: QuaternaryCase | Sequence[int]) -> QuaternaryCase:
    if isinstance(case, QuaternaryCase):
        return case
    key = tuple(case)
    try:
        return CASES[key]  # type: ignore[index]
    except KeyError:
        raise ValueError(f"unsupported quaternary coefficients {key}") from None


def valuation(p: int, n: int) -> tuple[int, int]:
    """Return ``(v, u)`` with ``n == p**v * u`` and ``p`` not dividing ``u``."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def obstructed(a: Vec4, d: int) -> bool:
    """Family membership for any integer ``d`` (t ranges over all of Z)."""
    if d == 0:
        return False
    if a in ((1, 1, 1, 1), (1, 1, 2, 2)):
        v, u = valuation(2, d)
        return v % 2 == 0 and u % 8 == 7
    if a == (1, 1, 1, 2):
        v, u = valuation(5, d)
        return v >= 2 and v % 2 == 0 and u % 5 in (2, 3)
    v, u = valuation(2, d)
    return v % 2 == 1 and u % 8 == 7


def in_obstruction(case: QuaternaryCase | Sequence[int], d: int) -> bool:
    """Whether the positive integer ``d`` lies in the obstruction family.

    Families: ``4^s (8t+7)`` for (1,1,1,1) and (1,1,2,2); ``25^(s+1) (5t+-2)``
    for (1,1,1,2); ``4^s (16t+14)`` for (1,2,2,2).  Decided by stripping
    the relevant prime, never by enumeration.
    """
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    return obstructed(get_case(case).a, d)


@dataclass(frozen=True)
class BinaryGram:
    """Binary lattice with Gram matrix ``[[first, mixed], [mixed, second]]``."""

    first: int
    mixed: int
    second: int

    @property
    def det(self) -> int:
        return self.first * self.second - self.mixed * self.mixed


def _pair_roots(c1: int, c2: int, s: int, q: int) -> list[tuple[int, int]]:
    """Integer ``(x1, x2)`` with ``c1 x1 + c2 x2 = s`` and ``c1 x1^2 + c2 x2^2 = q``."""
    # substitute x1 = (s - c2 x2)/c1:  (c2^2 + c1 c2) x2^2 - 2 s c2 x2 + s^2 - c1 q = 0
    qa = c2 * c2 + c1 * c2
    qb = -2 * s * c2
    qc = s * s - c1 * q
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    r = isqrt(disc)
    if r * r != disc:
        return []
    out = []
    for num in {-qb + r, -qb - r}:
        if num % (2 * qa):
            continue
        x2 = num // (2 * qa)
        rest = s - c2 * x2
        if rest % c1 == 0:
            out.append((rest // c1, x2))
    return sorted(out, key=lambda p: enumeration_key(p[1]))


def solve_system(case: QuaternaryCase | Sequence[int], a: int, b: int) -> Vec4 | None:
    """Integer solution of ``sum(c_i x_i^2) = a``, ``sum(c_i x_i) = b``.

    ``x4`` is enumerated outermost, then ``x3``, both in zigzag order under
    the remaining quadratic budget; ``x1, x2`` then follow from a quadratic.
    Returns ``None`` only after the whole box ``|x_i| <= sqrt(a/c_i)`` is
    exhausted.
    """
    c = get_case(case).a
    if a < 0 or (a - b) % 2:
        return None
    c1, c2, c3, c4 = c
    r4 = isqrt(a // c4)
    for x4 in zigzag(-r4, r4):
        left4 = a - c4 * x4 * x4
        r3 = isqrt(left4 // c3)
        for x3 in zigzag(-r3, r3):
            left3 = left4 - c3 * x3 * x3
            s = b - c4 * x4 - c3 * x3
            for x1, x2 in _pair_roots(c1, c2, s, left3):
                return (x1, x2, x3, x4)
    return None


def check_solution(case: QuaternaryCase | Sequence[int], x: Sequence[int], a: int, b: int) -> bool:
    c = get_case(case).a
    return (
        sum(ci * xi * xi for ci, xi in zip(c, x)) == a
        and sum(ci * xi for ci, xi in zip(c, x)) == b
    )


def lift_to_polygonal(
    m: int, case: QuaternaryCase | Sequence[int], x: Sequence[int], a: int, b: int
) -> tuple[int, Witness]:
    """Turn a solution of the system into a polygonal representation.

    Returns ``N = (m-2)(a-b)/2 + b`` together with ``x`` itself, which
    satisfies ``sum(c_i P_m(x_i)) == N``.
    """
    check_gonality(m)
    c = get_case(case)
    if (a - b) % 2:
        raise ValueError(f"a={a} and b={b} must have the same parity")
    if not check_solution(c, x, a, b):
        raise ValueError(f"{tuple(x)} does not solve the system for a={a}, b={b}")
    n = (m - 2) * (a - b) // 2 + b
    w = tuple(x)
    assert evaluate(m, c.a, w) == n
    return n, w


# Orthogonal maps of Q^4 (with the diagonal form of the case) sending the
# exceptional image of the all-ones-partner vector back to (1, 1, 1, 1).
# Entries are doubled; the true matrix is half of each.
_ISOMETRY_2X: dict[Vec4, tuple[Vec4, ...]] = {
    (1, 1, 1, 1): ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1)),
    (1, 1, 1, 2): ((0, 2, 0, 0), (1, 0, 1, 2), (1, 0, 1, -2), (1, 0, -1, 0)),
    (1, 1, 2, 2): ((0, 0, 2, 2), (0, 0, 2, -2), (1, -1, 0, 0), (1, 1, 0, 0)),
}

# the non-canonical first-vector image each isometry repairs
EXCEPTIONAL_IMAGE: dict[Vec4, Vec4] = {
    (1, 1, 1, 1): (2, 0, 0, 0),
    (1, 1, 1, 2): (2, 1, 0, 0),
    (1, 1, 2, 2): (2, 0, 1, 0),
}


def apply_isometry(case: QuaternaryCase | Sequence[int], v: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Exact image of ``v`` under the half-integral orthogonal map of ``case``."""
    c = get_case(case).a
    try:
        rows = _ISOMETRY_2X[c]
    except KeyError:
        raise ValueError(f"no isometry defined for {c}") from None
    if len(v) != 4:
        raise ValueError("expected a 4-vector")
    return tuple(Fraction(sum(t * Fraction(x) for t, x in zip(row, v)), 2) for row in rows)


def form_value(case: QuaternaryCase | Sequence[int], v: Sequence[int | Fraction]) -> Fraction:
    c = get_case(case).a
    return sum((ci * Fraction(x) ** 2 for ci, x in zip(c, v)), Fraction(0))


def canonicalize(case: QuaternaryCase | Sequence[int], y: Sequence[int]) -> Vec4:
    """Map a representation whose first vector has the exceptional image.

    ``y`` is the image of the second basis vector.  Its transform is
    integral whenever ``a = b (mod 2)`` holds, and then solves the system
    with the same ``(a, b)``.
    """
    img = apply_isometry(case, y)
    if any(x.denominator != 1 for x in img):
        raise ValueError(f"transform of {tuple(y)} is not integral: {img}")
    return tuple(int(x) for x in img)  # type: ignore[return-value]


def binary_represented(case: QuaternaryCase | Sequence[int], g: BinaryGram) -> bool:
    """Whether ``g`` embeds in the diagonal lattice of ``case``.

    Closed-form side only: the answer is "determinant outside the
    obstruction family".
    """
    c = get_case(case)
    if g.first != c.total:
        raise ValueError(f"first Gram entry must be {c.total}, got {g.first}")
    if (g.second - g.mixed) % 2:
        raise ValueError("second and mixed entries must have the same parity")
    if g.det <= 0:
        raise ValueError("Gram matrix must be positive definite")
    return not in_obstruction(c, g.det)


def ternary_form(x: int, y: int, z: int) -> int:
    return 3 * (x * x + y * y + z * z) + 4 * (x * y + y * z + z * x)


def ternary_represents(n: int) -> tuple[int, int, int] | None:
    """Solve ``3x^2+3y^2+3z^2+4(xy+yz+zx) = n``.

    The Gram matrix has eigenvalues 7, 1, 1, so the form is at least
    ``x^2+y^2+z^2`` and every coordinate of a solution is at most
    ``isqrt(n)`` in absolute value.  ``x`` and ``y`` are enumerated over
    that box and ``z`` is solved from the remaining quadratic.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    r = isqrt(n)
    for x in zigzag(-r, r):
        for y in zigzag(-r, r):
            # 3z^2 + 4(x+y) z + (3x^2 + 3y^2 + 4xy - n) = 0
            qb = 4 * (x + y)
            qc = 3 * x * x + 3 * y * y + 4 * x * y - n
            disc = qb * qb - 12 * qc
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            roots = sorted(
                ((-qb + e) // 6 for e in {s, -s} if (-qb + e) % 6 == 0),
                key=enumeration_key,
            )
            if roots:
                return x, y, roots[0]
    return None


def is_excluded_ternary(n: int) -> bool:
    """True for ``n`` of the form ``4^s (8t+1)``."""
    if n <= 0:
        return False
    v, u = valuation(2, n)
    return v % 2 == 0 and u % 8 == 1


@dataclass(frozen=True)
class HyperplaneCheck:
    m: int
    n: int
    covered: bool
    witness: Witness | None = None


def hyperplane_witness(m: int, n: int, cross_check: bool = True) -> HyperplaneCheck:
    """Represent ``(m-2) n`` by the (1,2,2,2) sum on ``x1 + 2x2 + 2x3 + 2x4 = 0``.

    On that hyperplane the weighted polygonal sum equals ``(m-2)`` times the
    ternary form in ``(x2, x3, x4)``.  Integers ``n = 4^s (8t+1)`` are
    outside the claim and come back with ``covered=False``.  With
    ``cross_check`` the generic search must also find ``(m-2) n``.
    """
    check_gonality(m)
    if n < 1:
        raise ValueError("n must be positive")
    if is_excluded_ternary(n):
        return HyperplaneCheck(m, n, covered=False)
    sol = ternary_represents(n)
    if sol is None:
        raise AssertionError(f"ternary form misses {n}, which is not of the form 4^s(8t+1)")
    x, y, z = sol
    w = (-2 * (x + y + z), x, y, z)
    assert evaluate(m, (1, 2, 2, 2), w) == (m - 2) * n
    if cross_check and represents(m, (1, 2, 2, 2), (m - 2) * n) is None:
        raise AssertionError(f"generic search misses {(m - 2) * n} for m={m}")
    return HyperplaneCheck(m, n, covered=True, witness=w)
