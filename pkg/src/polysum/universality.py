"""Universality of sums with ``alpha`` ones and ``beta`` twos.

Three routes are offered:

* a closed-form classification in ``alpha``, ``beta`` and ``m`` for m >= 9;
* a finite criterion set whose representability decides universality for
  m = 7 and m >= 9;
* a scan of every integer up to a known truant bound for m in {3,4,5,6,8}.

The residue-cover helpers check, for one m at a time, the ingredients of
the argument that certain sums are universal for all m >= 19.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from polysum.lattice import is_excluded_ternary
from polysum.polygonal import check_gonality, coeff_vector, reach_table, represents

# smallest bound such that representing 1..bound implies universality,
# for any coefficient vector
UNIVERSALITY_BOUND: dict[int, int] = {3: 8, 4: 15, 5: 109, 6: 8, 8: 60}

CRITERION_M7 = (1, 3, 5, 10, 19, 23)
CRITERION_M9 = (1, 5, 7, 34)


class Reason(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    CRITERION = "criterion"
    GAMMA_TABLE = "gamma_table"
    EXCEPTION_M9_BETA3 = "exception_m9_beta3"


@dataclass(frozen=True)
class Verdict:
    m: int
    alpha: int
    beta: int
    universal: bool
    reason: Reason
    witness_failures: tuple[int, ...] = ()

    def __post_init__(self):
        if self.universal == bool(self.witness_failures):
            raise AssertionError(
                f"verdict universal={self.universal} inconsistent with failures {self.witness_failures}"
            )

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "alpha": self.alpha,
            "beta": self.beta,
            "universal": self.universal,
            "reason": self.reason.value,
            "witness_failures": list(self.witness_failures),
        }


def _require_large(m: int) -> None:
    check_gonality(m)
    if m < 9:
        raise ValueError(f"m must be >= 9, got {m}")


def necessary_conditions(m: int, alpha: int, beta: int) -> bool:
    """Necessary conditions on ``(alpha, beta)`` for universality when m >= 9."""
    _require_large(m)
    if alpha < max(m - 2 * beta - 4, 1):
        return False
    if beta == m // 2 - 2 and alpha < 2:
        return False
    return True


def _small_represented(m: int, alpha: int, beta: int, n: int) -> bool:
    # below m - 2 the only generalized m-gonal values are 0, 1 and m - 3
    assert n <= m - 2
    for u in range(min(alpha, n // (m - 3)) + 1):
        for w in range(min(beta, (n - u * (m - 3)) // (2 * (m - 3))) + 1):
            rest = n - (m - 3) * (u + 2 * w)
            # remaining ones from alpha - u slots, twos from beta - w slots
            j = min(beta - w, rest // 2)
            if rest - 2 * j <= alpha - u:
                return True
    return False


def criterion_set(m: int) -> tuple[int, ...]:
    check_gonality(m)
    if m == 7:
        return CRITERION_M7
    if m == 9:
        return CRITERION_M9
    if m >= 10:
        return (1, m - 4, m - 2)
    raise ValueError(f"no criterion set for m={m}")


def classify_closed_form(m: int, alpha: int, beta: int) -> Verdict:
    """Closed-form universality classification for m >= 9.

    Universal iff ``alpha >= 1`` when ``beta >= m//2 - 1``, ``alpha >= 2``
    when ``beta == m//2 - 2`` and ``alpha >= m - 2*beta - 4`` for smaller
    ``beta``; except that m = 9, beta = 3 needs ``alpha >= 2``.  The
    failures reported are criterion elements shown unrepresented without
    any search.
    """
    _require_large(m)
    if alpha < 0 or beta < 0 or alpha + beta < 1:
        raise ValueError("need alpha, beta >= 0 with alpha + beta >= 1")
    half = m // 2
    if m == 9 and beta == 3:
        need = 2
    elif beta >= half - 1:
        need = 1
    elif beta == half - 2:
        need = 2
    else:
        need = m - 2 * beta - 4
    universal = alpha >= need
    small = [n for n in (1, m - 4, m - 2) if not _small_represented(m, alpha, beta, n)]
    if m == 9 and beta == 3 and alpha == 1:
        return Verdict(m, alpha, beta, False, Reason.EXCEPTION_M9_BETA3, (34,))
    return Verdict(m, alpha, beta, universal, Reason.CLOSED_FORM, tuple(small))


def classify_by_criterion(m: int, alpha: int, beta: int) -> Verdict:
    """Decide universality by searching for the criterion-set elements."""
    crit = criterion_set(m)
    a = coeff_vector(alpha, beta)
    table = reach_table(m, a, max(crit))
    failures = tuple(n for n in crit if not table.represented(n))
    return Verdict(m, alpha, beta, not failures, Reason.CRITERION, failures)


def classify_small_m(m: int, alpha: int, beta: int) -> Verdict:
    """Universality for m in {3, 4, 5, 6, 8} by scanning up to the truant bound."""
    check_gonality(m)
    if m not in UNIVERSALITY_BOUND:
        raise ValueError(f"no truant bound known for m={m}")
    bound = UNIVERSALITY_BOUND[m]
    table = reach_table(m, coeff_vector(alpha, beta), bound)
    failures = tuple(n for n in range(bound + 1) if not table.represented(n))
    return Verdict(m, alpha, beta, not failures, Reason.GAMMA_TABLE, failures)


def classify(m: int, alpha: int, beta: int) -> Verdict:
    """Dispatch to the route available for ``m``."""
    check_gonality(m)
    if m in UNIVERSALITY_BOUND:
        return classify_small_m(m, alpha, beta)
    if m == 7:
        return classify_by_criterion(m, alpha, beta)
    return classify_closed_form(m, alpha, beta)


def min_universal_length(m: int) -> int:
    """Fewest coefficients (each 1 or 2) giving a universal sum, m >= 9."""
    _require_large(m)
    k = 1
    while True:
        if any(classify_closed_form(m, alpha, k - alpha).universal for alpha in range(k + 1)):
            return k
        k += 1


@dataclass(frozen=True)
class ResidueCover:
    m: int
    variant: str
    base: tuple[int, ...]
    shifted: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "shifted", tuple(r + 2 * (self.m - 2) for r in self.base))
        mod = self.m - 2
        for rs in (self.base, self.shifted):
            if sorted(r % mod for r in rs) != list(range(mod)):
                raise AssertionError(f"{rs} is not a complete residue system mod {mod}")


def residue_cover(m: int, variant: str) -> ResidueCover:
    """Residue systems used to reduce every ``N`` to a multiple of ``m-2``.

    Variant ``"A"`` (odd m only) starts with ``0..m-10``; variant ``"B"``
    with ``0..m-11``, each followed by a handful of larger residues.
    """
    check_gonality(m)
    if m < 19:
        raise ValueError(f"residue covers need m >= 19, got {m}")
    if variant == "A":
        if m % 2 == 0:
            raise ValueError("variant A needs odd m")
        tail = (2 * m - 11, 3 * m - 12, 4 * m - 13, 4 * m - 12, 3 * m - 9, 2 * m - 6, m - 3)
        base = tuple(range(m - 9)) + tail
    elif variant == "B":
        tail = (2 * m - 12, 3 * m - 13, 4 * m - 14, 5 * m - 15, 4 * m - 12, 3 * m - 9, 2 * m - 6, m - 3)
        base = tuple(range(m - 10)) + tail
    else:
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    return ResidueCover(m, variant, base)


# target (alpha, beta) -> (variant, complement (alpha, beta) after removing (1, 3))
def _targets(m: int) -> dict[tuple[int, int], tuple[str, tuple[int, int]]]:
    if m % 2:
        return {
            (2, (m - 5) // 2): ("A", (1, (m - 11) // 2)),
            (3, (m - 7) // 2): ("B", (2, (m - 13) // 2)),
        }
    return {(2, (m - 6) // 2): ("B", (1, (m - 12) // 2))}


def large_m_targets(m: int) -> list[tuple[int, int]]:
    return list(_targets(m))


@dataclass
class LargeMReport:
    m: int
    target: tuple[int, int]
    variant: str
    cover_ok: bool
    residue_failures: list[int]
    small_failures: list[int]
    reduction_failures: list[int]
    reduction_bound: int
    direct_checked: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cover_ok and not (self.residue_failures or self.small_failures or self.reduction_failures)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "target": list(self.target),
            "variant": self.variant,
            "cover_ok": self.cover_ok,
            "residue_failures": self.residue_failures,
            "small_failures": self.small_failures,
            "reduction_failures": self.reduction_failures,
            "reduction_bound": self.reduction_bound,
            "direct_checked": self.direct_checked,
            "passed": self.passed,
        }


def verify_large_m(
    m: int, target: tuple[int, int], max_m: int = 101, reduction_bound: int = 0
) -> LargeMReport:
    """Check the residue-cover argument for one ``m >= 19``.

    Checks that the cover is a pair of complete residue systems, that each
    residue is represented by the complement of (1, 2, 2, 2) inside the
    target, and that every ``N < 6m - 17`` is represented by the target.
    With ``reduction_bound > 0`` it additionally replays the reduction for
    each ``6m - 17 <= N <= reduction_bound``: one of the two residues must
    leave a quotient outside ``4^s (8t+1)``.  The few ``N`` where neither
    does (with the ``5m - 15`` residue this happens at ``N = 6m - 17``) are
    listed in ``direct_checked`` and must be represented outright.
    """
    check_gonality(m)
    if m < 19:
        raise ValueError(f"m must be >= 19, got {m}")
    if m > max_m:
        raise ValueError(f"m={m} exceeds the configured cap {max_m}")
    targets = _targets(m)
    target = tuple(target)  # type: ignore[assignment]
    if target not in targets:
        raise ValueError(f"target {target} does not match the parity of m={m}; expected one of {list(targets)}")
    variant, (ca, cb) = targets[target]
    try:
        cover = residue_cover(m, variant)
        cover_ok = True
    except AssertionError:
        cover_ok = False
        cover = None
    residue_failures: list[int] = []
    if cover is not None:
        comp = coeff_vector(ca, cb)
        for r in cover.base + cover.shifted:
            if represents(m, comp, r) is None:
                residue_failures.append(r)
    full = reach_table(m, coeff_vector(*target), 6 * m - 18)
    small_failures = [n for n in range(6 * m - 17) if not full.represented(n)]
    reduction_failures: list[int] = []
    direct: list[int] = []
    if cover is not None and reduction_bound >= 6 * m - 17:
        mod = m - 2
        first = {r % mod: r for r in cover.base}
        big = reach_table(m, coeff_vector(*target), reduction_bound)
        for n in range(6 * m - 17, reduction_bound + 1):
            r1 = first[n % mod]
            if any(n >= r and not is_excluded_ternary((n - r) // mod) for r in (r1, r1 + 2 * mod)):
                continue
            direct.append(n)
            if not big.represented(n):
                reduction_failures.append(n)
    return LargeMReport(
        m, target, variant, cover_ok, residue_failures, small_failures, reduction_failures, reduction_bound, direct
    )
