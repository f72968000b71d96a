"""
Closed-form counts of permutations at commutation distance k.

All arithmetic is exact: Python integers throughout, ``Fraction`` for the
one ratio.  Every formula here has an independent brute-force counterpart
in :mod:`kommute.oracle`; the test suite holds the two routes equal on all
cycle types of small symmetric groups.

``count`` dispatches a cycle type and distance to the most specific
formula available and raises :class:`NoClosedFormError` when there is none
(k >= 5 for a general cycle type), pointing the caller at the exhaustive
counter instead of approximating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .perm import CycleType


class NoClosedFormError(ValueError):
    """No closed-form count is available; use the exhaustive oracle."""


@dataclass(frozen=True)
class FormulaResult:
    """An exact count plus the tag of the formula that produced it."""

    value: int
    provenance: str

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("counts cannot be negative")


def successor_free_cycles(k: int) -> int:
    """
    Number of k-cycles of {1..k} avoiding every i -> i+1 cyclically
    (A000757), by inclusion-exclusion over the forbidden successions:

        sum_{i=0}^{k-1} (-1)^i C(k,i) (k-i-1)!  +  (-1)^k

    Agrees with the brute-force enumeration for k <= 9.

    >>> [successor_free_cycles(k) for k in range(8)]
    [1, 0, 0, 1, 1, 8, 36, 229]
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    total = sum(
        (-1) ** i * math.comb(k, i) * math.factorial(k - i - 1) for i in range(k)
    )
    return total + (-1) ** k


@lru_cache(maxsize=None)
def deranged_matchings(j: int) -> int:
    """
    Number of perfect matchings of 2j points avoiding j disjoint forbidden
    pairs (A053871), via a(j) = 2(j-1) * (a(j-1) + a(j-2)) with a(0) = 1
    and a(1) = 0.  Agrees with brute-force enumeration for j <= 7 and with
    the generating-function identity checked in :mod:`kommute.series`.

    >>> [deranged_matchings(j) for j in range(6)]
    [1, 0, 2, 8, 60, 544]
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    if j == 0:
        return 1
    if j == 1:
        return 0
    return 2 * (j - 1) * (deranged_matchings(j - 1) + deranged_matchings(j - 2))


# -- small fixed distances ----------------------------------------------------


def count_k0(t: CycleType) -> int:
    """Distance 0 is commutation, so this is the centralizer order."""
    return t.centralizer_order()


def count_k1(t: CycleType) -> int:
    """Always 0: no two permutations are at Hamming distance 1."""
    return 0


def count_k2(t: CycleType) -> int:
    """Always 0: distance 2 would make a commutator a transposition."""
    return 0


def count_k3(t: CycleType) -> int:
    """
    Exact count at distance 3 for any cycle type:

        ( sum_{l>=3} c_l C(l,3)  +  sum_{l<m} l m c_l c_m ) * |centralizer|

    The first sum is the single-cycle case, the second the [2,1] split over
    two cycles of different lengths (fixed points included).
    """
    c = t.count
    n = t.degree
    single = sum(c(l) * math.comb(l, 3) for l in range(3, n + 1))
    split = sum(
        l * m * c(l) * c(m)
        for l in range(1, n + 1)
        for m in range(l + 1, n + 1)
    )
    return (single + split) * t.centralizer_order()


def count_k4_parts(t: CycleType) -> dict[tuple[int, ...], int]:
    """
    The distance-4 count split by bad-point profile, keyed by the
    partitions (4,), (3,1), (2,2) and (2,1,1); the all-ones profile is
    impossible.  Each component is exact for any cycle type.
    """
    c = t.count
    n = t.degree
    central = t.centralizer_order()

    single = sum(c(i) * math.comb(i, 4) for i in range(4, n + 1))

    three_one = sum(
        i * j * (j - i - 1) * c(i) * c(j)
        for i in range(1, n + 1)
        for j in range(i + 2, n + 1)
    )

    two_two = sum(
        i * math.comb(i, 2) * math.comb(c(i), 2) for i in range(2, n + 1)
    ) + sum(
        i * (i - 1) * j * c(i) * c(j)
        for i in range(2, n + 1)
        for j in range(i + 1, n + 1)
    )

    two_one_one = sum(
        i**3 * c(2 * i) * math.comb(c(i), 2) for i in range(1, n // 2 + 1)
    ) + sum(
        i * j * (i + j) * c(i) * c(j) * c(i + j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1 - i)
    )

    return {
        (4,): single * central,
        (3, 1): three_one * central,
        (2, 2): two_two * central,
        (2, 1, 1): two_one_one * central,
    }


def count_k4(t: CycleType) -> int:
    """Exact count at distance 4 for any cycle type (sum of the profiles)."""
    return sum(count_k4_parts(t).values())


# -- profile-level counting ---------------------------------------------------


def single_cycle_count(t: CycleType, k: int) -> int:
    """
    Permutations at distance k whose bad points all lie in one cycle:

        |centralizer| * sum_{l>=k} c_l C(l,k) f(k)

    with f the successor-free cycle count.  Defined for k >= 3 (for k < 3
    no such permutation exists and the hypothesis fails).
    """
    if k < 3:
        raise ValueError("single-cycle counts require k >= 3")
    c = t.count
    n = t.degree
    f = successor_free_cycles(k)
    return t.centralizer_order() * sum(
        c(l) * math.comb(l, k) * f for l in range(k, n + 1)
    )


def touched_cycles_count(
    core_ways: int, t: CycleType, touched: Mapping[int, int]
) -> int:
    """
    Number of permutations failing to commute on exactly touched[l] cycles
    of each length l (and commuting elsewhere), given ``core_ways`` ways to
    build the failing restriction once the touched cycles are fixed:

        core_ways * |centralizer| * prod_l C(c_l, h_l) / (h_l! * l**h_l)

    Every division is checked exact; a remainder means the caller's
    core_ways is wrong.
    """
    if core_ways < 0:
        raise ValueError("core_ways cannot be negative")
    numerator = core_ways * t.centralizer_order()
    denominator = 1
    for length, h in touched.items():
        if h < 0:
            raise ValueError("touched counts cannot be negative")
        c = t.count(length)
        if h > c:
            raise ValueError(
                f"cannot touch {h} cycles of length {length}; type has {c}"
            )
        numerator *= math.comb(c, h)
        denominator *= math.factorial(h) * length**h
    if numerator % denominator:
        raise ArithmeticError(
            "touched-cycle count is not an integer; core_ways is inconsistent"
        )
    return numerator // denominator


# -- special reference permutations ------------------------------------------


def count_for_ncycle(k: int, n: int) -> int:
    """
    Permutations at distance k from a fixed n-cycle (A233440 as a triangle):

        T(k, n) = n * C(n, k) * f(k)

    so T(0, n) = n (the centralizer) and T(1, n) = T(2, n) = 0.  The rows
    sum to n!.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= k <= n:
        raise ValueError(f"distance {k} out of range 0..{n}")
    return n * math.comb(n, k) * successor_free_cycles(k)


def transposition_count(k: int, n: int) -> int:
    """
    Permutations at distance k from a transposition in S_n: nonzero only
    for k = 0, 3, 4 (2(n-2)!, 4(n-2)(n-2)! and (n-2)(n-3)(n-2)!).
    """
    if n < 2:
        raise ValueError("a transposition needs degree >= 2")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 2 * math.factorial(n - 2)
    if k == 3:
        return 4 * (n - 2) * math.factorial(n - 2)
    if k == 4 and n > 2:
        return (n - 2) * (n - 3) * math.factorial(n - 2)
    return 0


def fpf_involution_count(k: int, m: int) -> int:
    """
    Permutations at distance k from a fixed-point-free involution of S_2m
    (m >= 2): zero for odd k, and for k = 2j

        2**m * m! * C(m, j) * a(j)

    with a the deranged-matching count, so distance 2 never occurs.
    """
    if m < 2:
        raise ValueError("fixed-point-free involutions need m >= 2")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k % 2:
        return 0
    j = k // 2
    if j > m:
        return 0
    return 2**m * math.factorial(m) * math.comb(m, j) * deranged_matchings(j)


def support_bound(t: CycleType) -> int:
    """Distances beyond twice the support size are unreachable: 2(n - c_1)."""
    return 2 * (t.degree - t.count(1))


def tail_ratio(n: int, m: int) -> Fraction:
    """
    T(n-m, n) / n! as an exact rational; approaches exp(-1)/m! for large n.
    """
    if not 0 <= m < n:
        raise ValueError("need 0 <= m < n")
    return Fraction(count_for_ncycle(n - m, n), math.factorial(n))


def inv_e(terms: int = 60) -> Fraction:
    """
    exp(-1) as the alternating partial sum of 1/k!, k <= terms; the error
    is below 1/(terms+1)!, far beyond 50 digits at the default.
    """
    return sum(Fraction((-1) ** k, math.factorial(k)) for k in range(terms + 1))


# -- dispatch -----------------------------------------------------------------


def _is_transposition(t: CycleType) -> bool:
    return t.count(2) == 1 and t.count(1) == t.degree - 2


def _is_fpf_involution(t: CycleType) -> bool:
    return t.degree >= 4 and t.count(2) * 2 == t.degree


def _is_single_cycle(t: CycleType) -> bool:
    return t.count(t.degree) == 1


def count(t: CycleType, k: int) -> FormulaResult:
    """
    Route a (cycle type, distance) query to the most specific closed form.

    Raises NoClosedFormError when no formula applies (k >= 5 for a general
    type); the exhaustive counter in :mod:`kommute.oracle` always works at
    small degree.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = t.degree
    if k in (1, 2):
        return FormulaResult(0, "low_distance_zero")
    if _is_transposition(t):
        return FormulaResult(transposition_count(k, n), "transposition")
    if _is_fpf_involution(t):
        return FormulaResult(fpf_involution_count(k, n // 2), "fpf_involution")
    if _is_single_cycle(t):
        if k > n:
            return FormulaResult(0, "out_of_range_zero")
        return FormulaResult(count_for_ncycle(k, n), "n_cycle")
    if k == 0:
        return FormulaResult(count_k0(t), "centralizer")
    if k == 3:
        return FormulaResult(count_k3(t), "distance_3")
    if k == 4:
        return FormulaResult(count_k4(t), "distance_4")
    if k > min(n, support_bound(t)):
        return FormulaResult(0, "out_of_range_zero")
    raise NoClosedFormError(
        f"no closed form for distance {k} with cycle type {t.parts()}; "
        "use the exhaustive counter (method=brute)"
    )
