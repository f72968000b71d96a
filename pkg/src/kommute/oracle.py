"""
Exhaustive ground truth at small degree.

Everything here counts by brute force over all n! permutations, so the
results are exact and independent of any closed formula in
:mod:`kommute.formulas`.  The enumeration order is the lexicographic order
of one-line words, and all counting can be sharded over contiguous index
ranges of that order: partial counts merge by addition, so the totals are
identical for any shard or worker count.

Degrees are capped (default 8, so 40320 permutations per reference
permutation) to keep full verification in the seconds range; raise the cap
with the KOMMUTE_MAX_BRUTE_N environment variable or the ``max_degree``
arguments when you can wait.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .perm import Permutation

DEFAULT_MAX_DEGREE = 8

ENV_MAX_DEGREE = "KOMMUTE_MAX_BRUTE_N"


def exhaustive_bound(max_degree: int | None = None) -> int:
    """The degree cap in force: explicit argument, else env var, else 8."""
    if max_degree is not None:
        return max_degree
    env = os.environ.get(ENV_MAX_DEGREE)
    return int(env) if env else DEFAULT_MAX_DEGREE


def _check_degree(n: int, max_degree: int | None) -> None:
    bound = exhaustive_bound(max_degree)
    if n > bound:
        raise ValueError(
            f"degree {n} exceeds the exhaustive bound {bound}; "
            f"raise it via {ENV_MAX_DEGREE} or max_degree if you mean it"
        )


def enumerate_sn(
    n: int,
    start: int = 0,
    stop: int | None = None,
    max_degree: int | None = None,
) -> Iterator[Permutation]:
    """
    Stream S_n in lexicographic one-line order, optionally restricted to
    the index range [start, stop) for sharded work.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    _check_degree(n, max_degree)
    words = itertools.permutations(range(n))
    for word in itertools.islice(words, start, stop):
        yield Permutation._from_word(word)


@dataclass(frozen=True)
class KDistribution:
    """Exact counts of permutations at each commutation distance from beta."""

    n: int
    beta: Permutation
    counts: dict[int, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "beta": self.beta.cycle_string(),
            "counts": {str(k): str(c) for k, c in sorted(self.counts.items()) if c},
        }


def _distance_counts(
    n: int, beta_word: tuple[int, ...], start: int, stop: int | None
) -> list[int]:
    # one shard of the distance histogram; pure, merged by addition
    counts = [0] * (n + 1)
    b = beta_word
    rng = range(n)
    words = itertools.islice(itertools.permutations(rng), start, stop)
    for a in words:
        counts[sum(a[b[i]] != b[a[i]] for i in rng)] += 1
    return counts


def distribution(
    beta: Permutation,
    jobs: int = 1,
    shards: int | None = None,
    max_degree: int | None = None,
) -> KDistribution:
    """
    The full histogram {k: #alpha at commutation distance k from beta},
    computed exhaustively.  ``jobs`` > 1 fans the shards out over a process
    pool; the result does not depend on jobs or shard count.
    """
    n = beta.degree
    _check_degree(n, max_degree)
    total = math.factorial(n)
    if shards is None:
        shards = jobs if jobs > 1 else 1
    bounds = [(total * i) // shards for i in range(shards + 1)]
    tasks = [
        (n, beta.word, bounds[i], bounds[i + 1])
        for i in range(shards)
        if bounds[i] < bounds[i + 1]
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_distance_counts_star, tasks))
    else:
        partials = [_distance_counts(*t) for t in tasks]
    counts = [0] * (n + 1)
    for part in partials:
        for k, c in enumerate(part):
            counts[k] += c
    return KDistribution(n, beta, {k: c for k, c in enumerate(counts)})


def _distance_counts_star(args: tuple) -> list[int]:
    return _distance_counts(*args)


def _cycle_ids(beta_word: tuple[int, ...]) -> tuple[list[int], int]:
    # map each zero-based point to the index of its cycle in beta
    n = len(beta_word)
    ids = [-1] * n
    count = 0
    for i in range(n):
        if ids[i] >= 0:
            continue
        j = i
        while ids[j] < 0:
            ids[j] = count
            j = beta_word[j]
        count += 1
    return ids, count


def _word_is_even(word: Sequence[int]) -> bool:
    n = len(word)
    seen = [False] * n
    cycles = 0
    for i in range(n):
        if seen[i]:
            continue
        cycles += 1
        j = i
        while not seen[j]:
            seen[j] = True
            j = word[j]
    return (n - cycles) % 2 == 0


def count_by_profile(
    beta: Permutation, k: int, max_degree: int | None = None
) -> dict[tuple[int, ...], int]:
    """
    Exhaustive counts at distance k, split by the multiset of per-cycle
    bad-point counts (keys are decreasing tuples summing to k).
    """
    n = beta.degree
    _check_degree(n, max_degree)
    b = beta.word
    ids, ncycles = _cycle_ids(b)
    rng = range(n)
    out: dict[tuple[int, ...], int] = {}
    for a in itertools.permutations(rng):
        per_cycle = [0] * ncycles
        bad = 0
        for i in rng:
            if a[b[i]] != b[a[i]]:
                per_cycle[ids[i]] += 1
                bad += 1
        if bad != k:
            continue
        key = tuple(sorted((c for c in per_cycle if c), reverse=True))
        out[key] = out.get(key, 0) + 1
    return out


def filter_by_profile(
    beta: Permutation, profile: Sequence[int], max_degree: int | None = None
) -> set[Permutation]:
    """All alpha whose per-cycle bad-point multiset equals ``profile``."""
    n = beta.degree
    _check_degree(n, max_degree)
    b = beta.word
    ids, ncycles = _cycle_ids(b)
    rng = range(n)
    want = tuple(sorted(profile, reverse=True))
    out: set[Permutation] = set()
    for a in itertools.permutations(rng):
        per_cycle = [0] * ncycles
        for i in rng:
            if a[b[i]] != b[a[i]]:
                per_cycle[ids[i]] += 1
        key = tuple(sorted((c for c in per_cycle if c), reverse=True))
        if key == want:
            out.add(Permutation._from_word(a))
    return out


def filter_by_distance(
    beta: Permutation, k: int, max_degree: int | None = None
) -> set[Permutation]:
    """All alpha at commutation distance exactly k from beta."""
    n = beta.degree
    _check_degree(n, max_degree)
    b = beta.word
    rng = range(n)
    return {
        Permutation._from_word(a)
        for a in itertools.permutations(rng)
        if sum(a[b[i]] != b[a[i]] for i in rng) == k
    }


def even_odd_split(
    beta: Permutation, k: int, max_degree: int | None = None
) -> tuple[int, int]:
    """(even, odd) counts among the permutations at distance k from beta."""
    n = beta.degree
    _check_degree(n, max_degree)
    b = beta.word
    rng = range(n)
    even = odd = 0
    for a in itertools.permutations(rng):
        if sum(a[b[i]] != b[a[i]] for i in rng) != k:
            continue
        if _word_is_even(a):
            even += 1
        else:
            odd += 1
    return even, odd


# -- auxiliary sequences, by direct enumeration -------------------------------


def successor_free_cycles(k: int) -> int:
    """
    Number of k-cycles sigma of {1..k} with sigma(i) != i+1 cyclically for
    every i (wrapping k+1 back to 1), counted by enumerating all (k-1)!
    k-cycles.  First values 0, 0, 1, 1, 8, 36, 229 for k = 1..7 (A000757).
    """
    if not 1 <= k <= 9:
        raise ValueError("brute-force count supported for 1 <= k <= 9")
    count = 0
    for rest in itertools.permutations(range(1, k)):
        # the k-cycle sending 0 -> rest[0] -> ... -> rest[-1] -> 0
        word = [0] * k
        prev = 0
        for x in rest:
            word[prev] = x
            prev = x
        word[prev] = 0
        if all(word[i] != (i + 1) % k for i in range(k)):
            count += 1
    return count


def _matchings(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    # perfect matchings of an even-sized point set, smallest point first
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        pair = (first, partner)
        remaining = rest[:i] + rest[i + 1 :]
        for sub in _matchings(remaining):
            yield (pair,) + sub


def deranged_matchings(j: int) -> int:
    """
    Number of perfect matchings of 2j labeled points avoiding j given
    disjoint forbidden pairs, counted by enumerating all (2j-1)!!
    matchings.  First values 1, 0, 2, 8, 60, 544 for j = 0..5 (A053871).
    """
    if not 0 <= j <= 7:
        raise ValueError("brute-force count supported for 0 <= j <= 7")
    forbidden = {(2 * i, 2 * i + 1) for i in range(j)}
    return sum(
        not (set(m) & forbidden) for m in _matchings(tuple(range(2 * j)))
    )
