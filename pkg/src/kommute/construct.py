"""
Constructive enumeration of permutations at a given commutation distance.

Two cases admit a duplicate-free parameterization:

* all bad points inside one cycle of beta (any distance k >= 3), built by
  choosing a source and a target cycle of equal length, k points of the
  target, a successor-free k-cycle arranging the blocks, a starting point
  for the domain row and a commuting map on the complement;
* beta a fixed-point-free involution (distance 2j), built by re-pairing
  the points of j target 2-cycles so that no original couple survives.

Each generated permutation is produced by exactly one choice tuple, so the
number of choices equals the count given by the corresponding closed
formula, and the generated set equals the brute-force filter at small
degree (both facts are exercised by the test suite).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .perm import Permutation


def canonical_cycle_word(p: Permutation) -> tuple[int, ...]:
    """
    Flatten the max-first canonical cycle notation: each cycle written with
    its largest point first, cycles sorted by first point, parentheses
    dropped.  A bijection from S_n onto one-line words.

    >>> canonical_cycle_word(Permutation.from_cycles([(4, 3, 1), (6, 5), (7, 2)], 7))
    (4, 3, 1, 6, 5, 7, 2)
    """
    rotated = []
    for cycle in p.cycles():
        i = cycle.index(max(cycle))
        rotated.append(cycle[i:] + cycle[:i])
    rotated.sort(key=lambda c: c[0])
    return tuple(point for cycle in rotated for point in cycle)


def from_canonical_word(word: Sequence[int]) -> Permutation:
    """
    Invert :func:`canonical_cycle_word`: cycles restart at each new
    left-to-right maximum of the word.
    """
    cycles: list[list[int]] = []
    best = 0
    for point in word:
        if point > best:
            cycles.append([])
            best = point
        cycles[-1].append(point)
    return Permutation.from_cycles(cycles, len(word))


def successor_free_kcycles(k: int) -> Iterator[Permutation]:
    """
    All k-cycles tau of {1..k} with tau(a) != a+1 cyclically for every a
    (wrapping k+1 back to 1), in a deterministic order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    for rest in itertools.permutations(range(2, k + 1)):
        tau = Permutation.from_cycles([(1,) + rest], k)
        if _successor_free(tau):
            yield tau


def _successor_free(tau: Permutation) -> bool:
    k = tau.degree
    return all(tau(a) != a % k + 1 for a in range(1, k + 1))


@dataclass(frozen=True)
class SingleCycleChoice:
    """
    One parameter tuple of the single-cycle construction.

    ``source`` and ``target`` index equal-length cycles of beta (in
    canonical cycle order, possibly the same); ``points`` is the k-subset
    of the target cycle that will receive the bad points' images; ``tau``
    is a successor-free k-cycle arranging the blocks; ``start`` is the
    domain row's first point inside the source cycle; ``outer`` indexes the
    commuting bijection used on the complement.
    """

    source: int
    target: int
    points: tuple[int, ...]
    tau: Permutation
    start: int
    outer: int


def outer_assignments(
    beta: Permutation, source: int, target: int
) -> Iterator[dict[int, int]]:
    """
    All bijections from the complement of the source cycle onto the
    complement of the target cycle that commute with beta there: cycles
    map onto cycles of the same length, each with a free rotation.
    Deterministic order (lengths ascending, then cycle order, rotations
    last).
    """
    cycles = beta.cycles()
    if not (0 <= source < len(cycles) and 0 <= target < len(cycles)):
        raise ValueError("cycle index out of range")
    if len(cycles[source]) != len(cycles[target]):
        raise ValueError("source and target cycles must have equal length")
    dom: dict[int, list[tuple[int, ...]]] = {}
    cod: dict[int, list[tuple[int, ...]]] = {}
    for i, cycle in enumerate(cycles):
        if i != source:
            dom.setdefault(len(cycle), []).append(cycle)
        if i != target:
            cod.setdefault(len(cycle), []).append(cycle)
    lengths = sorted(dom)

    def expand(idx: int) -> Iterator[dict[int, int]]:
        if idx == len(lengths):
            yield {}
            return
        length = lengths[idx]
        dcycles, ccycles = dom[length], cod[length]
        for rest in expand(idx + 1):
            for perm in itertools.permutations(range(len(ccycles))):
                for rots in itertools.product(range(length), repeat=len(dcycles)):
                    mapping = dict(rest)
                    for d, (ci, rot) in zip(dcycles, zip(perm, rots)):
                        c = ccycles[ci]
                        for pos, point in enumerate(d):
                            mapping[point] = c[(pos + rot) % length]
                    yield mapping

    yield from expand(0)


def _core_row_mapping(
    cycle_from: tuple[int, ...],
    cycle_to: tuple[int, ...],
    points: Sequence[int],
    tau: Permutation,
    start: int,
) -> dict[int, int]:
    # canonical form: the improper block ends at the largest selected point,
    # which is what makes the parameterization duplicate-free
    return _core_row_mapping_any_end(
        cycle_from, cycle_to, points, tau, start, max(points)
    )


def _core_row_mapping_any_end(
    cycle_from: tuple[int, ...],
    cycle_to: tuple[int, ...],
    points: Sequence[int],
    tau: Permutation,
    start: int,
    endpoint: int,
) -> dict[int, int]:
    # map the source cycle onto the block permutation of the target cycle;
    # with a free endpoint every witness is produced k times (once per
    # selected point), with the canonical endpoint exactly once
    m = len(cycle_from)
    k = len(points)
    selected = set(points)
    if not selected <= set(cycle_to):
        raise ValueError("selected points must lie in the target cycle")
    if len(selected) != k:
        raise ValueError("selected points must be distinct")
    if k < 3:
        raise ValueError("the construction needs k >= 3")
    if m < k:
        raise ValueError(f"cycle length {m} is below k={k}")
    if tau.degree != k or len(tau.cycles()) != 1 or not _successor_free(tau):
        raise ValueError("tau must be a successor-free k-cycle")
    if start not in cycle_from:
        raise ValueError("start must lie in the source cycle")
    if endpoint not in selected:
        raise ValueError("the improper block must end at a selected point")
    pos = cycle_to.index(endpoint)
    improper = [cycle_to[(pos + 1 + t) % m] for t in range(m)]
    blocks: list[tuple[int, ...]] = []
    run: list[int] = []
    for p in improper:
        run.append(p)
        if p in selected:
            blocks.append(tuple(run))
            run = []
    image_row = [
        p for label in canonical_cycle_word(tau) for p in blocks[label - 1]
    ]
    s = cycle_from.index(start)
    domain_row = [cycle_from[(s + t) % m] for t in range(m)]
    return dict(zip(domain_row, image_row))


def _assemble(n: int, *mappings: Mapping[int, int]) -> Permutation:
    images = [0] * n
    for mapping in mappings:
        for a, b in mapping.items():
            images[a - 1] = b
    return Permutation(images)


def build_single_cycle(beta: Permutation, choice: SingleCycleChoice) -> Permutation:
    """
    Realize one choice tuple as a permutation alpha.  The result is at
    distance k = len(choice.points) from beta, its bad points are exactly
    the alpha-preimages of the selected points, and they all lie in the
    source cycle.
    """
    cycles = beta.cycles()
    core = _core_row_mapping(
        cycles[choice.source],
        cycles[choice.target],
        choice.points,
        choice.tau,
        choice.start,
    )
    outer = next(
        itertools.islice(
            outer_assignments(beta, choice.source, choice.target),
            choice.outer,
            None,
        )
    )
    return _assemble(beta.degree, core, outer)


def single_cycle_pairs(
    beta: Permutation, k: int
) -> Iterator[tuple[SingleCycleChoice, Permutation]]:
    """
    Every choice tuple together with the permutation it builds.  The map
    choice -> permutation is injective, so consuming this stream counts
    the construction.
    """
    if k < 3:
        raise ValueError("the construction needs k >= 3")
    cycles = beta.cycles()
    n = beta.degree
    taus = list(successor_free_kcycles(k)) if k <= n else []
    for source, cycle_from in enumerate(cycles):
        m = len(cycle_from)
        if m < k:
            continue
        for target, cycle_to in enumerate(cycles):
            if len(cycle_to) != m:
                continue
            outers = list(outer_assignments(beta, source, target))
            for points in itertools.combinations(sorted(cycle_to), k):
                for tau in taus:
                    for start in cycle_from:
                        core = _core_row_mapping(
                            cycle_from, cycle_to, points, tau, start
                        )
                        for oi, outer in enumerate(outers):
                            choice = SingleCycleChoice(
                                source, target, points, tau, start, oi
                            )
                            yield choice, _assemble(n, core, outer)


def enumerate_single_cycle(beta: Permutation, k: int) -> set[Permutation]:
    """
    The exact set of permutations at distance k from beta whose bad points
    all lie in a single cycle of beta.
    """
    return {alpha for _, alpha in single_cycle_pairs(beta, k)}


# -- fixed-point-free involutions ---------------------------------------------


def perfect_matchings(
    points: Sequence[int],
) -> Iterator[tuple[tuple[int, int], ...]]:
    """All perfect matchings of an even point set, smallest point first."""
    points = tuple(points)
    if len(points) % 2:
        raise ValueError("need an even number of points")
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1 :]
        for sub in perfect_matchings(remaining):
            yield ((first, partner),) + sub


def fpf_pairs(
    beta: Permutation, j: int
) -> Iterator[tuple[tuple, Permutation]]:
    """
    Choice tuples and permutations for the fixed-point-free involution
    construction at distance 2j: pick j source and j target 2-cycles, push
    the source couples onto a matching of the target points that avoids
    every target couple, and extend by a commuting bijection elsewhere.
    """
    cycles = beta.cycles()
    if any(len(c) != 2 for c in cycles):
        raise ValueError("beta must be a fixed-point-free involution")
    m = len(cycles)
    if not 0 <= j <= m:
        raise ValueError(f"j={j} out of range 0..{m}")
    n = beta.degree
    for sources in itertools.combinations(range(m), j):
        source_couples = [cycles[i] for i in sources]
        untouched = [cycles[i] for i in range(m) if i not in sources]
        for targets in itertools.combinations(range(m), j):
            target_couples = {cycles[i] for i in targets}
            spare = [cycles[i] for i in range(m) if i not in targets]
            target_points = sorted(p for c in target_couples for p in c)
            for matching in perfect_matchings(target_points):
                if any(pair in target_couples for pair in matching):
                    continue
                for assigned in itertools.permutations(matching):
                    for orient in itertools.product((0, 1), repeat=j):
                        inner: dict[int, int] = {}
                        for (x, y), (u, v), flip in zip(
                            source_couples, assigned, orient
                        ):
                            inner[x], inner[y] = (v, u) if flip else (u, v)
                        for sigma in itertools.permutations(range(m - j)):
                            for rots in itertools.product((0, 1), repeat=m - j):
                                outer: dict[int, int] = {}
                                for d, (ci, rot) in zip(
                                    untouched, zip(sigma, rots)
                                ):
                                    c = spare[ci]
                                    outer[d[0]] = c[rot]
                                    outer[d[1]] = c[1 - rot]
                                choice = (
                                    sources,
                                    targets,
                                    matching,
                                    assigned,
                                    orient,
                                    sigma,
                                    rots,
                                )
                                yield choice, _assemble(n, inner, outer)


def enumerate_fpf(beta: Permutation, j: int) -> set[Permutation]:
    """
    The exact set of permutations at distance 2j from the fixed-point-free
    involution beta.
    """
    return {alpha for _, alpha in fpf_pairs(beta, j)}
