"""
Blocks in cycles and the block characterization of commutation distance.

A *block* of a reference permutation beta is a nonempty string of points
that are consecutive inside one cycle of beta (each point is followed by
its beta-image).  A block is proper when it is shorter than its host cycle
and improper when it is the whole cycle.

For permutations alpha, beta a point a is *bad* when alpha*beta and
beta*alpha disagree at a.  Splitting the conjugated cycle
alpha*beta_j*alpha^{-1} at the images of the bad points of the cycle beta_j
yields blocks P_1..P_k of beta such that no concatenation P_i P_{i+1}
(cyclically) is again a block; conversely any such family of blocks arises
this way.  ``verify_characterization`` checks the whole equivalence on a
concrete pair and must return True on every input; a False return signals
a bug, not a property of the input.

Indexing convention: all cyclic index arithmetic is 1-based, wrapping m+1
back to 1 inside a length-m cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .perm import Permutation


def bad_points(alpha: Permutation, beta: Permutation) -> frozenset[int]:
    """
    The points where alpha*beta and beta*alpha disagree.  Its size is the
    commutation distance of the pair.
    """
    alpha._check_degree(beta)
    a, b = alpha.word, beta.word
    return frozenset(i + 1 for i in range(len(a)) if a[b[i]] != b[a[i]])


def profile(alpha: Permutation, beta: Permutation) -> tuple[int, ...]:
    """
    Multiset of per-cycle bad-point counts, as a decreasing tuple.

    Only cycles of beta containing at least one bad point contribute, so
    the parts are positive and sum to the commutation distance; the empty
    tuple means the pair commutes.

    >>> b = Permutation.from_cycles([(1, 2, 4, 5, 3), (7, 6)], 7)
    >>> a = Permutation.from_cycles([(2, 7), (3, 6, 4, 5)], 7)
    >>> profile(a, b)
    (4, 1)
    """
    bad = bad_points(alpha, beta)
    parts = []
    for cycle in beta.cycles():
        c = sum(p in bad for p in cycle)
        if c:
            parts.append(c)
    return as_profile(parts)


def as_profile(parts: Sequence[int]) -> tuple[int, ...]:
    """Canonical (decreasing) form of a multiset of positive parts."""
    if any(p < 1 for p in parts):
        raise ValueError("profile parts must be positive")
    return tuple(sorted(parts, reverse=True))


def _host_cycle(point: int, beta: Permutation) -> tuple[int, ...]:
    # the cycle of beta through `point`, starting there
    w = beta.word
    cycle = [point]
    j = w[point - 1] + 1
    while j != point:
        cycle.append(j)
        j = w[j - 1] + 1
    return tuple(cycle)


def is_block(points: Sequence[int], beta: Permutation) -> bool:
    """
    True iff the points are consecutive inside a single cycle of beta and
    the string is no longer than that cycle.

    A string matching a full cycle is an (improper) block; wrapping past
    one full turn is not.

    >>> pi = Permutation.from_cycles([(1, 2, 3, 4), (5, 6, 7, 8, 9)], 9)
    >>> is_block([2, 3, 4, 1], pi)
    True
    >>> is_block([1, 2, 8], pi)
    False
    """
    points = list(points)
    if not points or len(set(points)) != len(points):
        return False
    if len(points) > len(_host_cycle(points[0], beta)):
        return False
    w = beta.word
    return all(w[a - 1] + 1 == b for a, b in zip(points, points[1:]))


def _is_proper_block(points: Sequence[int], beta: Permutation) -> bool:
    return is_block(points, beta) and len(points) < len(_host_cycle(points[0], beta))


@dataclass(frozen=True)
class BlockDecomposition:
    """
    The split of alpha*beta_j*alpha^{-1} cut at the images of the bad
    points of the cycle beta_j.

    ``domain`` is beta_j rewritten so that reading it in k runs of the
    block lengths puts one bad point at the end of each run, and
    ``bad_points[i]`` is that last point of run i; ``blocks[i]`` is the
    alpha-image of run i.  Runs start from the block whose bad point has
    the smallest label, which fixes one of the k cyclic rotations.
    """

    cycle_index: int
    domain: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    bad_points: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "cycle": list(self.domain),
            "blocks": [list(b) for b in self.blocks],
            "bad_points": list(self.bad_points),
        }


def block_decomposition(
    alpha: Permutation, beta: Permutation, cycle_index: int
) -> BlockDecomposition:
    """
    Decompose the image of the cycle_index-th cycle of beta (in canonical
    cycle order) at the images of its bad points.

    Raises ValueError when alpha commutes with beta on that cycle: with no
    bad points there is nothing to cut.
    """
    cycles = beta.cycles()
    if not 0 <= cycle_index < len(cycles):
        raise ValueError(f"cycle index {cycle_index} out of range")
    cycle = cycles[cycle_index]
    bad = bad_points(alpha, beta)
    bad_pos = [i for i, p in enumerate(cycle) if p in bad]
    if not bad_pos:
        raise ValueError(f"cycle {cycle} commutes; no block decomposition")
    m = len(cycle)
    anchor = min(bad_pos, key=lambda i: cycle[i])
    # previous bad position cyclically before the anchor (itself when alone)
    prev = max(
        bad_pos, key=lambda i: (i - anchor) % m if i != anchor else 0
    )
    start = (prev + 1) % m
    domain: list[int] = []
    blocks: list[tuple[int, ...]] = []
    ends: list[int] = []
    run: list[int] = []
    for step in range(m):
        p = cycle[(start + step) % m]
        domain.append(p)
        run.append(p)
        if p in bad:
            blocks.append(tuple(alpha(q) for q in run))
            ends.append(p)
            run = []
    assert not run, "cycle walk must end at a bad point"
    return BlockDecomposition(cycle_index, tuple(domain), tuple(blocks), tuple(ends))


def verify_characterization(alpha: Permutation, beta: Permutation) -> bool:
    """
    Check the block characterization on one pair:

    * on every cycle of beta without bad points, alpha maps the cycle onto
      an improper block (a whole cycle) of beta;
    * on a cycle with one bad point, the single image block is a proper
      block of beta;
    * on a cycle with k > 1 bad points, every image block is a block of
      beta and no cyclically adjacent pair P_i P_{i+1} merges into one;
    * all image blocks over all cycles are pairwise disjoint;
    * the per-cycle bad counts add up to the commutation distance.

    True on all inputs; any False indicates an implementation bug.
    """
    alpha._check_degree(beta)
    k = alpha.commute_distance(beta)
    bad = bad_points(alpha, beta)
    total = 0
    all_points: list[int] = []
    for idx, cycle in enumerate(beta.cycles()):
        in_cycle = sum(p in bad for p in cycle)
        if in_cycle == 0:
            image = tuple(alpha(p) for p in cycle)
            if not is_block(image, beta):
                return False
            if len(image) != len(_host_cycle(image[0], beta)):
                return False
            continue
        dec = block_decomposition(alpha, beta, idx)
        ki = len(dec.blocks)
        if ki != in_cycle:
            return False
        total += ki
        if ki == 1:
            if not _is_proper_block(dec.blocks[0], beta):
                return False
        else:
            if not all(is_block(b, beta) for b in dec.blocks):
                return False
            for i in range(ki):
                merged = dec.blocks[i] + dec.blocks[(i + 1) % ki]
                if is_block(merged, beta):
                    return False
        for b in dec.blocks:
            all_points.extend(b)
    if len(all_points) != len(set(all_points)):
        return False
    return total == k
