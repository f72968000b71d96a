"""
Permutations of the points {1, ..., n}.

A permutation is stored as a tuple in one-line notation; externally every
point is 1-based, so ``p(i)`` is the image of point ``i``.  Values are
immutable and hashable, and every operation is a pure function, so they can
be shared freely between workers.

The degree ``n`` is carried explicitly by each permutation and two
permutations interact only when their degrees agree; mixing degrees raises
``ValueError``.

Text formats
------------
Cycle notation: ``perm := cycle*``, ``cycle := '(' point (sep point)* ')'``
with points separated by spaces and/or commas.  Points not listed are fixed;
``()`` or the empty string is the identity (the degree always comes from an
explicit argument).  One-line notation is the comma- or space-separated list
of the n images.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Malformed permutation text; ``position`` is the offending index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Permutation:
    """
    A bijection of {1..n}, built from its one-line notation.

    >>> p = Permutation([2, 1, 4, 5, 3])
    >>> p(1), p(3)
    (2, 4)
    >>> str(p)
    '(1 2)(3 4 5)'
    """

    __slots__ = ("word",)

    #: zero-based one-line word; word[i] is the image of point i+1, minus one.
    word: tuple[int, ...]

    def __init__(self, images: Sequence[int]):
        w = tuple(x - 1 for x in images)
        n = len(w)
        if n < 1:
            raise ValueError("degree must be at least 1")
        if sorted(w) != list(range(n)):
            raise ValueError(f"images {tuple(images)} are not a bijection of 1..{n}")
        self.word = w

    @classmethod
    def _from_word(cls, word: tuple[int, ...]) -> "Permutation":
        # trusted zero-based word; skips validation (internal fast path)
        p = object.__new__(cls)
        p.word = word
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise ValueError("degree must be at least 1")
        return cls._from_word(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """
        Build a permutation of degree n from disjoint cycles (1-based points).

        >>> Permutation.from_cycles([(1, 2), (3, 4, 5)], 5).images
        (2, 1, 4, 5, 3)
        """
        if n < 1:
            raise ValueError("degree must be at least 1")
        word = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for p in cycle:
                if not 1 <= p <= n:
                    raise ValueError(f"point {p} out of range 1..{n}")
                if p in seen:
                    raise ValueError(f"point {p} appears in two cycles")
                seen.add(p)
            for a, b in zip(cycle, cycle[1:]):
                word[a - 1] = b - 1
            if cycle:
                word[cycle[-1] - 1] = cycle[0] - 1
        return cls._from_word(tuple(word))

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def images(self) -> tuple[int, ...]:
        """One-line notation as a 1-based tuple."""
        return tuple(x + 1 for x in self.word)

    def __call__(self, point: int) -> int:
        return self.word[point - 1] + 1

    def __len__(self) -> int:
        return len(self.word)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.word == other.word

    def __hash__(self) -> int:
        return hash(self.word)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return self.cycle_string()

    def _check_degree(self, other: "Permutation") -> None:
        if len(self.word) != len(other.word):
            raise ValueError(
                f"degree mismatch: {len(self.word)} vs {len(other.word)}"
            )

    # -- group operations -------------------------------------------------

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition self*other: apply ``other`` first, then ``self``."""
        if not isinstance(other, Permutation):
            return NotImplemented
        self._check_degree(other)
        w = self.word
        return Permutation._from_word(tuple(w[x] for x in other.word))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.word)
        for i, x in enumerate(self.word):
            inv[x] = i
        return Permutation._from_word(tuple(inv))

    def conjugate_by(self, alpha: "Permutation") -> "Permutation":
        """Return alpha * self * alpha^-1 (relabels points by alpha)."""
        self._check_degree(alpha)
        a, w = alpha.word, self.word
        out = [0] * len(w)
        for i, x in enumerate(w):
            out[a[i]] = a[x]
        return Permutation._from_word(tuple(out))

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.word))

    # -- metric -----------------------------------------------------------

    def hamming(self, other: "Permutation") -> int:
        """Number of points where the two permutations disagree."""
        self._check_degree(other)
        return sum(x != y for x, y in zip(self.word, other.word))

    def commute_distance(self, other: "Permutation") -> int:
        """
        Hamming distance between self*other and other*self; zero exactly
        when the two permutations commute.
        """
        self._check_degree(other)
        a, b = self.word, other.word
        return sum(a[b[i]] != b[a[i]] for i in range(len(a)))

    # -- cycle structure ---------------------------------------------------

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """
        Disjoint cycle decomposition, fixed points included as 1-cycles.

        Canonical form: each cycle starts at its smallest point and cycles
        are sorted by first point.

        >>> Permutation([2, 1, 4, 5, 3]).cycles()
        ((1, 2), (3, 4, 5))
        """
        w = self.word
        seen = [False] * len(w)
        out = []
        for i in range(len(w)):
            if seen[i]:
                continue
            cycle = []
            j = i
            while not seen[j]:
                seen[j] = True
                cycle.append(j + 1)
                j = w[j]
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_type(self) -> "CycleType":
        counts = [0] * len(self.word)
        for cycle in self.cycles():
            counts[len(cycle) - 1] += 1
        return CycleType(tuple(counts))

    def parity(self) -> str:
        """'even' or 'odd'; even iff n minus the number of cycles is even."""
        return "even" if self.is_even() else "odd"

    def is_even(self) -> bool:
        return (len(self.word) - len(self.cycles())) % 2 == 0

    def support(self) -> frozenset[int]:
        """Points moved by the permutation."""
        return frozenset(i + 1 for i, x in enumerate(self.word) if x != i)

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self.word) if x == i)

    # -- formatting --------------------------------------------------------

    def cycle_string(self) -> str:
        """Cycle notation, fixed points omitted; identity prints as '()'."""
        parts = [
            "(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1
        ]
        return "".join(parts) if parts else "()"

    def one_line_string(self) -> str:
        return " ".join(map(str, self.images))


@dataclass(frozen=True)
class CycleType:
    """
    The census (c_1, ..., c_n) of cycle lengths: counts[i-1] cycles of
    length i, fixed points included, with sum i*c_i = n.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) < 1:
            raise ValueError("cycle type must have positive degree")
        if any(c < 0 for c in self.counts):
            raise ValueError("cycle counts must be nonnegative")
        if self.degree != len(self.counts):
            raise ValueError(
                f"inconsistent cycle type {self.counts}: lengths sum to "
                f"{self.degree}, expected {len(self.counts)}"
            )

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "CycleType":
        """
        Build from a multiset of cycle lengths.

        >>> CycleType.from_parts([3, 1, 1]).counts
        (2, 0, 1, 0, 0)
        """
        parts = list(parts)
        n = sum(parts)
        counts = [0] * n
        for p in parts:
            counts[p - 1] += 1
        return cls(tuple(counts))

    @property
    def degree(self) -> int:
        return sum(i * c for i, c in enumerate(self.counts, start=1))

    def count(self, length: int) -> int:
        """Number of cycles of the given length (0 beyond the degree)."""
        if not 1 <= length <= len(self.counts):
            return 0
        return self.counts[length - 1]

    def parts(self) -> tuple[int, ...]:
        """Cycle lengths as a partition of n, in decreasing order."""
        out: list[int] = []
        for length, c in enumerate(self.counts, start=1):
            out.extend([length] * c)
        return tuple(sorted(out, reverse=True))

    def centralizer_order(self) -> int:
        """
        Size of the centralizer in S_n: the product of i**c_i * c_i! over
        all cycle lengths i.  Equals the number of permutations commuting
        with any permutation of this type.

        >>> CycleType.from_parts([2] + [1] * 3).centralizer_order()
        12
        """
        out = 1
        for i, c in enumerate(self.counts, start=1):
            out *= i**c * math.factorial(c)
        return out

    def has_distinct_odd_parts(self) -> bool:
        """
        True iff all cycle lengths are odd and no length repeats.  Exactly
        the types whose permutations commute with no odd permutation.
        """
        for i, c in enumerate(self.counts, start=1):
            if i % 2 == 0 and c > 0:
                return False
            if i % 2 == 1 and c > 1:
                return False
        return True

    def representative(self) -> Permutation:
        """
        Canonical permutation of this type: cycles laid out on consecutive
        points in decreasing length.

        >>> CycleType.from_parts([3, 2]).representative().cycles()
        ((1, 2, 3), (4, 5))
        """
        cycles = []
        next_point = 1
        for length in self.parts():
            cycles.append(tuple(range(next_point, next_point + length)))
            next_point += length
        return Permutation.from_cycles(cycles, self.degree)

    @staticmethod
    def all_types(n: int) -> Iterator["CycleType"]:
        """All cycle types of S_n, one per integer partition of n."""
        for parts in _partitions(n, n):
            yield CycleType.from_parts(parts)


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    # partitions of n with parts <= largest, decreasing order
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


# -- parsing ----------------------------------------------------------------


def parse_permutation(text: str, n: int) -> Permutation:
    """
    Parse cycle notation or one-line notation into a permutation of degree n.

    Text starting with '(' (or empty) is read as cycles; anything else as
    the comma/space-separated list of all n images.

    >>> parse_permutation("(1 2)(3 4 5)", 5).images
    (2, 1, 4, 5, 3)
    >>> parse_permutation("()", 3) == Permutation.identity(3)
    True
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    stripped = text.strip()
    if stripped == "" or stripped.startswith("("):
        return _parse_cycles(text, n)
    return _parse_one_line(text, n)


def _parse_cycles(text: str, n: int) -> Permutation:
    cycles: list[list[int]] = []
    seen: set[int] = set()
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError(f"expected '(' but found {ch!r}", i)
        i += 1
        cycle: list[int] = []
        while True:
            while i < length and (text[i].isspace() or text[i] == ","):
                i += 1
            if i >= length:
                raise ParseError("unclosed cycle", i)
            if text[i] == ")":
                i += 1
                break
            start = i
            while i < length and text[i].isdigit():
                i += 1
            if i == start:
                raise ParseError(f"expected a point but found {text[i]!r}", i)
            point = int(text[start:i])
            if not 1 <= point <= n:
                raise ParseError(f"point {point} out of range 1..{n}", start)
            if point in seen:
                raise ParseError(f"point {point} repeated", start)
            seen.add(point)
            cycle.append(point)
        if cycle:
            cycles.append(cycle)
    return Permutation.from_cycles(cycles, n)


def _parse_one_line(text: str, n: int) -> Permutation:
    images: list[int] = []
    positions: list[int] = []
    i = 0
    length = len(text)
    while i < length:
        if text[i].isspace() or text[i] == ",":
            i += 1
            continue
        start = i
        while i < length and text[i].isdigit():
            i += 1
        if i == start:
            raise ParseError(f"expected an image but found {text[i]!r}", i)
        images.append(int(text[start:i]))
        positions.append(start)
    if len(images) != n:
        raise ParseError(f"one-line notation needs {n} images, got {len(images)}", 0)
    for img, pos in zip(images, positions):
        if not 1 <= img <= n:
            raise ParseError(f"image {img} out of range 1..{n}", pos)
    if len(set(images)) != n:
        dup = next(x for x in images if images.count(x) > 1)
        raise ParseError(f"image {dup} repeated", positions[images.index(dup)])
    return Permutation(images)


def format_permutation(p: Permutation, style: str = "cycles") -> str:
    """Render in 'cycles' or 'one_line' style; inverse of parse_permutation."""
    if style == "cycles":
        return p.cycle_string()
    if style == "one_line":
        return p.one_line_string()
    raise ValueError(f"unknown style {style!r}")


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic one-line order (no degree guard)."""
    for word in itertools.permutations(range(n)):
        yield Permutation._from_word(word)
