"""Permutations of {1..k} and integer partitions.

Conventions used throughout the package:

* permutations are 1-indexed and multiplied right to left, so
  ``compose(a, b)`` maps ``x`` to ``a(b(x))`` (``b`` acts first);
* cycle decompositions are canonical: every cycle starts at its minimum
  element and cycles are listed in increasing order of their minima;
* fixed points count as cycles and are printed explicitly in cycle notation;
* a partition is a weakly decreasing tuple of positive integers.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterator, Sequence


class Permutation:
    """A bijection of {1..k} in one-line notation.

    >>> p = Permutation((2, 1, 3))
    >>> p(1), p(2), p(3)
    (2, 1, 3)
    >>> p.cycles()
    ((1, 2), (3,))
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(images)
        k = len(imgs)
        seen = [False] * (k + 1)
        for v in imgs:
            if not isinstance(v, int) or not 1 <= v <= k or seen[v]:
                raise ValueError(f"not a bijection of {{1..{k}}}: {imgs!r}")
            seen[v] = True
        self.images = imgs

    @property
    def k(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.images!r})"

    def __str__(self) -> str:
        return format_cycles(self)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical cycle decomposition, fixed points included."""
        imgs = self.images
        k = len(imgs)
        seen = [False] * (k + 1)
        out = []
        for start in range(1, k + 1):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = imgs[start - 1]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = imgs[x - 1]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_count(self) -> int:
        """Number of cycles, fixed points included."""
        imgs = self.images
        k = len(imgs)
        seen = [False] * (k + 1)
        count = 0
        for start in range(1, k + 1):
            if seen[start]:
                continue
            count += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = imgs[x - 1]
        return count

    def cycle_type(self) -> "Partition":
        return Partition(sorted((len(c) for c in self.cycles()), reverse=True))

    def inverse(self) -> "Permutation":
        imgs = self.images
        inv = [0] * len(imgs)
        for i, v in enumerate(imgs):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Right-to-left product: ``compose(a, b)(x) == a(b(x))``."""
    if a.k != b.k:
        raise ValueError(f"size mismatch: {a.k} vs {b.k}")
    ai = a.images
    return Permutation(tuple(ai[v - 1] for v in b.images))


def identity(k: int) -> Permutation:
    return Permutation(range(1, k + 1))


def full_cycle(k: int) -> Permutation:
    """The cycle (1 2 ... k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Permutation(tuple(range(2, k + 1)) + (1,))


def class_representative(mu: "Partition") -> Permutation:
    """Canonical member of the conjugacy class of cycle type ``mu``.

    Cycles of lengths mu_1, mu_2, ... are placed on consecutive blocks of
    integers starting at 1, e.g. (2,1) -> (1 2)(3).
    """
    if len(mu) == 0:
        raise ValueError("mu must be nonempty")
    images = []
    start = 1
    for part in mu:
        block = list(range(start, start + part))
        images.extend(block[1:] + block[:1])
        start += part
    return Permutation(images)


def all_permutations(k: int) -> Iterator[Permutation]:
    """All of S_k in lexicographic order of one-line forms."""
    if k < 0:
        raise ValueError("k must be >= 0")
    for imgs in itertools.permutations(range(1, k + 1)):
        yield Permutation(imgs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_cycles(p: Permutation) -> str:
    """Cycle-notation text, fixed points explicit: ``(1 6 8 9)(2 5)(3)``."""
    return "".join("(" + " ".join(str(x) for x in cyc) + ")" for cyc in p.cycles())


def parse_cycles(text: str) -> Permutation:
    """Inverse of :func:`format_cycles`; all of 1..k must appear."""
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("empty cycle expression")
    body = _CYCLE_RE.sub("", cleaned)
    if body.strip():
        raise ValueError(f"stray text outside cycles: {text!r}")
    cycles = []
    for group in _CYCLE_RE.findall(cleaned):
        symbols = [int(tok) for tok in group.replace(",", " ").split()]
        if not symbols:
            raise ValueError("empty cycle")
        cycles.append(symbols)
    symbols = [x for cyc in cycles for x in cyc]
    k = len(symbols)
    if sorted(symbols) != list(range(1, k + 1)):
        raise ValueError(f"cycles must cover 1..k exactly once: {text!r}")
    images = [0] * k
    for cyc in cycles:
        for i, x in enumerate(cyc):
            images[x - 1] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


def from_cycles(cycles: Sequence[Sequence[int]], k: int | None = None) -> Permutation:
    """Permutation from a list of disjoint cycles; symbols not named are fixed."""
    symbols = [x for cyc in cycles for x in cyc]
    if len(set(symbols)) != len(symbols):
        raise ValueError("cycles are not disjoint")
    size = k if k is not None else (max(symbols) if symbols else 0)
    images = list(range(1, size + 1))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            images[x - 1] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


class Partition:
    """A weakly decreasing tuple of positive integers (possibly empty).

    >>> Partition((3, 1)).size
    4
    >>> len(Partition((2, 2, 1)))
    3
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[int] = ()):
        ps = tuple(parts)
        prev = None
        for x in ps:
            if not isinstance(x, int) or x < 1:
                raise ValueError(f"parts must be positive integers: {ps!r}")
            if prev is not None and x > prev:
                raise ValueError(f"parts must be weakly decreasing: {ps!r}")
            prev = x
        self.parts = ps

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __lt__(self, other: "Partition") -> bool:
        return self.parts < other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"

    def conjugate(self) -> "Partition":
        ps = self.parts
        if not ps:
            return Partition(())
        return Partition(tuple(sum(1 for p in ps if p > i) for i in range(ps[0])))


def partitions_of(d: int) -> Iterator[Partition]:
    """All partitions of ``d``, in ascending lexicographic order of part tuples.

    >>> [p.parts for p in partitions_of(4)]
    [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]
    >>> list(partitions_of(0))
    [Partition(())]
    """
    if d < 0:
        raise ValueError("d must be >= 0")

    def gen(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(1, min(remaining, cap) + 1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    for parts in gen(d, d):
        yield Partition(parts)
