"""The coloured symmetric group: cycle-coloured permutations and their product.

A coloured permutation is a pair (alpha, psi) where psi assigns a colour in
{1..m} to every cycle of alpha.  The product with a plain permutation b is
(alpha*b, nu) where each cycle u of alpha*b receives the maximum psi-colour
over the cycles of alpha that share a symbol with u.

Colourings are stored aligned with the canonical cycle order of the underlying
permutation (cycles sorted by their minimum element), which is stable under
re-decomposition.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterator, Sequence

from .perm import Permutation, compose, all_permutations, parse_cycles, from_cycles


class ColouredPermutation:
    """A permutation together with a colour in {1..m} per canonical cycle."""

    __slots__ = ("perm", "colours", "m")

    def __init__(self, perm: Permutation, colours: Sequence[int], m: int):
        cols = tuple(colours)
        cycles = perm.cycles()
        if len(cols) != len(cycles):
            raise ValueError(
                f"need one colour per cycle: {len(cycles)} cycles, {len(cols)} colours"
            )
        if m < 1 or any(not 1 <= c <= m for c in cols):
            raise ValueError(f"colours must lie in 1..{m}: {cols!r}")
        self.perm = perm
        self.colours = cols
        self.m = m

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ColouredPermutation)
            and self.perm == other.perm
            and self.colours == other.colours
            and self.m == other.m
        )

    def __hash__(self) -> int:
        return hash((self.perm, self.colours, self.m))

    def __repr__(self) -> str:
        return f"ColouredPermutation({self.perm!r}, {self.colours!r}, m={self.m})"

    def __str__(self) -> str:
        return format_coloured(self)

    def colour_by_min(self) -> dict[int, int]:
        """Map from each cycle's minimum element to its colour."""
        return {cyc[0]: c for cyc, c in zip(self.perm.cycles(), self.colours)}

    def symbol_colours(self) -> list[int]:
        """symbol -> colour lookup (index 0 unused), built in O(k)."""
        table = [0] * (self.perm.k + 1)
        for cyc, c in zip(self.perm.cycles(), self.colours):
            for x in cyc:
                table[x] = c
        return table


def induced_colouring(ap: ColouredPermutation, c: Permutation) -> tuple[int, ...]:
    """Colours assigned to the canonical cycles of ``c`` by the max rule.

    Cycle u of c gets max{ psi(w) : w a cycle of ap.perm sharing a symbol
    with u }.  This is the colour-propagation rule of the coloured product,
    applied to an arbitrary permutation on the same symbols.
    """
    if ap.perm.k != c.k:
        raise ValueError(f"size mismatch: {ap.perm.k} vs {c.k}")
    table = ap.symbol_colours()
    return tuple(max(table[x] for x in cyc) for cyc in c.cycles())


def coloured_product(ap: ColouredPermutation, b: Permutation) -> ColouredPermutation:
    """The product (alpha, psi) o b = (alpha*b, nu) with max-colour propagation."""
    gamma = compose(ap.perm, b)
    return ColouredPermutation(gamma, induced_colouring(ap, gamma), ap.m)


def colour_counts(ap: ColouredPermutation) -> tuple[int, ...]:
    """Length-m vector; entry i-1 counts the cycles coloured i."""
    counts = [0] * ap.m
    for c in ap.colours:
        counts[c - 1] += 1
    return tuple(counts)


def weight_monomial(ap: ColouredPermutation, family: str, ctx) -> "MultiPoly":
    """Monomial prod_i family_i^(#cycles coloured i) in the given context.

    ``family`` is "p" or "q"; ``ctx`` must contain variables p1..pm / q1..qm.
    """
    from .polyring import MultiPoly

    if family not in ("p", "q"):
        raise ValueError(f"family must be 'p' or 'q', got {family!r}")
    exps = {f"{family}{i + 1}": e for i, e in enumerate(colour_counts(ap)) if e}
    return MultiPoly.monomial(ctx, exps, 1)


def coloured_permutations(k: int, m: int) -> Iterator[ColouredPermutation]:
    """Every (alpha, psi) exactly once; sum over alpha of m^kappa(alpha) items."""
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    for alpha in all_permutations(k):
        ncyc = alpha.cycle_count()
        for cols in itertools.product(range(1, m + 1), repeat=ncyc):
            yield ColouredPermutation(alpha, cols, m)


def format_coloured(ap: ColouredPermutation) -> str:
    """Text form ``(1 6 8 9):2 (2 5):1 ...`` (cycle followed by its colour)."""
    return " ".join(
        "(" + " ".join(str(x) for x in cyc) + f"):{c}"
        for cyc, c in zip(ap.perm.cycles(), ap.colours)
    )


_PART_RE = re.compile(r"\(([^()]*)\):(\d+)")


def parse_coloured(text: str, m: int) -> ColouredPermutation:
    """Inverse of :func:`format_coloured`."""
    matches = _PART_RE.findall(text)
    if not matches:
        raise ValueError(f"no coloured cycles found in {text!r}")
    if _PART_RE.sub("", text).strip():
        raise ValueError(f"stray text in {text!r}")
    cycles = []
    by_min: dict[int, int] = {}
    for body, colour in matches:
        cyc = [int(tok) for tok in body.replace(",", " ").split()]
        if not cyc:
            raise ValueError("empty cycle")
        cycles.append(cyc)
        by_min[min(cyc)] = int(colour)
    perm = from_cycles(cycles, k=len([x for cyc in cycles for x in cyc]))
    if sorted(x for cyc in cycles for x in cyc) != list(range(1, perm.k + 1)):
        raise ValueError("cycles must cover 1..k")
    colours = tuple(by_min[cyc[0]] for cyc in perm.cycles())
    return ColouredPermutation(perm, colours, m)
