"""Irreducible symmetric group characters via the Murnaghan-Nakayama rule.

Characters are computed on the abacus: a partition with l rows is encoded by
its strictly decreasing beta-numbers b_i = lambda_i + l - i, and removing a
border strip of size t is moving one bead from b to b - t (valid when b - t is
free), with sign (-1)^(number of beads strictly between b - t and b).

Two independent routes are kept deliberately:

* :func:`character` strips class parts largest-first with memoization and
  falls back to the beta-number dimension count once only unit parts remain;
* :func:`dimension` is the plain hook-length formula on the Young diagram.

:func:`normalized_character` evaluates (n)_k * chi(mu 1^(n-k)) / chi(1^n)
without ever forming n! or hook products: with one bead move b -> b - t the
dimension ratio collapses to a signed product of beta-difference ratios times
the falling factorial (b)_t, and the leading factors telescope across moves.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .perm import Partition


def _beta(parts: tuple[int, ...], length: int | None = None) -> tuple[int, ...]:
    """Strictly decreasing beta-set of a partition, padded to ``length`` rows."""
    l = len(parts) if length is None else length
    if l < len(parts):
        raise ValueError("length too small")
    padded = parts + (0,) * (l - len(parts))
    return tuple(padded[i] + (l - 1 - i) for i in range(l))


def _partition_from_beta(beta: tuple[int, ...]) -> tuple[int, ...]:
    l = len(beta)
    parts = tuple(b - (l - 1 - i) for i, b in enumerate(beta))
    return tuple(p for p in parts if p > 0)


def _dimension_beta(beta: tuple[int, ...]) -> int:
    """Number of standard Young tableaux, from beta-numbers (exact integer)."""
    l = len(beta)
    n = sum(beta) - l * (l - 1) // 2
    num = 1
    for i in range(l):
        bi = beta[i]
        for j in range(i + 1, l):
            num *= bi - beta[j]
    den = 1
    for b in beta:
        den *= math.factorial(b)
    return math.factorial(n) * num // den


def _strip_moves(beta: tuple[int, ...], t: int):
    """Yield (new_beta, sign) for each removable border strip of size t."""
    present = set(beta)
    for i, b in enumerate(beta):
        nb = b - t
        if nb < 0 or nb in present:
            continue
        jumped = sum(1 for c in beta if nb < c < b)
        nbeta = sorted(beta, reverse=True)
        nbeta.remove(b)
        nbeta.append(nb)
        nbeta.sort(reverse=True)
        yield tuple(nbeta), (-1 if jumped & 1 else 1)


@lru_cache(maxsize=None)
def _character_beta(beta: tuple[int, ...], lam: tuple[int, ...]) -> int:
    if not lam:
        return 1
    if lam[0] == 1:
        # remaining class is all fixed points: count standard tableaux
        return _dimension_beta(beta)
    t = lam[0]
    total = 0
    for nbeta, sign in _strip_moves(beta, t):
        total += sign * _character_beta(nbeta, lam[1:])
    return total


def character(omega: Partition, lam: Partition) -> int:
    """chi_omega(lam), exact integer, via border-strip recursion.

    Class parts are stripped largest-first (lam is weakly decreasing already),
    which maximizes memo hits for classes of the form mu 1^(n-k).
    """
    if omega.size != lam.size:
        raise ValueError(f"|omega| = {omega.size} != |lam| = {lam.size}")
    if omega.size == 0:
        return 1
    return _character_beta(_beta(omega.parts), lam.parts)


def hook_lengths(omega: Partition) -> list[list[int]]:
    """Hook length of every cell of the Young diagram."""
    parts = omega.parts
    conj = omega.conjugate().parts
    return [
        [parts[i] - j + conj[j] - i - 1 for j in range(parts[i])]
        for i in range(len(parts))
    ]


def dimension(omega: Partition) -> int:
    """chi_omega(1^n) by the hook-length formula."""
    n = omega.size
    if n == 0:
        return 1
    prod = 1
    for row in hook_lengths(omega):
        for h in row:
            prod *= h
    return math.factorial(n) // prod


class NormalizedValue(NamedTuple):
    """Exact value of a normalized character, with its (n, k) bookkeeping."""

    value: Fraction
    n: int
    k: int


def falling_factorial(n: int, k: int) -> int:
    """(n)_k = n(n-1)...(n-k+1)."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def normalized_character(omega: Partition, mu: Partition) -> NormalizedValue:
    """(n)_k * chi_omega(mu 1^(n-k)) / chi_omega(1^n) for omega |- n, mu |- k.

    Runs entirely in small-integer/Fraction arithmetic: each border-strip
    removal b -> b - t contributes

        prod_{c in beta, c != b} (b - t - c) / (b - c)   *   (b)_t

    where the ratio product carries the Murnaghan-Nakayama sign, and the
    n!-type prefactors cancel exactly against (n)_k.
    """
    n, k = omega.size, mu.size
    if k > n:
        raise ValueError(f"need |mu| <= |omega|: {k} > {n}")
    if k == 0:
        return NormalizedValue(Fraction(1), n, 0)
    beta0 = _beta(omega.parts)
    parts = mu.parts
    memo: dict[tuple[tuple[int, ...], int], Fraction] = {}

    def rec(beta: tuple[int, ...], idx: int) -> Fraction:
        if idx == len(parts):
            return Fraction(1)
        key = (beta, idx)
        cached = memo.get(key)
        if cached is not None:
            return cached
        t = parts[idx]
        present = set(beta)
        total = Fraction(0)
        for b in beta:
            nb = b - t
            if nb < 0 or nb in present:
                continue
            num = 1
            den = 1
            for c in beta:
                if c != b:
                    num *= nb - c
                    den *= b - c
            if num:
                nbeta = sorted(beta, reverse=True)
                nbeta.remove(b)
                nbeta.append(nb)
                nbeta.sort(reverse=True)
                total += (
                    Fraction(num * falling_factorial(b, t), den)
                    * rec(tuple(nbeta), idx + 1)
                )
        memo[key] = total
        return total

    return NormalizedValue(rec(beta0, 0), n, k)


def character_table(n: int) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
    """Full character table of S_n keyed by (shape parts, class parts)."""
    from .perm import partitions_of

    shapes = list(partitions_of(n))
    return {
        (w.parts, lam.parts): character(w, lam) for w in shapes for lam in shapes
    }


def class_size(lam: Partition) -> int:
    """Number of permutations of cycle type lam."""
    n = lam.size
    counts: dict[int, int] = {}
    for p in lam.parts:
        counts[p] = counts.get(p, 0) + 1
    den = 1
    for part, mult in counts.items():
        den *= part**mult * math.factorial(mult)
    return math.factorial(n) // den
