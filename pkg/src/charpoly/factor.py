"""Coloured top factorizations and their generating polynomials.

A product a*b = g in S_k always satisfies the cycle-count bound
kappa(a) + kappa(b) <= k + kappa(g); products achieving equality are the top
(minimal) factorizations.  This module enumerates the coloured sums

    sum over (alpha, psi)  p^(colour counts of alpha) q^(colour counts of
                           (alpha, psi) o omega_mu)

either over the whole coloured symmetric group (:func:`conjecture_sum`) or
restricted to the top stratum kappa(alpha) + kappa(alpha*omega_mu) =
k + l(mu) (:func:`top_factorization_sum`).

For a top product each orbit of <a, b> carries exactly one cycle of a*b and
the alpha-cycle/product-cycle intersection graph within an orbit is a tree,
so the colour-weight sum factors over orbits and is computed by a
max-threshold tree DP; the direct all-colourings enumeration is kept as the
validation fallback (and as the honest path for the full, non-top sum).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .colours import (
    ColouredPermutation,
    colour_counts,
    coloured_permutations,
    coloured_product,
)
from .perm import Partition, Permutation, all_permutations, class_representative, compose, full_cycle
from .polyring import MultiPoly, PolyContext, PowerSeries, pq_context


class DecompositionError(RuntimeError):
    """A product claimed to be top does not decompose; internal inconsistency."""


def cycle_subadditivity_holds(a: Permutation, b: Permutation) -> bool:
    """kappa(a) + kappa(b) <= k + kappa(ab); true for every pair."""
    if a.k != b.k:
        raise ValueError("size mismatch")
    return a.cycle_count() + b.cycle_count() <= a.k + compose(a, b).cycle_count()


def is_top_pair(a: Permutation, b: Permutation) -> bool:
    """Equality case of the cycle-count bound."""
    if a.k != b.k:
        raise ValueError("size mismatch")
    return a.cycle_count() + b.cycle_count() == a.k + compose(a, b).cycle_count()


# -- colour-weight computation ----------------------------------------------


def _cycle_index_table(cycles: tuple[tuple[int, ...], ...], k: int) -> list[int]:
    table = [-1] * (k + 1)
    for i, cyc in enumerate(cycles):
        for s in cyc:
            table[s] = i
    return table


def _orbit_trees(
    alpha: Permutation, gamma: Permutation, blocks: list[tuple[int, ...]]
) -> list[tuple[list[int], list[int], dict[int, list[int]], dict[int, list[int]]]]:
    """Per-orbit bipartite trees (alpha-cycles vs gamma-cycles), for top pairs.

    ``blocks`` are the orbit symbol sets (the supports of the target's
    cycles).  Returns (whites, blacks, white_adj, black_adj) per orbit with
    cycle indices as vertex ids; raises DecompositionError if any orbit graph
    fails to be a tree.
    """
    k = alpha.k
    acyc = alpha.cycles()
    gcyc = gamma.cycles()
    a_of = _cycle_index_table(acyc, k)
    g_of = _cycle_index_table(gcyc, k)
    out = []
    for block in blocks:
        edges = {(a_of[s], g_of[s]) for s in block}
        whites = sorted({w for w, _ in edges})
        blacks = sorted({b for _, b in edges})
        if len(edges) != len(block) or len(whites) + len(blacks) != len(block) + 1:
            raise DecompositionError(
                f"orbit {block} of a top product is not a tree"
            )
        for w in whites:
            if any(s not in block for s in acyc[w]):
                raise DecompositionError("alpha cycle leaks out of its orbit")
        white_adj: dict[int, list[int]] = {w: [] for w in whites}
        black_adj: dict[int, list[int]] = {b: [] for b in blacks}
        for w, b in sorted(edges):
            white_adj[w].append(b)
            black_adj[b].append(w)
        out.append((whites, blacks, white_adj, black_adj))
    return out


def _orbit_weight(
    tree, m: int, pvars: list[MultiPoly], qvars: list[MultiPoly], one: MultiPoly
) -> MultiPoly:
    """Sum over colourings of the orbit's alpha-cycles of p- and q-weights.

    Whites carry free colours; a black's colour is the max over its white
    neighbours.  DP over the tree with prefix sums in the colour threshold.
    """
    whites, blacks, white_adj, black_adj = tree
    white_memo: dict[tuple[int, int | None], list[MultiPoly]] = {}
    level_memo: dict[tuple[int, int], list[MultiPoly]] = {}

    def white_table(w: int, parent_b: int | None) -> list[MultiPoly]:
        # entry c-1: total weight of w's subtree with w coloured c
        got = white_memo.get((w, parent_b))
        if got is not None:
            return got
        children = [b for b in white_adj[w] if b != parent_b]
        out = []
        for c in range(1, m + 1):
            weight = pvars[c - 1]
            for b in children:
                weight = weight * black_contrib(b, w, c)
            out.append(weight)
        white_memo[(w, parent_b)] = out
        return out

    def black_levels(b: int, parent_w: int) -> list[MultiPoly]:
        # entry M-1: product over white children of (sum of colours <= M)
        got = level_memo.get((b, parent_w))
        if got is not None:
            return got
        children = [w for w in black_adj[b] if w != parent_w]
        levels = [one] * m
        for w in children:
            tab = white_table(w, b)
            acc = MultiPoly.zero(one.ctx)
            for M in range(m):
                acc = acc + tab[M]
                levels[M] = levels[M] * acc
        level_memo[(b, parent_w)] = levels
        return levels

    def black_contrib(b: int, parent_w: int, c: int) -> MultiPoly:
        # black takes max(parent colour c, colours below); weight of subtree
        if len(black_adj[b]) == 1:
            return qvars[c - 1]
        levels = black_levels(b, parent_w)
        prev = levels[c - 1]
        contrib = prev * qvars[c - 1]
        for M in range(c + 1, m + 1):
            cur = levels[M - 1]
            contrib = contrib + (cur - prev) * qvars[M - 1]
            prev = cur
        return contrib

    root = whites[0]
    table = white_table(root, None)
    total = MultiPoly.zero(one.ctx)
    for entry in table:
        total = total + entry
    return total


def _weight_analytic(
    alpha: Permutation, gamma: Permutation, blocks: list[tuple[int, ...]],
    m: int, ctx: PolyContext,
) -> MultiPoly:
    pvars = [MultiPoly.variable(ctx, f"p{i}") for i in range(1, m + 1)]
    qvars = [MultiPoly.variable(ctx, f"q{i}") for i in range(1, m + 1)]
    one = MultiPoly.constant(ctx, 1)
    weight = one
    for tree in _orbit_trees(alpha, gamma, blocks):
        weight = weight * _orbit_weight(tree, m, pvars, qvars, one)
    return weight


def _weight_direct(
    alpha: Permutation, gamma: Permutation, m: int, ctx: PolyContext
) -> MultiPoly:
    """Sum over all colourings of alpha, by direct enumeration."""
    k = alpha.k
    acyc = alpha.cycles()
    a_of = _cycle_index_table(acyc, k)
    meets = [sorted({a_of[s] for s in cyc}) for cyc in gamma.cycles()]
    acc: dict[int, int] = {}
    ncyc = len(acyc)
    for psi in product(range(m), repeat=ncyc):
        exps = [0] * (2 * m)
        for c in psi:
            exps[c] += 1
        for ms in meets:
            exps[m + max(psi[i] for i in ms)] += 1
        key = ctx.pack(exps)
        acc[key] = acc.get(key, 0) + 1
    return MultiPoly(ctx, acc)


def _target_blocks(mu: Partition) -> list[tuple[int, ...]]:
    blocks = []
    start = 1
    for part in mu.parts:
        blocks.append(tuple(range(start, start + part)))
        start += part
    return blocks


def top_factorization_sum(
    mu: Partition, m: int, method: str = "analytic"
) -> MultiPoly:
    """Coloured weight sum over the top stratum for target class mu.

    Sums p^(colour counts of alpha) q^(colour counts of the coloured product
    with the canonical class representative) over alpha with
    kappa(alpha) + kappa(alpha * omega_mu) = k + l(mu), and all colourings.
    """
    if method not in ("analytic", "direct"):
        raise ValueError(f"unknown method {method!r}")
    k = mu.size
    ctx = pq_context(m)
    target = class_representative(mu)
    blocks = _target_blocks(mu)
    top_count = k + len(mu)
    total = MultiPoly.zero(ctx)
    for alpha in all_permutations(k):
        gamma = compose(alpha, target)
        if alpha.cycle_count() + gamma.cycle_count() != top_count:
            continue
        if method == "analytic":
            total = total + _weight_analytic(alpha, gamma, blocks, m, ctx)
        else:
            total = total + _weight_direct(alpha, gamma, m, ctx)
    return total


def top_factorization_series(m: int, kmax: int, method: str = "analytic") -> PowerSeries:
    """Series with x^(k+1) coefficient = top stratum sum for the k-cycle class."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    ctx = pq_context(m)
    coeffs = [MultiPoly.zero(ctx), MultiPoly.zero(ctx)]
    for k in range(1, kmax + 1):
        coeffs.append(top_factorization_sum(Partition((k,)), m, method=method))
    return PowerSeries(ctx, coeffs)


def conjecture_sum(mu: Partition, m: int) -> MultiPoly:
    """The full coloured sum over S_k^(m), conjecturally (-1)^k F_mu(p; -q).

    Proved for m = 1; for m >= 2 this is exploratory and is compared against
    the character polynomials by the verification harness, not asserted.
    """
    k = mu.size
    ctx = pq_context(m)
    target = class_representative(mu)
    total: dict[int, int] = {}
    for alpha in all_permutations(k):
        gamma = compose(alpha, target)
        acyc = alpha.cycles()
        a_of = _cycle_index_table(acyc, k)
        meets = [sorted({a_of[s] for s in cyc}) for cyc in gamma.cycles()]
        for psi in product(range(m), repeat=len(acyc)):
            exps = [0] * (2 * m)
            for c in psi:
                exps[c] += 1
            for ms in meets:
                exps[m + max(psi[i] for i in ms)] += 1
            key = ctx.pack(exps)
            total[key] = total.get(key, 0) + 1
    return MultiPoly(ctx, {k_: v for k_, v in total.items() if v})


def top_factorization_count(k: int) -> int:
    """Number of alpha in S_k with kappa(alpha) + kappa(alpha omega_k) = k+1."""
    omega = full_cycle(k)
    return sum(
        1
        for alpha in all_permutations(k)
        if alpha.cycle_count() + compose(alpha, omega).cycle_count() == k + 1
    )


# -- records and decomposition ----------------------------------------------


@dataclass(frozen=True)
class FactorizationRecord:
    """One coloured factorization: alpha, the fixed target, their product."""

    alpha: ColouredPermutation
    target: Permutation
    product: ColouredPermutation
    p_weight: tuple[int, ...]
    q_weight: tuple[int, ...]
    top: bool


def coloured_factorizations(mu: Partition, m: int) -> Iterator[FactorizationRecord]:
    """Every (alpha, psi) with its coloured product against omega_mu."""
    k = mu.size
    target = class_representative(mu)
    top_count = k + len(mu)
    for ap in coloured_permutations(k, m):
        prod = coloured_product(ap, target)
        yield FactorizationRecord(
            alpha=ap,
            target=target,
            product=prod,
            p_weight=colour_counts(ap),
            q_weight=colour_counts(prod),
            top=ap.perm.cycle_count() + prod.perm.cycle_count() == top_count,
        )


@dataclass(frozen=True)
class TopComponent:
    """One orbit of a top product, relabelled to {1..k_i} preserving order."""

    symbols: tuple[int, ...]
    alpha: Permutation
    beta: Permutation
    gamma: Permutation


def _restrict(p: Permutation, symbols: tuple[int, ...]) -> Permutation:
    index = {s: i + 1 for i, s in enumerate(symbols)}
    images = [0] * len(symbols)
    for s in symbols:
        t = p(s)
        if t not in index:
            raise DecompositionError(f"permutation leaves component {symbols}")
        images[index[s] - 1] = index[t]
    return Permutation(images)


def decompose_top_product(a: Permutation, b: Permutation) -> list[TopComponent]:
    """Split a top product a*b = g into independent products, one per g-cycle.

    Each component consists of the cycles of a and b meeting the support of
    one cycle of g; the restriction satisfies alpha_i * beta_i = gamma_i with
    kappa(alpha_i) + kappa(beta_i) = k_i + 1.  Requires the top precondition.
    """
    if a.k != b.k:
        raise ValueError("size mismatch")
    k = a.k
    g = compose(a, b)
    if a.cycle_count() + b.cycle_count() != k + g.cycle_count():
        raise ValueError("not a top product")

    parent = list(range(k + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for s in range(1, k + 1):
        union(s, a(s))
        union(s, b(s))

    orbits: dict[int, list[int]] = {}
    for s in range(1, k + 1):
        orbits.setdefault(find(s), []).append(s)

    components = []
    for cyc in g.cycles():
        orbit = tuple(sorted(orbits.get(find(cyc[0]), [])))
        if set(orbit) != set(cyc):
            raise DecompositionError(
                f"orbit {orbit} of a top product spans more than one product "
                f"cycle {cyc}"
            )
        alpha_i = _restrict(a, orbit)
        beta_i = _restrict(b, orbit)
        gamma_i = _restrict(g, orbit)
        if compose(alpha_i, beta_i) != gamma_i:
            raise DecompositionError("component product mismatch")
        if alpha_i.cycle_count() + beta_i.cycle_count() != len(orbit) + 1:
            raise DecompositionError("component is not a top factorization")
        components.append(TopComponent(orbit, alpha_i, beta_i, gamma_i))
    components.sort(key=lambda c: c.symbols[0])
    return components
