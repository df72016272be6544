"""Normalized-character polynomials of multi-rectangular shapes.

A shape is a partition with p_i parts equal to q_i (q_1 >= ... >= q_m).  For a
class with one part of size k plus fixed points, the normalized character of
such a shape is a polynomial in p_1..p_m, q_1..q_m of total degree k+1; for a
general class mu it is a polynomial of total degree at most k + l(mu).  This
module computes those polynomials by two independent routes:

* :func:`cycle_polynomial` extracts the coefficient of 1/x, in the expansion
  at infinity, of a ratio of falling factorials (the residue formula);
* :func:`class_polynomial` interpolates exact normalized-character values on
  a rectangular integer grid (tensor-product Newton divided differences in
  coordinates where the weakly-decreasing constraint on q becomes r_j >= 0),
  then validates on held-out shapes.

The leading homogeneous parts assemble into a generating series built from a
compositional inverse (:func:`top_series`), which satisfies an algebraic
functional equation checked by :func:`functional_equation_residual`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterator, Sequence

from .charlib import normalized_character
from .perm import Partition
from .polyring import (
    MultiPoly,
    PolyContext,
    PowerSeries,
    compositional_inverse,
    expand_at_infinity,
    pq_context,
)


class InterpolationError(RuntimeError):
    """Internal inconsistency while reconstructing a polynomial from values."""


@dataclass(frozen=True)
class Shape:
    """A multi-rectangle partition profile: p_i rows of length q_i."""

    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        if len(self.p) != len(self.q) or not self.p:
            raise ValueError("p and q must be nonempty and of equal length")
        if any(not isinstance(x, int) or x < 1 for x in self.p + self.q):
            raise ValueError("p_i and q_i must be positive integers")
        if any(self.q[i] < self.q[i + 1] for i in range(len(self.q) - 1)):
            raise ValueError("q must be weakly decreasing")

    @property
    def m(self) -> int:
        return len(self.p)

    @property
    def n(self) -> int:
        return sum(pi * qi for pi, qi in zip(self.p, self.q))

    def as_partition(self) -> Partition:
        parts: list[int] = []
        for pi, qi in zip(self.p, self.q):
            parts.extend([qi] * pi)
        return Partition(parts)

    def values(self, ctx: PolyContext) -> dict[str, int]:
        """Variable assignment {p1: .., q1: ..} for evaluating polynomials."""
        out = {f"p{i + 1}": v for i, v in enumerate(self.p)}
        out.update({f"q{i + 1}": v for i, v in enumerate(self.q)})
        if set(out) != set(ctx.names):
            raise ValueError("shape size does not match context")
        return out


def shape_character(shape: Shape, mu: Partition) -> Fraction | int:
    """Exact normalized character of the shape at class mu padded by ones."""
    val = normalized_character(shape.as_partition(), mu).value
    return val if val.denominator != 1 else val.numerator


def _suffix_p(ctx: PolyContext, m: int) -> list[MultiPoly]:
    """suffix[j] = p_j + ... + p_m for j = 1..m+1 (index 0 unused)."""
    suffix = [MultiPoly.zero(ctx) for _ in range(m + 2)]
    for j in range(m, 0, -1):
        suffix[j] = suffix[j + 1] + MultiPoly.variable(ctx, f"p{j}")
    return suffix


@lru_cache(maxsize=None)
def cycle_polynomial(k: int, m: int) -> MultiPoly:
    """Character polynomial of the k-cycle class, by the residue formula.

    -(1/k) times the coefficient of 1/x, at infinity, of

        (x)_k  prod_j (x - (q_j + p_j + ... + p_m))_k
                      / (x - (q_j + p_{j+1} + ... + p_m))_k

    where (y)_k is the falling factorial with k linear factors.  The ratio is
    expanded as a series in t = 1/x, so the 1/x coefficient is the t^(k+1)
    coefficient after the leading x^k is factored out.
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be >= 1")
    ctx = pq_context(m)
    suffix = _suffix_p(ctx, m)
    numer: list[MultiPoly] = [MultiPoly.constant(ctx, i) for i in range(k)]
    denom: list[MultiPoly] = []
    for j in range(1, m + 1):
        qj = MultiPoly.variable(ctx, f"q{j}")
        for i in range(k):
            numer.append(qj + suffix[j] + i)
            denom.append(qj + suffix[j + 1] + i)
    h = expand_at_infinity(numer, denom, k + 1, ctx)
    return h.coefficient(k + 1) / -k


# -- interpolation route ---------------------------------------------------


def _divexact(num, den: int):
    if isinstance(num, int):
        q, r = divmod(num, den)
        if r == 0:
            return q
        return Fraction(num, den)
    return num / den


def _newton_sweep(values: list, dims: list[int], axes_nodes: list[list[int]]) -> None:
    """In-place divided differences along every axis of a dense C-order tensor."""
    n_axes = len(dims)
    strides = [1] * n_axes
    for a in range(n_axes - 2, -1, -1):
        strides[a] = strides[a + 1] * dims[a + 1]
    for a in range(n_axes):
        nodes = axes_nodes[a]
        da = dims[a] - 1
        stride = strides[a]
        block = stride * dims[a]
        nblocks = len(values) // block
        for blk in range(nblocks):
            for off in range(stride):
                base = blk * block + off
                for j in range(1, da + 1):
                    for i in range(da, j - 1, -1):
                        hi = base + i * stride
                        lo = hi - stride
                        diff = values[hi] - values[lo]
                        values[hi] = _divexact(diff, nodes[i] - nodes[i - j])


def _assemble_newton(
    coeffs: dict[tuple[int, ...], Fraction | int],
    axes_nodes: list[list[int]],
    ctx: PolyContext,
) -> MultiPoly:
    """Sum of c_s * prod_a N_{s_a}(v_a) with prefix-product caching."""
    basis: list[list[MultiPoly]] = []
    for a, nodes in enumerate(axes_nodes):
        var = MultiPoly.variable(ctx, ctx.names[a])
        polys = [MultiPoly.constant(ctx, 1)]
        for t in nodes[:-1]:
            polys.append(polys[-1] * (var - t))
        basis.append(polys)
    one = MultiPoly.constant(ctx, 1)
    memo: dict[tuple[int, ...], MultiPoly] = {(): one}

    def prefix(s: tuple[int, ...]) -> MultiPoly:
        got = memo.get(s)
        if got is None:
            got = prefix(s[:-1]) * basis[len(s) - 1][s[-1]]
            memo[s] = got
        return got

    total = MultiPoly.zero(ctx)
    for s in sorted(coeffs):
        total = total + prefix(s) * coeffs[s]
    return total


def _held_out_shapes(mu: Partition, m: int, d: int) -> list[Shape]:
    k = mu.size
    big = d + 2  # off every grid axis
    q_desc = tuple(range(k + m, k, -1))
    q_flat = (k + 1,) * m
    return [
        Shape((big,) + (1,) * (m - 1), q_desc),
        Shape((1,) * (m - 1) + (big,), q_flat),
    ]


@lru_cache(maxsize=None)
def _class_polynomial_cached(mu_parts: tuple[int, ...], m: int) -> MultiPoly:
    mu = Partition(mu_parts)
    k = mu.size
    d = k + len(mu)

    # Grid in coordinates (p_1..p_m, r_1..r_m) with q_j = r_j + ... + r_m.
    # q weakly decreasing and q_m >= 1 become r_j >= 0, r_m >= 1; the last
    # axis is lifted so every grid shape has n >= k.
    r_floor = max(1, -(-k // m))
    p_axes = [list(range(1, d + 2)) for _ in range(m)]
    r_axes = [list(range(0, d + 1)) for _ in range(m - 1)]
    r_axes.append(list(range(r_floor, r_floor + d + 1)))
    axes = p_axes + r_axes
    dims = [len(nodes) for nodes in axes]

    values: list = []
    for point in product(*axes):
        pvec = point[:m]
        rvec = point[m:]
        qvec = []
        acc = 0
        for r in reversed(rvec):
            acc += r
            qvec.append(acc)
        qvec.reverse()
        parts: list[int] = []
        for pi, qi in zip(pvec, qvec):
            parts.extend([qi] * pi)
        val = normalized_character(Partition(parts), mu).value
        values.append(val.numerator if val.denominator == 1 else val)

    _newton_sweep(values, dims, axes)

    n_axes = 2 * m
    coeffs: dict[tuple[int, ...], Fraction | int] = {}
    for flat, v in enumerate(values):
        if not v:
            continue
        s = []
        rem = flat
        for a in range(n_axes - 1, -1, -1):
            s.append(rem % dims[a])
            rem //= dims[a]
        s.reverse()
        if sum(s) > d:
            raise InterpolationError(
                f"unexpected Newton coefficient of order {tuple(s)} for class "
                f"{mu_parts} with degree bound {d}; grid or oracle inconsistent"
            )
        coeffs[tuple(s)] = v

    ctx_pr = PolyContext(
        tuple(f"p{i}" for i in range(1, m + 1)) + tuple(f"r{j}" for j in range(1, m + 1))
    )
    poly_pr = _assemble_newton(coeffs, axes, ctx_pr)

    ctx = pq_context(m)
    mapping: dict[str, MultiPoly] = {}
    for j in range(1, m):
        mapping[f"r{j}"] = MultiPoly.variable(ctx, f"q{j}") - MultiPoly.variable(
            ctx, f"q{j + 1}"
        )
    mapping[f"r{m}"] = MultiPoly.variable(ctx, f"q{m}")
    poly = poly_pr.compose_vars(ctx, mapping)

    if poly.total_degree() > d:
        raise InterpolationError(
            f"degree {poly.total_degree()} exceeds bound {d} for class {mu_parts}"
        )
    for shape in _held_out_shapes(mu, m, d):
        expected = shape_character(shape, mu)
        got = poly.eval(shape.values(ctx))
        if got != expected:
            raise InterpolationError(
                f"held-out shape {shape} disagrees for class {mu_parts}: "
                f"interpolant {got} vs normalized character {expected}"
            )
    return poly


def class_polynomial(mu: Partition, m: int) -> MultiPoly:
    """Character polynomial of class mu, by exact grid interpolation.

    The unique polynomial of total degree <= |mu| + l(mu) agreeing with the
    normalized character on every valid shape with n >= |mu|; independent of
    the residue route and used as its cross-check.
    """
    if mu.size < 1 or m < 1:
        raise ValueError("need a nonempty class and m >= 1")
    return _class_polynomial_cached(mu.parts, m)


# -- top-degree series -----------------------------------------------------


@lru_cache(maxsize=None)
def top_part(k: int, m: int) -> MultiPoly:
    """Highest-degree homogeneous part (degree k+1) of cycle_polynomial."""
    poly = cycle_polynomial(k, m)
    deg = poly.total_degree()
    if deg != k + 1:
        raise InterpolationError(f"cycle polynomial degree {deg} != {k + 1}")
    return poly.top_degree_part(k + 1)


@lru_cache(maxsize=None)
def inverse_argument(m: int, order: int) -> PowerSeries:
    """The series x * prod_j (1 - (q_j + p_{j+1}..)x) / (1 - (q_j + p_j..)x)."""
    ctx = pq_context(m)
    suffix = _suffix_p(ctx, m)
    num = PowerSeries.one(ctx, order - 1)
    den = PowerSeries.one(ctx, order - 1)
    for j in range(1, m + 1):
        qj = MultiPoly.variable(ctx, f"q{j}")
        num = num * PowerSeries.from_list(ctx, [1, -(qj + suffix[j + 1])], order - 1)
        den = den * PowerSeries.from_list(ctx, [1, -(qj + suffix[j])], order - 1)
    ratio = num * den.reciprocal()
    return PowerSeries(ctx, (MultiPoly.zero(ctx),) + ratio.coeffs)


@lru_cache(maxsize=None)
def top_series(m: int, order: int) -> PowerSeries:
    """Generating series 1 + sum_k (top part of degree k+1) x^(k+1).

    Built as x divided by the compositional inverse of
    :func:`inverse_argument`; coefficient of x^(k+1) equals top_part(k, m).
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    arg = inverse_argument(m, order + 1)
    w = compositional_inverse(arg)
    return w.shift_down().reciprocal()  # x / w(x)


def signed_reflection(g: PowerSeries) -> PowerSeries:
    """-g with q_i -> -q_i and x -> -x (the form entering the functional equation)."""
    return -(g.map_coeffs(lambda c: c.substitute_neg_q()).compose_scale(-1))


def functional_equation_residual(g: PowerSeries, m: int) -> PowerSeries:
    """Residual of the algebraic functional equation for a candidate series.

    With H = -g(p; -q)(-x), computes

        H * prod_j (H - (p_j+..+p_m)x + q_j x)/(H - (p_{j+1}+..+p_m)x + q_j x) + 1

    which is the zero series exactly when g is the true top-degree series.
    """
    ctx = g.ctx
    if ctx != pq_context(m):
        raise ValueError("series context does not match m")
    if g.coeffs[0] != MultiPoly.constant(ctx, 1):
        raise ValueError("candidate series must have constant term 1")
    suffix = _suffix_p(ctx, m)
    h = signed_reflection(g)
    prod_series = h
    for j in range(1, m + 1):
        qj = MultiPoly.variable(ctx, f"q{j}")
        num = h + PowerSeries.from_list(ctx, [0, qj - suffix[j]], h.order)
        den = h + PowerSeries.from_list(ctx, [0, qj - suffix[j + 1]], h.order)
        prod_series = prod_series * num * den.reciprocal()
    return prod_series + 1


def all_ones_evaluation(poly: MultiPoly, k: int, m: int) -> int | Fraction:
    """(-1)^k * poly at p_i = 1, q_i = -1 (the rising-factorial evaluation)."""
    values: dict[str, int] = {}
    for i in range(1, m + 1):
        values[f"p{i}"] = 1
        values[f"q{i}"] = -1
    v = poly.eval(values)
    return -v if k & 1 else v


def shape_grid(m: int, bound: int, min_n: int = 1) -> Iterator[Shape]:
    """All shapes with p_i in 1..bound, q weakly decreasing in 1..bound+m, n >= min_n."""
    qs_range = range(bound + m, 0, -1)
    for q in combinations_with_replacement(sorted(qs_range, reverse=True), m):
        for p in product(range(1, bound + 1), repeat=m):
            shape = Shape(tuple(p), tuple(q))
            if shape.n >= min_n:
                yield shape
