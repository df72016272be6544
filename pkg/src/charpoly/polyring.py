"""Exact sparse multivariate polynomials and truncated power series.

``MultiPoly`` is a sparse polynomial over the rationals in a fixed ordered
tuple of named variables.  Exponent vectors are packed into a single integer
key, 16 bits per variable, so multiplying monomials adds keys; coefficients
are Python ints, promoted to ``fractions.Fraction`` only when a division
forces it.  Everything is exact; there is no floating point anywhere.

``PowerSeries`` is a truncated series in one formal variable ``x`` whose
coefficients are ``MultiPoly`` values.  Arithmetic results carry truncation
order equal to the minimum of the operand orders.

The inner loops (multiplication, convolution) are delegated to
``charpoly.kernel`` which selects a compiled Cython implementation when
available and an identical pure-Python one otherwise.

Canonical term order, used for printing and serialization, is graded
lexicographic: ascending total degree, then ascending exponent tuple.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import kernel

_BITS = 16
_MASK = (1 << _BITS) - 1
_MAX_EXP = _MASK >> 1  # headroom so key addition cannot carry between fields


def _normnum(c):
    """Demote integral Fractions to int; leave everything else alone."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class PolyContext:
    """An ordered tuple of variable names plus the exponent packing."""

    __slots__ = ("names", "nvars", "_index")

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names!r}")
        self.nvars = len(self.names)
        self._index = {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in context {self.names!r}")

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        key = 0
        for i, e in enumerate(exps):
            if not 0 <= e <= _MAX_EXP:
                raise ValueError(f"exponent out of range: {e}")
            key |= e << (_BITS * i)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.nvars):
            out.append(key & _MASK)
            key >>= _BITS
        return tuple(out)

    def key_degree(self, key: int) -> int:
        total = 0
        for _ in range(self.nvars):
            total += key & _MASK
            key >>= _BITS
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyContext) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"PolyContext({self.names!r})"


def pq_context(m: int) -> PolyContext:
    """The standard context p1..pm, q1..qm."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return PolyContext(
        tuple(f"p{i}" for i in range(1, m + 1)) + tuple(f"q{i}" for i in range(1, m + 1))
    )


def _check_ctx(a: "MultiPoly", b: "MultiPoly") -> None:
    if a.ctx != b.ctx:
        raise ValueError(f"context mismatch: {a.ctx!r} vs {b.ctx!r}")


class MultiPoly:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: PolyContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: PolyContext) -> "MultiPoly":
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx: PolyContext, c) -> "MultiPoly":
        c = _normnum(c)
        return cls(ctx, {0: c} if c else {})

    @classmethod
    def variable(cls, ctx: PolyContext, name: str) -> "MultiPoly":
        return cls(ctx, {1 << (_BITS * ctx.index(name)): 1})

    @classmethod
    def monomial(cls, ctx: PolyContext, exps, coeff=1) -> "MultiPoly":
        """Monomial from an exponent mapping {name: exp} or a full vector."""
        coeff = _normnum(coeff)
        if not coeff:
            return cls.zero(ctx)
        if isinstance(exps, Mapping):
            vec = [0] * ctx.nvars
            for name, e in exps.items():
                vec[ctx.index(name)] = e
            return cls(ctx, {ctx.pack(vec): coeff})
        return cls(ctx, {ctx.pack(tuple(exps)): coeff})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, MultiPoly):
            _check_ctx(self, other)
            return MultiPoly(self.ctx, kernel.poly_add(self.terms, other.terms))
        if isinstance(other, (int, Fraction)):
            return self + MultiPoly.constant(self.ctx, other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            _check_ctx(self, other)
            return MultiPoly(self.ctx, kernel.poly_sub(self.terms, other.terms))
        if isinstance(other, (int, Fraction)):
            return self - MultiPoly.constant(self.ctx, other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPoly(self.ctx, kernel.poly_neg(self.terms))

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            _check_ctx(self, other)
            return MultiPoly(self.ctx, kernel.poly_mul(self.terms, other.terms))
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.ctx, kernel.poly_scale(self.terms, _normnum(other)))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of polynomial by zero")
            inv = _normnum(Fraction(1, 1) / other)
            terms = {k: _normnum(v * inv) for k, v in self.terms.items()}
            return MultiPoly(self.ctx, terms)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(self.ctx, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries -----------------------------------------------------------

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        kd = self.ctx.key_degree
        return max(kd(k) for k in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        shift = _BITS * self.ctx.index(name)
        return max((k >> shift) & _MASK for k in self.terms)

    def top_degree_part(self, d: int) -> "MultiPoly":
        """The homogeneous component of total degree exactly d."""
        kd = self.ctx.key_degree
        return MultiPoly(self.ctx, {k: v for k, v in self.terms.items() if kd(k) == d})

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        kd = self.ctx.key_degree
        out: dict[int, dict] = {}
        for k, v in self.terms.items():
            out.setdefault(kd(k), {})[k] = v
        return {d: MultiPoly(self.ctx, t) for d, t in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        degs = {self.ctx.key_degree(k) for k in self.terms}
        return len(degs) <= 1

    def coefficient_of(self, exps) -> int | Fraction:
        if isinstance(exps, Mapping):
            vec = [0] * self.ctx.nvars
            for name, e in exps.items():
                vec[self.ctx.index(name)] = e
            exps = vec
        return self.terms.get(self.ctx.pack(tuple(exps)), 0)

    def eval(self, values: Mapping[str, int | Fraction]) -> int | Fraction:
        """Exact evaluation; every context variable must be given a value."""
        point = [values[name] for name in self.ctx.names]
        total: int | Fraction = 0
        for key, c in self.terms.items():
            term = c
            k = key
            for v in point:
                e = k & _MASK
                if e:
                    term = term * v**e
                k >>= _BITS
            total = total + term
        return _normnum(total)

    # -- substitutions -----------------------------------------------------

    def negate_vars(self, names: Iterable[str]) -> "MultiPoly":
        """Substitute v -> -v for each named variable."""
        shifts = [_BITS * self.ctx.index(n) for n in names]
        out = {}
        for k, v in self.terms.items():
            parity = 0
            for s in shifts:
                parity ^= (k >> s) & 1
            out[k] = -v if parity else v
        return MultiPoly(self.ctx, out)

    def substitute_neg_q(self) -> "MultiPoly":
        """Substitute q_i -> -q_i for every variable whose name starts with 'q'."""
        return self.negate_vars(n for n in self.ctx.names if n.startswith("q"))

    def compose_vars(
        self, target_ctx: PolyContext, mapping: Mapping[str, "MultiPoly"]
    ) -> "MultiPoly":
        """Substitute polynomials for variables, landing in ``target_ctx``.

        Variables absent from ``mapping`` must exist verbatim in the target
        context.
        """
        images: list[MultiPoly] = []
        for name in self.ctx.names:
            if name in mapping:
                img = mapping[name]
                if img.ctx != target_ctx:
                    raise ValueError("mapping image in wrong context")
                images.append(img)
            else:
                images.append(MultiPoly.variable(target_ctx, name))
        pow_cache: list[dict[int, MultiPoly]] = [
            {0: MultiPoly.constant(target_ctx, 1), 1: img} for img in images
        ]

        def power(i: int, e: int) -> MultiPoly:
            cache = pow_cache[i]
            if e not in cache:
                half = power(i, e // 2)
                sq = half * half
                cache[e] = sq * images[i] if e & 1 else sq
            return cache[e]

        total = MultiPoly.zero(target_ctx)
        for key, c in self.terms.items():
            term = MultiPoly.constant(target_ctx, c)
            k = key
            for i in range(self.ctx.nvars):
                e = k & _MASK
                if e:
                    term = term * power(i, e)
                k >>= _BITS
            total = total + term
        return total

    # -- canonical form ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int | Fraction]]:
        """Terms in graded-lex order (total degree, then exponent tuple)."""
        unpack = self.ctx.unpack
        items = [(unpack(k), v) for k, v in self.terms.items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]))
        return items

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ctx.names
        chunks = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps)
                if e
            )
            if isinstance(c, Fraction):
                cstr = f"{c.numerator}/{c.denominator}"
                bare = cstr.lstrip("-")
            else:
                cstr = str(c)
                bare = cstr.lstrip("-")
            neg = cstr.startswith("-")
            if not mono:
                body = bare
            elif bare == "1":
                body = mono
            else:
                body = f"{bare}*{mono}"
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"MultiPoly({self.ctx.names!r}, {self})"

    def to_json_dict(self) -> dict:
        """Canonical serialization; round-trips bit-exactly."""
        terms = []
        for exps, c in self.sorted_terms():
            frac = c if isinstance(c, Fraction) else Fraction(c)
            terms.append(
                {
                    "exps": list(exps),
                    "num": str(frac.numerator),
                    "den": str(frac.denominator),
                }
            )
        return {"vars": list(self.ctx.names), "terms": terms}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPoly":
        ctx = PolyContext(tuple(data["vars"]))
        terms: dict = {}
        for t in data["terms"]:
            c = _normnum(Fraction(int(t["num"]), int(t["den"])))
            if c:
                terms[ctx.pack(tuple(t["exps"]))] = c
        return cls(ctx, terms)


class PowerSeries:
    """Truncated series in x with MultiPoly coefficients, exact arithmetic."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: PolyContext, coeffs: Sequence[MultiPoly]):
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_list(cls, ctx: PolyContext, items: Sequence, order: int) -> "PowerSeries":
        """Build from polynomials/numbers, padded or truncated to ``order``."""
        polys = []
        for it in items[: order + 1]:
            if isinstance(it, MultiPoly):
                if it.ctx != ctx:
                    raise ValueError("coefficient in wrong context")
                polys.append(it)
            else:
                polys.append(MultiPoly.constant(ctx, it))
        while len(polys) < order + 1:
            polys.append(MultiPoly.zero(ctx))
        return cls(ctx, polys)

    @classmethod
    def zero(cls, ctx: PolyContext, order: int) -> "PowerSeries":
        return cls(ctx, [MultiPoly.zero(ctx)] * (order + 1))

    @classmethod
    def constant(cls, ctx: PolyContext, c, order: int) -> "PowerSeries":
        return cls.from_list(ctx, [MultiPoly.constant(ctx, c)], order)

    @classmethod
    def one(cls, ctx: PolyContext, order: int) -> "PowerSeries":
        return cls.constant(ctx, 1, order)

    @classmethod
    def x(cls, ctx: PolyContext, order: int) -> "PowerSeries":
        return cls.from_list(ctx, [0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> MultiPoly:
        return self.coeffs[i]

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return self
        return PowerSeries(self.ctx, self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PowerSeries)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def _coerce(self, other) -> "PowerSeries | None":
        if isinstance(other, PowerSeries):
            if other.ctx != self.ctx:
                raise ValueError("context mismatch")
            return other
        if isinstance(other, (int, Fraction, MultiPoly)):
            return PowerSeries.from_list(self.ctx, [other], self.order)
        return None

    def __add__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        n = min(self.order, s.order)
        return PowerSeries(
            self.ctx, [a + b for a, b in zip(self.coeffs[: n + 1], s.coeffs[: n + 1])]
        )

    __radd__ = __add__

    def __sub__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        n = min(self.order, s.order)
        return PowerSeries(
            self.ctx, [a - b for a, b in zip(self.coeffs[: n + 1], s.coeffs[: n + 1])]
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return PowerSeries(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return PowerSeries(self.ctx, [c * other for c in self.coeffs])
        if isinstance(other, PowerSeries):
            if other.ctx != self.ctx:
                raise ValueError("context mismatch")
            n = min(self.order, other.order)
            a = self.coeffs
            b = other.coeffs
            out = []
            for i in range(n + 1):
                acc: dict = {}
                for j in range(i + 1):
                    ta = a[j].terms
                    tb = b[i - j].terms
                    if ta and tb:
                        kernel.poly_addmul_into(acc, ta, tb)
                out.append(MultiPoly(self.ctx, acc))
            return PowerSeries(self.ctx, out)
        return NotImplemented

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0_poly = self.coeffs[0]
        if set(c0_poly.terms) - {0}:
            raise ValueError("reciprocal needs a constant (number) leading coefficient")
        c0 = c0_poly.terms.get(0, 0)
        if not c0:
            raise ValueError("constant term is zero, series not invertible")
        inv0 = _normnum(Fraction(1, 1) / c0)
        out = [MultiPoly.constant(self.ctx, inv0)]
        a = self.coeffs
        for n in range(1, self.order + 1):
            acc: dict = {}
            for i in range(1, n + 1):
                ta = a[i].terms if i < len(a) else {}
                tb = out[n - i].terms
                if ta and tb:
                    kernel.poly_addmul_into(acc, ta, tb)
            out.append(MultiPoly(self.ctx, kernel.poly_scale(acc, -inv0)))
        return PowerSeries(self.ctx, out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            inv = _normnum(Fraction(1, 1) / other)
            return self * inv
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return NotImplemented

    def compose_scale(self, c) -> "PowerSeries":
        """Substitute x -> c*x for a scalar c (c = -1 gives the sign flip)."""
        out = []
        factor: int | Fraction = 1
        for i, poly in enumerate(self.coeffs):
            out.append(poly * factor if i else poly)
            factor = _normnum(factor * c)
        return PowerSeries(self.ctx, out)

    def shift_down(self) -> "PowerSeries":
        """Divide by x; the constant coefficient must vanish."""
        if not self.coeffs[0].is_zero():
            raise ValueError("cannot divide by x: nonzero constant term")
        if self.order == 0:
            raise ValueError("series too short")
        return PowerSeries(self.ctx, self.coeffs[1:])

    def map_coeffs(self, fn) -> "PowerSeries":
        return PowerSeries(self.ctx, [fn(c) for c in self.coeffs])

    def compose(self, g: "PowerSeries") -> "PowerSeries":
        """self(g(x)) for g with zero constant term.

        Evaluated as sum_i f_i g^i with iterated powers of g; the powers keep
        their low-order coefficients zero (g^i = O(x^i)), which keeps the
        convolutions small (Horner's accumulator would densify instead).
        """
        if g.ctx != self.ctx:
            raise ValueError("context mismatch")
        if not g.coeffs[0].is_zero():
            raise ValueError("composition needs g(0) = 0")
        order = min(self.order, g.order)
        g = g.truncate(order)
        acc = PowerSeries.from_list(self.ctx, [self.coeffs[0]], order)
        power = None
        for i in range(1, order + 1):
            power = g if power is None else power * g
            fi = self.coeffs[i]
            if not fi.is_zero():
                acc = acc + power * fi
        return acc

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = str(c)
            if i == 0:
                parts.append(body)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(f"({body})*{xs}")
        if not parts:
            return f"O(x^{self.order + 1})"
        return " + ".join(parts) + f" + O(x^{self.order + 1})"

    def __repr__(self) -> str:
        return f"PowerSeries(order={self.order}, {self})"


def compositional_inverse(s: PowerSeries) -> PowerSeries:
    """The series w with s(w(x)) = x = w(s(x)), via Lagrange inversion.

    Requires s = x + O(x^2) (zero constant term, linear coefficient 1), which
    holds for every use in this package.  [x^n] w = (1/n) [y^(n-1)] (y/s)^n.
    """
    if not s.coeffs[0].is_zero():
        raise ValueError("compositional inverse needs zero constant term")
    if s.order < 1 or s.coeffs[1] != MultiPoly.constant(s.ctx, 1):
        raise ValueError("compositional inverse needs linear coefficient 1")
    n_max = s.order
    r = s.shift_down().reciprocal()  # y/s(y), constant term 1, order n_max-1
    coeffs = [MultiPoly.zero(s.ctx), MultiPoly.constant(s.ctx, 1)]
    power = r
    for n in range(2, n_max + 1):
        power = power * r
        coeffs.append(power.coefficient(n - 1) / n)
    return PowerSeries(s.ctx, coeffs)


def expand_at_infinity(
    numer_roots: Sequence[MultiPoly],
    denom_roots: Sequence[MultiPoly],
    order: int,
    ctx: PolyContext,
) -> PowerSeries:
    """Series in t = 1/x of prod (1 - a_i t) / prod (1 - b_j t), exactly.

    This is the expansion at infinity of prod (x - a_i) / prod (x - b_j)
    after factoring out the known power of x: the coefficient of 1/x of the
    original expression is read off from the appropriate t-coefficient by
    the caller.
    """
    num = PowerSeries.one(ctx, order)
    for a in numer_roots:
        num = num * PowerSeries.from_list(ctx, [MultiPoly.constant(ctx, 1), -a], order)
    den = PowerSeries.one(ctx, order)
    for b in denom_roots:
        den = den * PowerSeries.from_list(ctx, [MultiPoly.constant(ctx, 1), -b], order)
    return num * den.reciprocal()
