import json
import random
from fractions import Fraction

import pytest

from charpoly.polyring import (
    MultiPoly,
    PolyContext,
    PowerSeries,
    compositional_inverse,
    expand_at_infinity,
    pq_context,
)


CTX = pq_context(2)
A, P = (MultiPoly.variable(CTX, n) for n in ("p1", "p2"))
B, Q = (MultiPoly.variable(CTX, n) for n in ("q1", "q2"))


def random_poly(rng, ctx, max_deg=3, nterms=6):
    poly = MultiPoly.zero(ctx)
    for _ in range(nterms):
        exps = [rng.randrange(0, max_deg + 1) for _ in ctx.names]
        poly = poly + MultiPoly.monomial(ctx, exps, rng.randrange(-5, 6))
    return poly


def test_basic_arithmetic():
    assert (A + B) - A == B
    assert A - A == MultiPoly.zero(CTX)
    assert (A + B) * (A - B) == A * A - B * B
    assert -(A - B) == B - A
    assert 2 * A == A + A
    assert (A * 6) / 3 == 2 * A
    assert A**0 == MultiPoly.constant(CTX, 1)
    assert A**3 == A * A * A


def test_context_mismatch_raises():
    other = pq_context(1)
    with pytest.raises(ValueError):
        A + MultiPoly.variable(other, "p1")


def test_ring_axioms_sampled():
    rng = random.Random(11)
    for _ in range(60):
        f = random_poly(rng, CTX)
        g = random_poly(rng, CTX)
        h = random_poly(rng, CTX)
        assert (f + g) * h == f * h + g * h
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)


def test_substitute_neg_q():
    # terms linear in a q variable change sign
    assert (A * B + P * Q).substitute_neg_q() == -(A * B) - P * Q
    assert (A * B * B).substitute_neg_q() == A * B * B
    mixed = A * A - 3 * B * Q
    assert mixed.substitute_neg_q() == A * A - 3 * B * Q


def test_total_degree_and_top_part():
    f = A * A * B + P * Q
    assert f.total_degree() == 3
    assert f.top_degree_part(3) == A * A * B
    homog = A * B - P * Q
    assert homog.top_degree_part(2) == homog
    assert MultiPoly.zero(CTX).total_degree() == -1


def test_eval():
    f = A * A * B + 2 * P
    vals = {"p1": 2, "p2": Fraction(1, 2), "q1": -1, "q2": 7}
    assert f.eval(vals) == -4 + 1
    # printed second polynomial evaluates to 6 at (1, 1, -1, -1)
    f2 = (
        -(A**2) * B + A * B**2 - 2 * A * P * Q - P**2 * Q + P * Q**2
    )
    assert f2.eval({"p1": 1, "p2": 1, "q1": -1, "q2": -1}) == 6


def test_serialization_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        f = random_poly(rng, CTX) / rng.choice([1, 2, 3, 7])
        data = f.to_json_dict()
        blob = json.dumps(data, sort_keys=True)
        back = MultiPoly.from_json_dict(json.loads(blob))
        assert back == f
        assert json.dumps(back.to_json_dict(), sort_keys=True) == blob


def test_sorted_terms_graded_lex():
    f = A + B * B + P * Q * Q + MultiPoly.constant(CTX, 4)
    degrees = [sum(e) for e, _ in f.sorted_terms()]
    assert degrees == sorted(degrees)


def test_str_deterministic():
    f = -(A**2) * B + A * B**2 - 2 * A * P * Q
    assert str(f) == str(f)
    assert str(MultiPoly.zero(CTX)) == "0"
    assert str(MultiPoly.constant(CTX, -3)) == "-3"


def test_compose_vars_linear_substitution():
    target = PolyContext(("p1", "p2", "q1", "q2"))
    r_ctx = PolyContext(("p1", "p2", "r1", "r2"))
    f = MultiPoly.variable(r_ctx, "r1") ** 2 + MultiPoly.variable(r_ctx, "p1")
    mapping = {
        "r1": MultiPoly.variable(target, "q1") - MultiPoly.variable(target, "q2"),
        "r2": MultiPoly.variable(target, "q2"),
    }
    g = f.compose_vars(target, mapping)
    q1 = MultiPoly.variable(target, "q1")
    q2 = MultiPoly.variable(target, "q2")
    p1 = MultiPoly.variable(target, "p1")
    assert g == (q1 - q2) ** 2 + p1


# -- series ------------------------------------------------------------------


def test_series_reciprocal_geometric():
    ctx = pq_context(1)
    s = PowerSeries.from_list(ctx, [1, -1], 3)  # 1 - x
    assert s.reciprocal() == PowerSeries.from_list(ctx, [1, 1, 1, 1], 3)


def test_series_reciprocal_requires_invertible_constant():
    ctx = pq_context(1)
    with pytest.raises(ValueError):
        PowerSeries.from_list(ctx, [0, 1], 3).reciprocal()
    p1 = MultiPoly.variable(ctx, "p1")
    with pytest.raises(ValueError):
        PowerSeries.from_list(ctx, [p1, 1], 3).reciprocal()


def test_series_reciprocal_random_round_trip():
    rng = random.Random(5)
    ctx = pq_context(2)
    one = PowerSeries.one(ctx, 6)
    for _ in range(100):
        coeffs = [1] + [random_poly(rng, ctx, max_deg=2, nterms=3) for _ in range(6)]
        s = PowerSeries.from_list(ctx, coeffs, 6)
        assert s * s.reciprocal() == one


def test_compose_scale():
    ctx = pq_context(1)
    s = PowerSeries.from_list(ctx, [1, 2, 3, 4], 3)
    assert s.compose_scale(-1) == PowerSeries.from_list(ctx, [1, -2, 3, -4], 3)


def test_series_product_truncation_order():
    ctx = pq_context(1)
    p1 = MultiPoly.variable(ctx, "p1")
    a = PowerSeries.from_list(ctx, [1, p1], 5)
    b = PowerSeries.from_list(ctx, [1, -p1], 3)
    prod = a * b
    assert prod.order == 3
    assert prod == PowerSeries.from_list(ctx, [1, 0, -(p1 * p1)], 3)


def test_compositional_inverse_identity_and_moebius():
    ctx = pq_context(1)
    x = PowerSeries.x(ctx, 8)
    assert compositional_inverse(x) == x
    # inverse of x/(1-x) is x/(1+x)
    s = PowerSeries.from_list(ctx, [0] + [1] * 8, 8)  # x + x^2 + ...
    inv = compositional_inverse(s)
    expected = PowerSeries.from_list(
        ctx, [0] + [(-1) ** i for i in range(8)], 8
    )  # x - x^2 + x^3 - ...
    assert inv == expected


def test_compositional_inverse_round_trips():
    rng = random.Random(9)
    ctx = pq_context(2)
    x = PowerSeries.x(ctx, 7)
    for _ in range(10):
        coeffs = [0, 1] + [random_poly(rng, ctx, max_deg=1, nterms=2) for _ in range(6)]
        s = PowerSeries.from_list(ctx, coeffs, 7)
        w = compositional_inverse(s)
        assert s.compose(w) == x
        assert w.compose(s) == x


def test_compositional_inverse_rejects_bad_input():
    ctx = pq_context(1)
    with pytest.raises(ValueError):
        compositional_inverse(PowerSeries.from_list(ctx, [1, 1], 4))
    with pytest.raises(ValueError):
        compositional_inverse(PowerSeries.from_list(ctx, [0, 2], 4))


def test_expand_at_infinity_trivial():
    ctx = pq_context(1)
    a = MultiPoly.variable(ctx, "p1")
    same = expand_at_infinity([a], [a], 4, ctx)
    assert same == PowerSeries.one(ctx, 4)
    assert expand_at_infinity([], [], 4, ctx) == PowerSeries.one(ctx, 4)


def test_expand_at_infinity_reads_residue():
    # x (x - q - p) / (x - q): the 1/x coefficient is -pq, i.e. the t^2
    # coefficient of (1 - 0 t)(1 - (q+p) t) / (1 - q t)
    ctx = pq_context(1)
    p = MultiPoly.variable(ctx, "p1")
    q = MultiPoly.variable(ctx, "q1")
    series = expand_at_infinity([MultiPoly.zero(ctx), q + p], [q], 2, ctx)
    assert series.coefficient(2) == -(p * q)


def test_expand_at_infinity_reciprocal_pair():
    ctx = pq_context(2)
    rng = random.Random(2)
    roots_a = [random_poly(rng, ctx, max_deg=1, nterms=2) for _ in range(3)]
    roots_b = [random_poly(rng, ctx, max_deg=1, nterms=2) for _ in range(3)]
    ab = expand_at_infinity(roots_a, roots_b, 6, ctx)
    ba = expand_at_infinity(roots_b, roots_a, 6, ctx)
    assert ab * ba == PowerSeries.one(ctx, 6)


def test_exponent_packing_bounds():
    ctx = pq_context(1)
    with pytest.raises(ValueError):
        MultiPoly.monomial(ctx, {"p1": 40000})
