from fractions import Fraction

import pytest

from charpoly.charlib import (
    character,
    character_table,
    class_size,
    dimension,
    falling_factorial,
    hook_lengths,
    normalized_character,
)
from charpoly.perm import Partition, partitions_of


def test_trivial_and_sign_characters():
    for lam in partitions_of(5):
        assert character(Partition((5,)), lam) == 1
    assert character(Partition((1, 1, 1)), Partition((3,))) == 1
    # sign of a transposition class
    assert character(Partition((1, 1, 1)), Partition((2, 1))) == -1


def test_small_character_values():
    assert character(Partition((2, 1)), Partition((1, 1, 1))) == 2
    assert character(Partition((2, 2)), Partition((2, 1, 1))) == 0
    assert character(Partition((2, 1)), Partition((3,))) == -1


def test_known_table_s4():
    # classes ordered (1^4), (2,1,1), (2,2), (3,1), (4)
    classes = [
        Partition((1, 1, 1, 1)),
        Partition((2, 1, 1)),
        Partition((2, 2)),
        Partition((3, 1)),
        Partition((4,)),
    ]
    expected = {
        (4,): [1, 1, 1, 1, 1],
        (3, 1): [3, 1, -1, 0, -1],
        (2, 2): [2, 0, 2, -1, 0],
        (2, 1, 1): [3, -1, -1, 0, 1],
        (1, 1, 1, 1): [1, -1, 1, 1, -1],
    }
    for shape, row in expected.items():
        got = [character(Partition(shape), lam) for lam in classes]
        assert got == row, shape


def test_hook_lengths_and_dimension():
    assert hook_lengths(Partition((2, 2))) == [[3, 2], [2, 1]]
    assert dimension(Partition((2, 2))) == 2
    assert dimension(Partition((2, 1))) == 2
    for n in range(1, 7):
        assert dimension(Partition((n,))) == 1


def test_dimension_cross_checks_character_at_identity():
    for n in range(1, 9):
        ones = Partition((1,) * n)
        for omega in partitions_of(n):
            assert dimension(omega) == character(omega, ones)


def test_transpose_identity():
    # chi_(conjugate shape)(lam) = sign(lam) chi_shape(lam)
    for n in range(1, 8):
        for omega in partitions_of(n):
            conj = omega.conjugate()
            for lam in partitions_of(n):
                sign = -1 if (n - len(lam)) & 1 else 1
                assert character(conj, lam) == sign * character(omega, lam)


def test_column_orthogonality():
    for n in range(1, 7):
        shapes = list(partitions_of(n))
        table = character_table(n)
        order = sum(class_size(lam) for lam in shapes)
        for lam in shapes:
            for rho in shapes:
                dot = sum(
                    table[(w.parts, lam.parts)] * table[(w.parts, rho.parts)]
                    for w in shapes
                )
                if lam == rho:
                    assert dot * class_size(lam) == order
                else:
                    assert dot == 0


def test_falling_factorial():
    assert falling_factorial(4, 2) == 12
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(3, 5) == 0


def test_normalized_character_trivial_shape():
    for n in (3, 5, 8):
        for mu in partitions_of(3):
            nv = normalized_character(Partition((n,)), mu)
            assert nv.value == falling_factorial(n, 3)


def test_normalized_character_examples():
    assert normalized_character(Partition((2, 2)), Partition((2,))).value == 0
    for n in (2, 4, 6):
        sign_shape = Partition((1,) * n)
        nv = normalized_character(sign_shape, Partition((2,)))
        assert nv.value == -falling_factorial(n, 2)


def test_normalized_character_matches_definition():
    # (n)_k chi(mu 1^(n-k)) / chi(1^n), via the integer recursion
    for n in range(2, 8):
        for omega in partitions_of(n):
            dim = dimension(omega)
            for k in range(1, n + 1):
                for mu in partitions_of(k):
                    padded = Partition(
                        tuple(sorted(mu.parts + (1,) * (n - k), reverse=True))
                    )
                    expected = Fraction(
                        falling_factorial(n, k) * character(omega, padded), dim
                    )
                    nv = normalized_character(omega, mu)
                    assert nv.value == expected
                    assert (nv.n, nv.k) == (n, k)


def test_normalized_value_denominator_divides_dimension():
    for n in (4, 5, 6):
        for omega in partitions_of(n):
            dim = dimension(omega)
            for mu in partitions_of(3):
                nv = normalized_character(omega, mu)
                assert dim % nv.value.denominator == 0


def test_normalized_character_requires_k_at_most_n():
    with pytest.raises(ValueError):
        normalized_character(Partition((2, 1)), Partition((4,)))


def test_character_size_mismatch():
    with pytest.raises(ValueError):
        character(Partition((2, 1)), Partition((2, 2)))
