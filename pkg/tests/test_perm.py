import random

import pytest

from charpoly.perm import (
    Partition,
    Permutation,
    all_permutations,
    class_representative,
    compose,
    format_cycles,
    from_cycles,
    full_cycle,
    identity,
    parse_cycles,
    partitions_of,
)


def test_compose_published_example():
    # eleven-symbol product whose result is the full cycle
    a = parse_cycles("(1 6 8 9)(2 5)(3)(4)(7)(10)(11)")
    b = parse_cycles("(1 5)(2 3 4)(6 7)(8)(9 10 11)")
    assert compose(a, b) == full_cycle(11)


def test_compose_identity_and_inverse_pair():
    b = Permutation((3, 1, 4, 2, 5))
    assert compose(identity(5), b) == b
    assert compose(b, identity(5)) == b
    a = parse_cycles("(1 2 3)")
    assert compose(a, parse_cycles("(1 3 2)")) == identity(3)


def test_compose_is_right_to_left():
    # b acts first: with a = (1 2), b = (2 3): a(b(2)) = a(3) = 3
    a = parse_cycles("(1 2)(3)")
    b = parse_cycles("(1)(2 3)")
    assert compose(a, b)(2) == 3
    assert compose(b, a)(2) == 1


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(identity(3), identity(4))


def test_cycle_decomposition_canonical():
    assert full_cycle(11).cycles() == (tuple(range(1, 12)),)
    assert identity(4).cycles() == ((1,), (2,), (3,), (4,))
    a = parse_cycles("(1 6 8 9)(2 5)(3)(4)(7)(10)(11)")
    assert a.cycles() == (
        (1, 6, 8, 9), (2, 5), (3,), (4,), (7,), (10,), (11,),
    )
    # cycles start at their minimum and are sorted by minima
    for p in all_permutations(5):
        cycles = p.cycles()
        assert all(c[0] == min(c) for c in cycles)
        assert [c[0] for c in cycles] == sorted(c[0] for c in cycles)
        assert sorted(x for c in cycles for x in c) == list(range(1, 6))


def test_cycle_decomposition_round_trips():
    for p in all_permutations(5):
        assert from_cycles(p.cycles(), 5) == p


def test_cycle_count():
    a = parse_cycles("(1 6 8 9)(2 5)(3)(4)(7)(10)(11)")
    b = parse_cycles("(1 5)(2 3 4)(6 7)(8)(9 10 11)")
    assert a.cycle_count() == 7
    assert b.cycle_count() == 5
    assert identity(9).cycle_count() == 9


def test_cycle_count_matches_cycle_type_length():
    for p in all_permutations(6):
        assert p.cycle_count() == len(p.cycle_type())


def test_full_cycle_and_class_representative():
    assert full_cycle(3) == Permutation((2, 3, 1))
    assert class_representative(Partition((2, 1))) == parse_cycles("(1 2)(3)")
    assert class_representative(Partition((3, 2))) == parse_cycles("(1 2 3)(4 5)")


def test_class_representative_cycle_type_exhaustive():
    for d in range(1, 7):
        for mu in partitions_of(d):
            assert class_representative(mu).cycle_type() == mu


def test_enumeration_counts():
    assert sum(1 for _ in all_permutations(3)) == 6
    assert sum(1 for _ in all_permutations(0)) == 1
    # one-line forms in lexicographic order
    perms = [p.images for p in all_permutations(3)]
    assert perms == sorted(perms)


def test_partition_counts():
    # p(d) for d = 0..9 by brute force over bounded compositions
    def brute(d):
        out = set()

        def rec(remaining, cap, acc):
            if remaining == 0:
                out.add(tuple(acc))
                return
            for part in range(1, min(cap, remaining) + 1):
                rec(remaining - part, part, acc + [part])

        rec(d, d, [])
        return len(out) if d else 1

    for d in range(10):
        assert sum(1 for _ in partitions_of(d)) == brute(d)
    assert [p.parts for p in partitions_of(0)] == [()]
    assert sum(1 for _ in partitions_of(5)) == 7


def test_partitions_lexicographic_order():
    for d in range(8):
        seq = [p.parts for p in partitions_of(d)]
        assert seq == sorted(seq)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition((3, 3, 1)).conjugate() == Partition((3, 2, 2))
    assert Partition(()).conjugate() == Partition(())


def test_inverse_composes_to_identity_exhaustive():
    for k in range(7):
        for p in all_permutations(k):
            assert compose(p, p.inverse()).is_identity()
            assert compose(p.inverse(), p).is_identity()


def test_conjugation_preserves_cycle_type_sampled():
    rng = random.Random(7)
    perms = list(all_permutations(6))
    for _ in range(200):
        a = rng.choice(perms)
        g = rng.choice(perms)
        conj = compose(g, compose(a, g.inverse()))
        assert conj.cycle_type() == a.cycle_type()


def test_cycle_notation_round_trip():
    for p in all_permutations(5):
        assert parse_cycles(format_cycles(p)) == p
    assert format_cycles(identity(3)) == "(1)(2)(3)"
    with pytest.raises(ValueError):
        parse_cycles("(1 2)(2 3)")
    with pytest.raises(ValueError):
        parse_cycles("(1 3)")  # symbol 2 missing


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))
    with pytest.raises(ValueError):
        Permutation((0, 1))
