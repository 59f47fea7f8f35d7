import random
from itertools import combinations

import pytest

from chowmot import (CapExceededError, IntPoly, Nest, enumerate_nests,
                     enumerate_partitions, enumerate_weight_vectors, nest_stats,
                     nest_weight_poly, sigma)
from chowmot.nests import bits_of, integer_partitions, mask_of

from helpers import bell_number, laminar_families_bruteforce, nests_list


def test_partition_counts_against_bell_recurrence():
    # Bell numbers from the independent recurrence: 1, 1, 2, 5, 15, 52
    assert [bell_number(n) for n in range(6)] == [1, 1, 2, 5, 15, 52]
    for n in (1, 3, 5, 7):
        assert sum(1 for _ in enumerate_partitions(n)) == bell_number(n)


def test_partition_order_is_restricted_growth():
    got = list(enumerate_partitions(3))
    assert got == [
        ((1, 2, 3),),
        ((1, 2), (3,)),
        ((1, 3), (2,)),
        ((1,), (2, 3)),
        ((1,), (2,), (3,)),
    ]


def test_partition_no_duplicates():
    seen = set()
    for p in enumerate_partitions(6):
        key = frozenset(frozenset(b) for b in p)
        assert key not in seen
        seen.add(key)


def test_partition_cap():
    with pytest.raises(CapExceededError):
        list(enumerate_partitions(13))


def test_integer_partitions():
    assert list(integer_partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_mask_roundtrip():
    assert bits_of(mask_of((1, 3, 4))) == (1, 3, 4)


def independent_nest_check(nest: Nest) -> None:
    blocks = [set(bits_of(b)) for b in nest.blocks]
    for e in range(1, nest.n + 1):
        assert {e} in blocks
    for a, b in combinations(blocks, 2):
        inter = a & b
        assert not inter or inter == a or inter == b, f"{a} overlaps {b}"


def test_nest_counts():
    assert sum(1 for _ in enumerate_nests(1)) == 1
    assert sum(1 for _ in enumerate_nests(2)) == 2
    assert sum(1 for _ in enumerate_nests(3)) == 8


def test_nest_count_n4_against_bruteforce():
    # every family of >=2-subsets with no partial overlaps, filtered directly
    assert laminar_families_bruteforce(4) == 52
    assert sum(1 for _ in enumerate_nests(4)) == 52


def test_nests_n3_exact_families():
    got = {tuple(sorted(bits_of(b) for b in nest.internal)) for nest in enumerate_nests(3)}
    expected = {
        tuple(sorted(fam)) for fam in [
            (),
            ((1, 2),), ((1, 3),), ((2, 3),),
            ((1, 2, 3),),
            ((1, 2), (1, 2, 3)), ((1, 3), (1, 2, 3)), ((2, 3), (1, 2, 3)),
        ]
    }
    assert got == expected


def test_emitted_nests_are_valid_and_distinct():
    for n in range(1, 6):
        seen = set()
        for nest in nests_list(n):
            independent_nest_check(nest)
            assert nest not in seen
            seen.add(nest)


def test_from_blocks_rejects_overlap():
    with pytest.raises(ValueError):
        Nest.from_blocks(3, [(1, 2), (2, 3)])


def test_stats_example_chain():
    nest = Nest.from_blocks(3, [(2, 3), (1, 2, 3)])
    stats = nest_stats(nest)
    assert stats.c == 1
    assert stats.children[mask_of((1, 2, 3))] == 2
    assert stats.children[mask_of((2, 3))] == 2


def test_stats_singletons_only():
    nest = Nest.from_blocks(4, [])
    stats = nest_stats(nest)
    assert stats.c == 4
    assert stats.internal == ()


def test_stats_two_components():
    nest = Nest.from_blocks(4, [(1, 2), (3, 4)])
    stats = nest_stats(nest)
    assert stats.c == 2
    assert stats.children[mask_of((1, 2))] == 2
    assert stats.children[mask_of((3, 4))] == 2


def test_child_count_sum_rule():
    # sum of (children - 1) over internal blocks equals n - c
    for n in range(1, 7):
        for nest in nests_list(n):
            stats = nest_stats(nest)
            assert sum(stats.children[b] - 1 for b in stats.internal) == n - stats.c


def test_weight_poly_examples():
    x = IntPoly.x()
    assert nest_weight_poly(Nest.from_blocks(3, []), 2) == IntPoly.one()
    assert nest_weight_poly(Nest.from_blocks(2, [(1, 2)]), 3) == x + x ** 2
    nest = Nest.from_blocks(3, [(1, 2), (1, 2, 3)])
    assert nest_weight_poly(nest, 2) == x ** 2


def test_weight_vectors_examples():
    cherry = Nest.from_blocks(2, [(1, 2)])
    assert list(enumerate_weight_vectors(cherry, 1)) == []
    vecs = list(enumerate_weight_vectors(cherry, 3))
    assert vecs == [{mask_of((1, 2)): 1}, {mask_of((1, 2)): 2}]
    bare = Nest.from_blocks(3, [])
    assert list(enumerate_weight_vectors(bare, 5)) == [{}]


def test_weight_vectors_sum_matches_poly():
    rng = random.Random(2024)
    pool = [nest for n in range(1, 6) for nest in nests_list(n)]
    for _ in range(200):
        nest = rng.choice(pool)
        d = rng.randint(1, 4)
        total = IntPoly.zero()
        for mu in enumerate_weight_vectors(nest, d):
            total = total + IntPoly.monomial(sum(mu.values()))
        assert total == nest_weight_poly(nest, d)


def test_weight_poly_palindromic():
    for n in range(2, 7):
        for nest in nests_list(n):
            stats = nest_stats(nest)
            for d in (1, 2, 3):
                poly = nest_weight_poly(nest, d)
                if poly:
                    lo = len(stats.internal)
                    hi = d * (n - stats.c) - len(stats.internal)
                    assert poly.is_palindromic(lo, hi)


def test_nest_cap_env_override(monkeypatch):
    monkeypatch.setenv("WONDERFUL_CAP_N", "3")
    with pytest.raises(CapExceededError):
        list(enumerate_nests(4))
    monkeypatch.delenv("WONDERFUL_CAP_N")
    assert sum(1 for _ in enumerate_nests(4)) == 52


def test_sigma_consistency_with_weight_ranges():
    # weight polynomial of a single internal block is the sigma block itself
    for c in range(2, 5):
        for d in range(1, 4):
            nest = Nest.from_blocks(c, [tuple(range(1, c + 1))])
            assert nest_weight_poly(nest, d) == sigma(c - 1, d)
