import random

import pytest

from chowmot import (CrossCheckError, FormalPoly, elementary_symmetric,
                     twisted_chern_identity)


def test_formal_poly_arithmetic():
    names = ("x", "y")
    x = FormalPoly.var(names, "x")
    y = FormalPoly.var(names, "y")
    assert (x + y) * (x - y) == x * x - y * y
    assert (x + 1) ** 2 == x * x + 2 * x + 1
    assert x.substitute({"x": 3, "y": 0}) == 3


def test_formal_poly_variable_mismatch():
    a = FormalPoly.var(("x",), "x")
    b = FormalPoly.var(("y",), "y")
    with pytest.raises(ValueError):
        a + b


def test_elementary_symmetric_small():
    names = ("a1", "a2")
    a1 = FormalPoly.var(names, "a1")
    a2 = FormalPoly.var(names, "a2")
    assert elementary_symmetric([a1, a2], 1) == a1 + a2
    assert elementary_symmetric([a1, a2], 2) == a1 * a2
    assert elementary_symmetric([a1, a2], 3) == FormalPoly.const(names, 0)


def test_rank_one_by_hand():
    # (1 + a1 + x) == 1*(1+x) + a1, trivially
    assert twisted_chern_identity(1, d=1)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_identity_holds(r, d):
    witness = twisted_chern_identity(r, d)
    assert witness.root_identity_checked
    assert witness.zeta_powers_checked == (1, 2)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_numeric_oracle(r):
    # independent route: plug random integers into both sides
    rng = random.Random(11)
    for _ in range(50):
        roots = [rng.randint(-5, 5) for _ in range(r)]
        x = rng.randint(-5, 5)
        lhs = 1
        for a in roots:
            lhs *= 1 + a + x
        rhs = 0
        for i in range(r + 1):
            e_i = 0
            if i == 0:
                e_i = 1
            else:
                from itertools import combinations
                for combo in combinations(roots, i):
                    prod = 1
                    for v in combo:
                        prod *= v
                    e_i += prod
            rhs += e_i * (1 + x) ** (r - i)
        assert lhs == rhs


@pytest.mark.parametrize("d", [1, 2, 3])
def test_zeta_numeric_oracle(d):
    # zeta(x)^(c-1) against the expanded twisted class, at integer points
    rng = random.Random(5)
    from itertools import combinations
    for c in (2, 3):
        for _ in range(30):
            roots = [rng.randint(-4, 4) for _ in range(d)]
            x = rng.randint(-4, 4)
            zeta = sum(_e(roots, i) * (1 + x) ** (d - i) for i in range(d + 1))
            repeated = roots * (c - 1)
            rank = d * (c - 1)
            twisted = sum(_e(repeated, k) * (1 + x) ** (rank - k) for k in range(rank + 1))
            assert twisted == zeta ** (c - 1)


def _e(values, i):
    from itertools import combinations
    if i == 0:
        return 1
    total = 0
    for combo in combinations(values, i):
        prod = 1
        for v in combo:
            prod *= v
        total += prod
    return total


def test_bad_rank_rejected():
    with pytest.raises(ValueError):
        twisted_chern_identity(0, 1)
