"""Shared test utilities: independent oracles and cached enumerations.

Everything here deliberately avoids the package's own fast paths where
it matters: the point is to recompute expected values through a second
route and freeze them in the tests.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

from chowmot import IntPoly, enumerate_nests, sigma


@lru_cache(maxsize=None)
def nests_list(n: int):
    return tuple(enumerate_nests(n))


def bell_number(n: int) -> int:
    """Bell numbers by the recurrence B(n+1) = sum C(n,k) B(k)."""
    bells = [1]
    for m in range(n):
        bells.append(sum(comb(m, k) * bells[k] for k in range(m + 1)))
    return bells[n]


def laminar_families_bruteforce(n: int) -> int:
    """Count families of >=2-subsets of {1..n} in which no two members
    partially overlap, by filtering every subset family directly."""
    subsets = [frozenset(c)
               for size in range(2, n + 1)
               for c in combinations(range(1, n + 1), size)]

    def laminar(family) -> bool:
        for a, b in combinations(family, 2):
            inter = a & b
            if inter and inter != a and inter != b:
                return False
        return True

    count = 0
    for bits in range(1 << len(subsets)):
        family = [subsets[i] for i in range(len(subsets)) if bits >> i & 1]
        if laminar(family):
            count += 1
    return count


def sigma_expr(d: int, *factors: tuple[int, int]) -> IntPoly:
    """Product of powers of sigma blocks: factors are (subscript, power)."""
    out = IntPoly.one()
    for j, e in factors:
        out = out * sigma(j, d) ** e
    return out


def remark_expansion(d: int) -> dict[int, IntPoly]:
    """The first five coefficients written out with sigma blocks."""
    return {
        1: IntPoly.one(),
        2: sigma(1, d),
        3: sigma(2, d) + 3 * sigma_expr(d, (1, 2)),
        4: sigma(3, d) + 10 * sigma_expr(d, (1, 1), (2, 1)) + 15 * sigma_expr(d, (1, 3)),
        5: (sigma(4, d) + 15 * sigma_expr(d, (1, 1), (3, 1)) + 10 * sigma_expr(d, (2, 2))
            + 105 * sigma_expr(d, (1, 2), (2, 1)) + 105 * sigma_expr(d, (1, 4))),
    }
