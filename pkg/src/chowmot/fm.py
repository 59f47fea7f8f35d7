"""Exact decomposition data for configuration-space compactifications.

For an n-point compactified configuration space over a d-dimensional
smooth projective base, the additive structure is a table of summands
(k, i) -> multiplicity, one copy of the k-th cartesian power twisted by
i per unit.  This module computes that table three independent ways and
insists they agree:

* `f_direct`   - enumerate connected nests and sum their weight
                 polynomials;
* `f_recursive`- the partition recursion with memoised smaller cases;
* `solve_N`    - solve the functional equation
                 (1-x) x^d t + (1 - x^(d+1)) = exp(x^d N) - x^(d+1) exp(N)
                 term by term for the exponential generating function N.

Everything downstream (rank counts, Poincare polynomials, the symmetric
quotient) consumes the verified table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from .errors import CrossCheckError
from .macdonald import BettiVector
from .nests import (Nest, enumerate_nests, integer_partitions, nest_stats,
                    nest_weight_poly, partition_cap)
from .polynomials import IntPoly, SigmaPoly, sigma
from .series import ExpSeries


def partition_class_size(shape: Sequence[int]) -> int:
    """Number of set partitions of sum(shape) elements with these block sizes."""
    n = sum(shape)
    count = factorial(n)
    for part in shape:
        count //= factorial(part)
    mult = 1
    seen: dict[int, int] = {}
    for part in shape:
        seen[part] = seen.get(part, 0) + 1
    for m in seen.values():
        mult *= factorial(m)
    assert count % mult == 0
    return count // mult


def block_product_sum(n: int, k: int, value: Callable[[int], object], zero):
    """sum over set partitions of [n] into k blocks of prod value(|block|).

    Works in any commutative ring whose elements support + and int *;
    the sum runs over integer partitions weighted by the number of set
    partitions of each shape.
    """
    total = zero
    for shape in integer_partitions(n):
        if len(shape) != k:
            continue
        term = partition_class_size(shape)
        acc = None
        for part in shape:
            v = value(part)
            acc = v if acc is None else acc * v
        total = total + term * acc
    return total


class CoefficientSession:
    """Memoised family f_1, f_2, ... over a caller-chosen ring.

    f_1 is the ring's one; for n >= 2,
    f_n = sum_{k=2}^{n} sigma(k-1) * (sum over k-block partitions of
    prod f_{block sizes}).  The memo lives on the session, so separate
    sessions never share state.
    """

    def __init__(self, sigma_at: Callable[[int], object], one, zero):
        self._sigma_at = sigma_at
        self._zero = zero
        self._memo: dict[int, object] = {1: one}

    def f(self, n: int):
        if n < 1:
            raise ValueError("n must be at least 1")
        if n in self._memo:
            return self._memo[n]
        total = self._zero
        for k in range(2, n + 1):
            s = self._sigma_at(k - 1)
            if not s:
                continue
            total = total + s * block_product_sum(n, k, self.f, self._zero)
        self._memo[n] = total
        return total


def f_recursive(n: int, d: int) -> IntPoly:
    """Weight distribution of connected nests on n leaves, by recursion."""
    if not 1 <= n <= partition_cap():
        raise ValueError(f"n out of range 1..{partition_cap()}")
    session = CoefficientSession(lambda j: sigma(j, d), IntPoly.one(), IntPoly.zero())
    return session.f(n)


def f_direct(n: int, d: int) -> IntPoly:
    """Same distribution by brute enumeration of connected nests."""
    total = IntPoly.zero()
    count = 0
    for nest in enumerate_nests(n):
        if nest_stats(nest).c == 1:
            total = total + nest_weight_poly(nest, d)
            count += 1
    assert count >= 1
    return total


@lru_cache(maxsize=None)
def _sigma_session() -> CoefficientSession:
    return CoefficientSession(SigmaPoly.symbol, SigmaPoly.one(), SigmaPoly.zero())


def f_sigma_form(n: int) -> SigmaPoly:
    """f_n with the sigma blocks left symbolic (independent of d)."""
    if not 1 <= n <= partition_cap():
        raise ValueError(f"n out of range 1..{partition_cap()}")
    return _sigma_session().f(n)


def nk_sigma_form(n: int, k: int) -> SigmaPoly:
    """Symbolic t^n/n! coefficient of N^k/k!."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return block_product_sum(n, k, _sigma_session().f, SigmaPoly.zero())


def _equation_lhs(d: int, order: int) -> ExpSeries:
    # (1-x) x^d t + (1 - x^(d+1))
    f0 = IntPoly.one() - IntPoly.monomial(d + 1)
    f1 = IntPoly.monomial(d) - IntPoly.monomial(d + 1)
    return ExpSeries(order, (f0, f1))


def _equation_rhs(series: ExpSeries, d: int) -> ExpSeries:
    xd = IntPoly.monomial(d)
    xd1 = IntPoly.monomial(d + 1)
    return series.scale(xd).exp() - series.exp().scale(xd1)


def functional_equation_residual(series: ExpSeries, d: int) -> ExpSeries:
    """LHS minus RHS of the defining identity, for checks."""
    return _equation_lhs(d, series.order) - _equation_rhs(series, d)


@lru_cache(maxsize=None)
def solve_N(d: int, order: int) -> ExpSeries:
    """Solve the functional equation for N term by term, exactly.

    At each t-degree the unknown coefficient f_n appears multiplied by
    x^d - x^(d+1); the remaining terms only involve f_{<n}, so f_n is
    the exact quotient of the residual by x^d (1 - x).  A nonzero final
    residual or an inexact quotient aborts: both would mean a bug.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if order < 1:
        raise ValueError("order must be at least 1")
    divisor = IntPoly.monomial(d) - IntPoly.monomial(d + 1)
    lhs = _equation_lhs(d, order)
    fs: list[IntPoly] = [IntPoly.zero(), IntPoly.one()]
    for n in range(2, order + 1):
        partial = ExpSeries(n, fs[: n + 1])
        known = _equation_rhs(partial, d).coefficient(n)
        residual = lhs.coefficient(n) - known
        fs.append(residual.divexact(divisor))
    series = ExpSeries(order, fs)
    if not functional_equation_residual(series, d).is_zero():
        raise CrossCheckError(f"functional equation residual nonzero for d={d}, order={order}")
    return series


def _series_powers(n: int, d: int) -> list[ExpSeries]:
    """[N^1/1!, ..., N^n/n!] truncated at t^n."""
    series = solve_N(d, n)
    powers = [series]
    for k in range(2, n + 1):
        powers.append((powers[-1] * series).divexact_int(k))
    return powers


def multiplicity(n: int, d: int, k: int, i: int) -> int:
    """Number of copies of the k-th power twisted by i inside level n."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if i < 0:
        return 0
    return _series_powers(n, d)[k - 1].extract(i, n)


def partition_multiplicity(n: int, d: int, partition: Sequence[Sequence[int]], i: int) -> int:
    """Copies of the diagonal stratum of a given partition, twisted by i."""
    covered = sorted(e for block in partition for e in block)
    if covered != list(range(1, n + 1)):
        raise ValueError("blocks must partition {1..n}")
    session = CoefficientSession(lambda j: sigma(j, d), IntPoly.one(), IntPoly.zero())
    prod = IntPoly.one()
    for block in partition:
        prod = prod * session.f(len(block))
    return prod.coeff(i) if i >= 0 else 0


@dataclass(frozen=True)
class DecompTable:
    """Verified multiplicity table (k, i) -> count for one (n, d)."""

    n: int
    d: int
    entries: dict[tuple[int, int], int]

    def validate(self) -> None:
        if self.entries.get((self.n, 0)) != 1:
            raise CrossCheckError("table must contain one untwisted copy of the full power")
        for (k, i), m in self.entries.items():
            if m < 0:
                raise CrossCheckError(f"negative multiplicity at {(k, i)}")
            dual = self.d * (self.n - k) - i
            if self.entries.get((k, dual), 0) != m:
                raise CrossCheckError(f"duality fails at {(k, i)}: partner {(k, dual)}")

    def multiplicity(self, k: int, i: int) -> int:
        return self.entries.get((k, i), 0)

    def sorted_entries(self) -> list[tuple[int, int, int]]:
        return [(k, i, self.entries[(k, i)])
                for k, i in sorted(self.entries, key=lambda ki: (-ki[0], ki[1]))]

    def total_summands(self) -> int:
        return sum(self.entries.values())

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "entries": [{"k": k, "i": i, "mult": m} for k, i, m in self.sorted_entries()],
        }


def decomposition_table(n: int, d: int) -> DecompTable:
    """Full multiplicity table, computed twice and compared.

    The generating-function route extracts coefficients of the powers
    of N; the direct route walks every nest and its weight polynomial.
    Any discrepancy raises CrossCheckError with the differing cells.
    """
    if d < 1:
        raise ValueError("d must be positive")
    powers = _series_powers(n, d)
    via_series: dict[tuple[int, int], int] = {}
    for k in range(1, n + 1):
        for i, c in powers[k - 1].coefficient(n).terms():
            via_series[(k, i)] = c

    via_nests: dict[tuple[int, int], int] = {}
    for nest in enumerate_nests(n):
        k = nest_stats(nest).c
        for i, c in nest_weight_poly(nest, d).terms():
            key = (k, i)
            via_nests[key] = via_nests.get(key, 0) + c

    if via_series != via_nests:
        cells = sorted(set(via_series) | set(via_nests))
        diff = [(cell, via_series.get(cell, 0), via_nests.get(cell, 0))
                for cell in cells if via_series.get(cell, 0) != via_nests.get(cell, 0)]
        raise CrossCheckError(
            f"generating function and enumeration disagree for n={n}, d={d}: "
            + "; ".join(f"{cell}: series={a} direct={b}" for cell, a, b in diff[:12]))

    table = DecompTable(n, d, via_series)
    table.validate()
    return table


@dataclass(frozen=True)
class RankProfile:
    """Total ranks of the cartesian powers, index k-1 holds power k."""

    ranks: tuple[int, ...]

    def __post_init__(self):
        if any(r < 1 for r in self.ranks):
            raise ValueError("ranks must be positive")

    def rank(self, k: int) -> int:
        if not 1 <= k <= len(self.ranks):
            raise ValueError(f"no rank supplied for power {k}")
        return self.ranks[k - 1]


def projective_ranks(n: int, d: int) -> RankProfile:
    """Profile (d+1)^k for projective space of dimension d."""
    return RankProfile(tuple((d + 1) ** k for k in range(1, n + 1)))


def chow_rank(n: int, d: int, ranks: RankProfile) -> int:
    """Total rank of level n given the ranks of the cartesian powers."""
    table = decomposition_table(n, d)
    return sum(m * ranks.rank(k) for (k, _i), m in table.entries.items())


def rank_polynomial(n: int) -> IntPoly:
    """Total rank over projective space of symbolic dimension d.

    Returned as an integer polynomial in d: the x-variable is summed
    out at x = 1, where each sigma block contributes d*j - 1.
    """
    session = CoefficientSession(lambda j: IntPoly((-1, j)), IntPoly.one(), IntPoly.zero())
    d_plus_1 = IntPoly((1, 1))
    total = IntPoly.zero()
    for k in range(1, n + 1):
        total = total + (d_plus_1 ** k) * block_product_sum(n, k, session.f, IntPoly.zero())
    return total


def poincare(n: int, d: int, betti: BettiVector | Sequence[int]) -> IntPoly:
    """Poincare polynomial of level n from the base's Betti numbers."""
    if not isinstance(betti, BettiVector):
        betti = BettiVector(tuple(betti))
    if len(betti.values) != 2 * d + 1:
        raise ValueError(f"need 2*{d}+1 Betti numbers, got {len(betti.values)}")
    base = betti.poincare_poly()
    table = decomposition_table(n, d)
    powers = {1: base}
    for k in range(2, n + 1):
        powers[k] = powers[k - 1] * base
    total = IntPoly.zero()
    for (k, i), m in table.entries.items():
        total = total + m * powers[k].shift(2 * i)
    return total
