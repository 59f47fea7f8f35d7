"""Decomposition of the symmetric quotient by forest counting.

Summands of the quotient are indexed by unlabeled weighted forests: a
forest of type nu = {n_1, ..., n_r} (multiplicities of its distinct
trees) and total weight m contributes one copy of the product of
symmetric powers X^(n_1) x ... x X^(n_r) twisted by m.  The table of
counts lambda(nu, m) is produced by enumerating canonical forests and,
by default, re-derived from the labeled world: group every weighted
nest by its canonical image, check the orbit sizes, and compare.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import CrossCheckError
from .forests import WeightedForest, enumerate_weighted_forests, forest_of_nest, labelings_count
from .macdonald import BettiVector, symmetric_product_poincare
from .nests import enumerate_nests, enumerate_weight_vectors, nest_stats
from .polynomials import IntPoly

QKey = tuple[tuple[int, ...], int]  # (sorted multiplicity multiset, total weight)


@dataclass(frozen=True)
class QuotientDecomp:
    """lambda table for one (n, d), with the witnessing forests kept."""

    n: int
    d: int
    entries: dict[QKey, int]
    forests: dict[QKey, tuple[WeightedForest, ...]] = field(repr=False)

    def count(self, nu: Sequence[int], m: int) -> int:
        return self.entries.get((tuple(sorted(nu)), m), 0)

    def sorted_entries(self) -> list[tuple[tuple[int, ...], int, int]]:
        return [(nu, m, self.entries[(nu, m)])
                for nu, m in sorted(self.entries, key=lambda key: (-sum(key[0]), key[0], key[1]))]

    def to_document(self, verbose: bool = False) -> dict:
        entries = []
        for nu, m, lam in self.sorted_entries():
            row = {"nu": list(nu), "m": m, "lambda": lam}
            if verbose:
                row["forests"] = [f.to_obj() for f in self.forests[(nu, m)]]
            entries.append(row)
        return {"n": self.n, "d": self.d, "entries": entries}


def _forest_table(n: int, d: int) -> tuple[dict[QKey, int], dict[QKey, list[WeightedForest]]]:
    entries: dict[QKey, int] = {}
    witnesses: dict[QKey, list[WeightedForest]] = {}
    for forest in enumerate_weighted_forests(n, d):
        key = (forest.type_multiplicities(), forest.total_weight)
        entries[key] = entries.get(key, 0) + 1
        witnesses.setdefault(key, []).append(forest)
    return entries, witnesses


def _labeled_orbit_check(n: int, d: int, entries: dict[QKey, int],
                         witnesses: dict[QKey, list[WeightedForest]]) -> None:
    """Re-derive the table from weighted nests and compare, fatally."""
    orbit_sizes: Counter[WeightedForest] = Counter()
    for nest in enumerate_nests(n):
        for mu in enumerate_weight_vectors(nest, d):
            orbit_sizes[forest_of_nest(nest, mu)] += 1

    enumerated = {f for group in witnesses.values() for f in group}
    if enumerated != set(orbit_sizes):
        missing = sorted(str(f) for f in enumerated - set(orbit_sizes))[:6]
        extra = sorted(str(f) for f in set(orbit_sizes) - enumerated)[:6]
        raise CrossCheckError(
            f"forest enumeration and labeled orbits disagree for n={n}, d={d}; "
            f"only-enumerated={missing} only-labeled={extra}")

    for forest, size in orbit_sizes.items():
        expected = labelings_count(forest, n)
        if size != expected:
            raise CrossCheckError(
                f"orbit of {forest} has {size} labeled members, label count gives {expected}")

    grouped: dict[QKey, int] = {}
    for forest in orbit_sizes:
        key = (forest.type_multiplicities(), forest.total_weight)
        grouped[key] = grouped.get(key, 0) + 1
    if grouped != entries:
        cells = sorted(set(grouped) | set(entries))
        diff = [(c, entries.get(c, 0), grouped.get(c, 0))
                for c in cells if entries.get(c, 0) != grouped.get(c, 0)]
        raise CrossCheckError("lambda tables disagree: " +
                              "; ".join(f"{c}: forests={a} orbits={b}" for c, a, b in diff[:12]))


def quotient_decomposition(n: int, d: int, verify: bool = True) -> QuotientDecomp:
    """The full lambda table; `verify` replays the labeled-orbit oracle."""
    if d < 1:
        raise ValueError("d must be positive")
    entries, witnesses = _forest_table(n, d)
    if verify:
        _labeled_orbit_check(n, d, entries, witnesses)
    return QuotientDecomp(n, d, entries,
                          {key: tuple(group) for key, group in witnesses.items()})


def lambda_count(n: int, d: int, nu: Sequence[int], m: int) -> int:
    """Number of weighted forests of multiplicity type nu and weight m."""
    if m < 0:
        return 0
    return quotient_decomposition(n, d, verify=False).count(nu, m)


def quotient_poincare(n: int, d: int, betti: BettiVector | Sequence[int]) -> IntPoly:
    """Poincare polynomial of the quotient via symmetric-product factors."""
    if not isinstance(betti, BettiVector):
        betti = BettiVector(tuple(betti))
    if len(betti.values) != 2 * d + 1:
        raise ValueError(f"need 2*{d}+1 Betti numbers, got {len(betti.values)}")
    table = quotient_decomposition(n, d, verify=False)
    sym_cache: dict[int, IntPoly] = {}

    def sym(k: int) -> IntPoly:
        if k not in sym_cache:
            sym_cache[k] = symmetric_product_poincare(betti, k)
        return sym_cache[k]

    total = IntPoly.zero()
    for (nu, m), lam in table.entries.items():
        prod = IntPoly.one()
        for part in nu:
            prod = prod * sym(part)
        total = total + lam * prod.shift(2 * m)
    return total
