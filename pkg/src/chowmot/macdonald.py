"""Poincare polynomials of symmetric products from the Betti numbers.

The generating series over all symmetric powers of a space with Betti
numbers b_i is the rational function

    prod_{i odd} (1 + t^i T)^{b_i}  /  prod_{i even} (1 - t^i T)^{b_i}

expanded exactly in T with integer polynomial coefficients in t.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .polynomials import IntPoly


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers b_0 .. b_{2d} of a d-dimensional space."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) % 2 == 0 or not self.values:
            raise ValueError("expected an odd number of Betti entries b_0 .. b_{2d}")
        if any(v < 0 for v in self.values):
            raise ValueError("Betti numbers are non-negative")
        if self.values[0] < 1:
            raise ValueError("b_0 must be at least 1")
        if self.values != self.values[::-1]:
            warnings.warn("Betti vector is not palindromic; no duality to lean on",
                          stacklevel=2)

    @classmethod
    def projective_space(cls, d: int) -> BettiVector:
        values = [0] * (2 * d + 1)
        for i in range(0, 2 * d + 1, 2):
            values[i] = 1
        return cls(tuple(values))

    @classmethod
    def curve(cls, genus: int) -> BettiVector:
        return cls((1, 2 * genus, 1))

    @property
    def dim(self) -> int:
        return (len(self.values) - 1) // 2

    def poincare_poly(self) -> IntPoly:
        return IntPoly(self.values)


@dataclass(frozen=True)
class PoincareSeries:
    """Truncated series in T whose coefficients are polynomials in t."""

    order: int
    coeffs: tuple[IntPoly, ...]

    def coefficient(self, n: int) -> IntPoly:
        if n > self.order:
            raise ValueError(f"T-degree {n} beyond truncation order {self.order}")
        return self.coeffs[n]


def _mul_trunc(a: list[IntPoly], b: list[IntPoly], order: int) -> list[IntPoly]:
    out = [IntPoly.zero() for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(min(order - i, len(b) - 1) + 1):
            if b[j]:
                out[i + j] = out[i + j] + ai * b[j]
    return out


def poincare_series(betti: BettiVector | Sequence[int], order: int) -> PoincareSeries:
    """Expansion of the symmetric-power series through T^order."""
    if not isinstance(betti, BettiVector):
        betti = BettiVector(tuple(betti))
    if order < 0:
        raise ValueError("order must be non-negative")
    series = [IntPoly.one()] + [IntPoly.zero()] * order
    for i, b in enumerate(betti.values):
        if b == 0:
            continue
        if i % 2 == 1:
            factor = [IntPoly.monomial(i * j, comb(b, j)) for j in range(min(b, order) + 1)]
        else:
            factor = [IntPoly.monomial(i * j, comb(j + b - 1, b - 1)) for j in range(order + 1)]
        series = _mul_trunc(series, factor, order)
    return PoincareSeries(order, tuple(series))


def symmetric_product_poincare(betti: BettiVector | Sequence[int], n: int) -> IntPoly:
    """Poincare polynomial of the n-th symmetric product."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return poincare_series(betti, n).coefficient(n)
