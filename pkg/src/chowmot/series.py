"""Truncated exponential generating functions with polynomial coefficients.

An `ExpSeries` of order N stores polynomials f_0 .. f_N and stands for
sum_n f_n(x) t^n / n!.  The factorials are notational: the stored
coefficients stay in ZZ[x] and every internal division (by k while
building powers, by k! inside exp/composition) is checked to be exact.
Binary operations truncate to the smaller order of the operands; order
is never silently promoted.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

from .errors import ExactnessError
from .polynomials import IntPoly


class ExpSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[IntPoly | int] = ()):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [c if isinstance(c, IntPoly) else IntPoly((c,)) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError("more coefficients than the truncation order allows")
        cs.extend(IntPoly.zero() for _ in range(order + 1 - len(cs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("ExpSeries is immutable")

    @classmethod
    def zero(cls, order: int) -> ExpSeries:
        return cls(order)

    @classmethod
    def one(cls, order: int) -> ExpSeries:
        return cls(order, (IntPoly.one(),))

    @classmethod
    def t(cls, order: int) -> ExpSeries:
        """The series whose only term is t (f_1 = 1)."""
        return cls(order, (IntPoly.zero(), IntPoly.one()))

    def coefficient(self, n: int) -> IntPoly:
        """f_n, the polynomial multiplying t^n/n!."""
        if n > self.order:
            raise ValueError(f"t-degree {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def extract(self, i: int, n: int) -> int:
        """Integer coefficient of x^i inside f_n."""
        if i < 0:
            return 0
        return self.coefficient(n).coeff(i)

    def constant_term(self) -> IntPoly:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def truncate(self, order: int) -> ExpSeries:
        if order >= self.order:
            return self
        return ExpSeries(order, self.coeffs[: order + 1])

    def __add__(self, other: ExpSeries) -> ExpSeries:
        order = min(self.order, other.order)
        return ExpSeries(order, [self.coeffs[n] + other.coeffs[n] for n in range(order + 1)])

    def __sub__(self, other: ExpSeries) -> ExpSeries:
        order = min(self.order, other.order)
        return ExpSeries(order, [self.coeffs[n] - other.coeffs[n] for n in range(order + 1)])

    def __neg__(self) -> ExpSeries:
        return ExpSeries(self.order, [-c for c in self.coeffs])

    def scale(self, factor: IntPoly | int) -> ExpSeries:
        """Multiply every coefficient by a fixed polynomial or integer."""
        return ExpSeries(self.order, [c * factor for c in self.coeffs])

    def __mul__(self, other: ExpSeries) -> ExpSeries:
        """Binomial-convolution product: h_n = sum_i C(n,i) f_i g_{n-i}."""
        if not isinstance(other, ExpSeries):
            return NotImplemented
        order = min(self.order, other.order)
        out = []
        for n in range(order + 1):
            acc = IntPoly.zero()
            for i in range(n + 1):
                a = self.coeffs[i]
                b = other.coeffs[n - i]
                if a and b:
                    acc = acc + comb(n, i) * (a * b)
            out.append(acc)
        return ExpSeries(order, out)

    def divexact_int(self, k: int) -> ExpSeries:
        return ExpSeries(self.order, [c.divexact_int(k) for c in self.coeffs])

    def pow_over_factorial(self, k: int) -> ExpSeries:
        """self**k / k!, exact; requires zero constant term for k >= 1."""
        if k < 0:
            raise ValueError("negative power")
        result = ExpSeries.one(self.order)
        if k == 0:
            return result
        if self.coeffs[0]:
            raise ValueError("pow_over_factorial needs a zero constant term")
        for j in range(1, k + 1):
            result = (result * self).divexact_int(j)
        return result

    def exp(self) -> ExpSeries:
        """exp of a series with zero constant term, truncated exactly.

        Computed as sum_k self^k/k!; each step divides by k and the
        division must come out exact (it always does for integer EGFs,
        and ExactnessError fires if it ever would not).
        """
        if self.coeffs[0]:
            raise ValueError("exp of a series with nonzero constant term")
        total = ExpSeries.one(self.order)
        power = ExpSeries.one(self.order)
        for k in range(1, self.order + 1):
            power = (power * self).divexact_int(k)
            total = total + power
        return total

    def compose_outer(self, outer: Sequence[IntPoly | int]) -> ExpSeries:
        """sum_k g_k self^k / k! for the given outer coefficients g_k.

        The inner series must have zero constant term; g_0 participates
        as a plain constant, so the caller decides whether to include it.
        """
        if self.coeffs[0]:
            raise ValueError("composition inner series must have zero constant term")
        gs = [g if isinstance(g, IntPoly) else IntPoly((g,)) for g in outer]
        total = ExpSeries(self.order, (gs[0],) if gs else ())
        power = ExpSeries.one(self.order)
        for k in range(1, min(len(gs) - 1, self.order) + 1):
            power = (power * self).divexact_int(k)
            total = total + power.scale(gs[k])
        return total

    def map_coeffs(self, fn) -> ExpSeries:
        return ExpSeries(self.order, [fn(c) for c in self.coeffs])

    def __repr__(self) -> str:
        body = ", ".join(f"f{n}={c}" for n, c in enumerate(self.coeffs) if c)
        return f"ExpSeries(order={self.order}, {body or '0'})"


def egf_mul(a: ExpSeries, b: ExpSeries) -> ExpSeries:
    return a * b


def egf_exp(a: ExpSeries) -> ExpSeries:
    return a.exp()


def egf_compose(outer_coeffs: Sequence[IntPoly | int], inner: ExpSeries) -> ExpSeries:
    return inner.compose_outer(outer_coeffs)


def extract(series: ExpSeries, i: int, n: int) -> int:
    return series.extract(i, n)
