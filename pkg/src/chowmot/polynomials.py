"""Exact univariate polynomial arithmetic over the integers.

`IntPoly` is a dense polynomial with arbitrary-precision integer
coefficients, stored as a tuple indexed by exponent with no trailing
zeros.  All arithmetic is exact; the two division helpers raise
:class:`~chowmot.errors.ExactnessError` instead of rounding, which turns
the integrality facts the rest of the package relies on into runtime
checks.

`sigma(j, d)` builds the geometric block ``x + x^2 + ... + x^(d*j-1)``
that weights an internal node with j+1 children over a d-dimensional
base; `SigmaPoly` keeps the same quantities symbolic so a coefficient
family can be displayed or re-specialised without recomputation.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Iterable, Iterator

from .errors import ExactnessError


class IntPoly:
    """Polynomial in one variable with integer coefficients.

    Instances are immutable and hashable; ``coeffs[i]`` is the
    coefficient of ``x**i`` and the highest stored coefficient is
    nonzero (the zero polynomial stores an empty tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def zero(cls) -> IntPoly:
        return cls()

    @classmethod
    def one(cls) -> IntPoly:
        return cls((1,))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> IntPoly:
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        return cls((0,) * exponent + (coefficient,))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        if i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def terms(self) -> Iterator[tuple[int, int]]:
        """Yield (exponent, coefficient) for the nonzero terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield i, c

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> IntPoly:
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> IntPoly:
        return (-self) + other

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            if other == 0:
                return IntPoly()
            return IntPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> IntPoly:
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def divexact_int(self, k: int) -> IntPoly:
        """Divide every coefficient by the integer k, exactly."""
        if k == 0:
            raise ZeroDivisionError("division of polynomial by zero")
        out = []
        for c in self.coeffs:
            q, r = divmod(c, k)
            if r:
                raise ExactnessError(f"coefficient {c} not divisible by {k}")
            out.append(q)
        return IntPoly(out)

    def divexact(self, divisor: IntPoly) -> IntPoly:
        """Exact polynomial division; raises if the remainder is nonzero."""
        if not divisor:
            raise ZeroDivisionError("division of polynomial by zero polynomial")
        rem = list(self.coeffs)
        dc = divisor.coeffs
        lead = dc[-1]
        dd = len(dc) - 1
        if len(rem) - 1 < dd:
            if any(rem):
                raise ExactnessError("degree of dividend below divisor with nonzero remainder")
            return IntPoly()
        qlen = len(rem) - dd
        quot = [0] * qlen
        for pos in range(qlen - 1, -1, -1):
            c = rem[pos + dd]
            q, r = divmod(c, lead)
            if r:
                raise ExactnessError(f"leading coefficient {c} not divisible by {lead}")
            quot[pos] = q
            if q:
                for j, d in enumerate(dc):
                    rem[pos + j] -= q * d
        if any(rem):
            raise ExactnessError("nonzero remainder in polynomial division")
        return IntPoly(quot)

    def __call__(self, value: int) -> int:
        """Evaluate at an integer by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def is_palindromic(self, lo: int, hi: int) -> bool:
        """True when coeff(lo + i) == coeff(hi - i) across the window."""
        if hi < lo:
            return not self
        return all(self.coeff(lo + i) == self.coeff(hi - i) for i in range(hi - lo + 1))

    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in self.terms():
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}{var}" if i == 1 else f"{mag}{var}^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r})"


def sigma(j: int, d: int) -> IntPoly:
    """The weight-range polynomial ``x + x^2 + ... + x^(d*j - 1)``.

    By convention sigma(0, d) == 0, and the sum is empty (hence 0)
    whenever d*j - 1 < 1, e.g. sigma(1, 1) == 0.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    if d < 1:
        raise ValueError("d must be positive")
    if j == 0 or d * j - 1 < 1:
        return IntPoly.zero()
    return IntPoly((0,) + (1,) * (d * j - 1))


def twist_range_poly(r: int) -> IntPoly:
    """``x + x^2 + ... + x^(r-1)``: one term per admissible twist below r."""
    if r <= 1:
        return IntPoly.zero()
    return IntPoly((0,) + (1,) * (r - 1))


class SigmaPoly:
    """Integer polynomial in the symbols s1, s2, ... (the sigma blocks).

    Keys are sorted tuples of subscripts, so ``{(1, 1, 2): 3}`` means
    ``3*s1^2*s2``.  Used to carry coefficient families symbolically, for
    display and for re-specialising the subscripts to concrete
    polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, ...], int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                clean[tuple(sorted(mono))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SigmaPoly is immutable")

    @classmethod
    def zero(cls) -> SigmaPoly:
        return cls()

    @classmethod
    def one(cls) -> SigmaPoly:
        return cls({(): 1})

    @classmethod
    def symbol(cls, j: int) -> SigmaPoly:
        if j == 0:
            return cls.zero()
        return cls({(j,): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SigmaPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: SigmaPoly) -> SigmaPoly:
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return SigmaPoly(out)

    def __mul__(self, other) -> SigmaPoly:
        if isinstance(other, int):
            return SigmaPoly({m: c * other for m, c in self.terms.items()})
        out: dict[tuple[int, ...], int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, 0) + c1 * c2
        return SigmaPoly(out)

    __rmul__ = __mul__

    def substitute(self, value_of: Callable[[int], IntPoly]) -> IntPoly:
        """Replace each subscript j by value_of(j) and expand."""
        total = IntPoly.zero()
        for mono, c in self.terms.items():
            term = IntPoly.one() * c
            for j in mono:
                term = term * value_of(j)
            total = total + term
        return total

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            factors = []
            for j, e in sorted(Counter(mono).items()):
                factors.append(f"s{j}" if e == 1 else f"s{j}^{e}")
            body = "*".join(factors) if factors else "1"
            if abs(c) != 1 or not factors:
                body = f"{abs(c)}*{body}" if factors else str(abs(c))
            parts.append(("- " if c < 0 else ("+ " if parts else "")) + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"SigmaPoly({self.terms!r})"
