"""Formal multivariate polynomials and the twisted Chern-class identity.

`FormalPoly` is a sparse exact-integer polynomial in named variables,
just enough ring arithmetic to expand symmetric-function identities.
`twisted_chern_identity` checks, purely formally, the two facts that a
rank-r bundle twisted by a line bundle satisfies: the root-product
expansion of the total class, and its specialisation where the bundle
is a sum of copies of a d-dimensional tangent bundle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import CrossCheckError


class FormalPoly:
    """Sparse integer polynomial over a fixed tuple of variable names."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: dict[tuple[int, ...], int] | None = None):
        object.__setattr__(self, "vars", tuple(vars))
        nv = len(self.vars)
        clean = {}
        for expo, c in (terms or {}).items():
            if len(expo) != nv:
                raise ValueError("exponent tuple length does not match variables")
            if c:
                clean[tuple(expo)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FormalPoly is immutable")

    @classmethod
    def const(cls, vars: Sequence[str], c: int) -> FormalPoly:
        nv = len(tuple(vars))
        return cls(vars, {(0,) * nv: c} if c else {})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> FormalPoly:
        vars = tuple(vars)
        expo = [0] * len(vars)
        expo[vars.index(name)] = 1
        return cls(vars, {tuple(expo): 1})

    def _coerce(self, other) -> FormalPoly:
        if isinstance(other, int):
            return FormalPoly.const(self.vars, other)
        if isinstance(other, FormalPoly):
            if other.vars != self.vars:
                raise ValueError("mixing polynomials over different variables")
            return other
        raise TypeError(f"cannot combine FormalPoly with {type(other)!r}")

    def __add__(self, other) -> FormalPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return FormalPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> FormalPoly:
        return FormalPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> FormalPoly:
        return self + (-self._coerce(other))

    def __mul__(self, other) -> FormalPoly:
        other = self._coerce(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return FormalPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> FormalPoly:
        if n < 0:
            raise ValueError("negative power")
        result = FormalPoly.const(self.vars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def substitute(self, values: dict[str, int]) -> int:
        """Evaluate at integer values, one per variable."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for name, k in zip(self.vars, e):
                term *= values[name] ** k
            total += term
        return total

    def __repr__(self) -> str:
        return f"FormalPoly(vars={self.vars!r}, {len(self.terms)} terms)"


def elementary_symmetric(roots: Sequence[FormalPoly], i: int) -> FormalPoly:
    """e_i of the given ring elements (sum of i-fold products)."""
    if not roots:
        raise ValueError("need at least one root")
    if i == 0:
        return FormalPoly.const(roots[0].vars, 1)
    total = FormalPoly.const(roots[0].vars, 0)
    for combo in combinations(range(len(roots)), i):
        prod = FormalPoly.const(roots[0].vars, 1)
        for idx in combo:
            prod = prod * roots[idx]
        total = total + prod
    return total


@dataclass(frozen=True)
class ChernWitness:
    """Record of which instances of the identity were expanded and matched."""

    rank: int
    dim_cap: int
    root_identity_checked: bool
    zeta_powers_checked: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.root_identity_checked


def twisted_chern_identity(r: int, d: int = 2) -> ChernWitness:
    """Verify the twist expansion of a total Chern class, exactly.

    First expands, in formal roots a_1..a_r and a twist variable x,

        prod_j (1 + a_j + x)  ==  sum_i e_i(a) * (1 + x)^(r - i)

    then specialises to a bundle that is (c-1) copies of a rank-d
    bundle with roots b_1..b_d: the same expansion of the twisted total
    class must equal zeta(x)^(c-1) with
    zeta(x) = sum_i e_i(b) (1+x)^(d-i), for small c.

    Raises CrossCheckError on any mismatch (that would mean a bug in the
    polynomial arithmetic, not bad input).
    """
    if r < 1:
        raise ValueError("rank must be at least 1")
    if d < 1:
        raise ValueError("dimension cap must be at least 1")

    names = ("x",) + tuple(f"a{j}" for j in range(1, r + 1))
    x = FormalPoly.var(names, "x")
    roots = [FormalPoly.var(names, f"a{j}") for j in range(1, r + 1)]
    one = FormalPoly.const(names, 1)

    lhs = one
    for a in roots:
        lhs = lhs * (one + a + x)
    rhs = FormalPoly.const(names, 0)
    for i in range(r + 1):
        rhs = rhs + elementary_symmetric(roots, i) * (one + x) ** (r - i)
    if lhs != rhs:
        raise CrossCheckError(f"root-product expansion failed at rank {r}")

    powers = []
    for c in (2, 3):
        bnames = ("x",) + tuple(f"b{j}" for j in range(1, d + 1))
        bx = FormalPoly.var(bnames, "x")
        bone = FormalPoly.const(bnames, 1)
        broots = [FormalPoly.var(bnames, f"b{j}") for j in range(1, d + 1)]
        repeated = broots * (c - 1)
        rank = d * (c - 1)
        twisted = FormalPoly.const(bnames, 0)
        for k in range(rank + 1):
            twisted = twisted + elementary_symmetric(repeated, k) * (bone + bx) ** (rank - k)
        zeta = FormalPoly.const(bnames, 0)
        for i in range(d + 1):
            zeta = zeta + elementary_symmetric(broots, i) * (bone + bx) ** (d - i)
        if twisted != zeta ** (c - 1):
            raise CrossCheckError(
                f"twisted class of {c - 1} tangent copies does not match zeta^{c - 1} at d={d}"
            )
        powers.append(c - 1)

    return ChernWitness(rank=r, dim_cap=d, root_identity_checked=True,
                        zeta_powers_checked=tuple(powers))
