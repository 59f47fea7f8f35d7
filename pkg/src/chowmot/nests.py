"""Set partitions and nested block families of {1..n}.

A nest is a family of subsets of {1..n} containing every singleton in
which no two members overlap partially; it is the same data as a forest
whose leaves are the singletons and whose internal nodes each have at
least two children.  Enumeration is structural (choose the partition
into maximal blocks, recurse into each block) so no candidate filtering
is ever needed, and the order of the stream is deterministic.

Sizes explode quickly, so the enumerators refuse ground sets above a
cap; set the environment variable WONDERFUL_CAP_N to raise it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterator, Sequence

from .errors import CapExceededError
from .polynomials import IntPoly, sigma

DEFAULT_NEST_CAP = 9
DEFAULT_PARTITION_CAP = 12

_CAP_ENV = "WONDERFUL_CAP_N"


def nest_cap() -> int:
    value = os.environ.get(_CAP_ENV)
    return int(value) if value else DEFAULT_NEST_CAP


def partition_cap() -> int:
    value = os.environ.get(_CAP_ENV)
    if value:
        return max(int(value), DEFAULT_PARTITION_CAP)
    return DEFAULT_PARTITION_CAP


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def bits_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def partitions_of(elements: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All set partitions of the given elements, blocks in order of first
    appearance (restricted-growth order when elements are sorted)."""
    elements = tuple(elements)
    if not elements:
        yield ()
        return
    blocks: list[list[int]] = []

    def rec(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == len(elements):
            yield tuple(tuple(b) for b in blocks)
            return
        e = elements[i]
        for b in blocks:
            b.append(e)
            yield from rec(i + 1)
            b.pop()
        blocks.append([e])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def enumerate_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Set partitions of {1..n} in restricted-growth-string order."""
    if not 1 <= n <= partition_cap():
        raise CapExceededError(f"partition enumeration capped at n <= {partition_cap()}, got {n}")
    return partitions_of(range(1, n + 1))


def integer_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of the integer n as non-increasing tuples."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class Nest:
    """Canonical nested family: bitmask blocks sorted by (size, value).

    Includes all singleton blocks.  Equality of nests is equality of the
    encodings.
    """

    n: int
    blocks: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks) -> Nest:
        masks = set()
        for b in blocks:
            masks.add(b if isinstance(b, int) else mask_of(b))
        for e in range(n):
            masks.add(1 << e)
        nest = cls(n, tuple(sorted(masks, key=lambda m: (m.bit_count(), m))))
        nest.validate()
        return nest

    def validate(self) -> None:
        full = (1 << self.n) - 1
        for b in self.blocks:
            if b == 0 or b & ~full:
                raise ValueError(f"block {b:#b} outside ground set of size {self.n}")
        got = set(self.blocks)
        if len(got) != len(self.blocks):
            raise ValueError("duplicate blocks")
        for e in range(self.n):
            if (1 << e) not in got:
                raise ValueError(f"missing singleton {{{e + 1}}}")
        bs = self.blocks
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                inter = bs[i] & bs[j]
                if inter and inter != bs[i] and inter != bs[j]:
                    raise ValueError(f"blocks {bits_of(bs[i])} and {bits_of(bs[j])} overlap")

    @property
    def internal(self) -> tuple[int, ...]:
        """Blocks of size at least two, in canonical order."""
        return tuple(b for b in self.blocks if b.bit_count() >= 2)

    def block_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(bits_of(b) for b in self.blocks)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, bits_of(b))) + "}" for b in self.blocks) + "}"


@dataclass(frozen=True, eq=True)
class NestStats:
    """Shape summary: component count, per-block child counts."""

    c: int
    children: dict[int, int]
    internal: tuple[int, ...]


def tree_structure(blocks: tuple[int, ...]) -> tuple[list[int], dict[int, list[int]]]:
    """Maximal blocks and the children of every block.

    The parent of a block is its smallest strict superset among the
    blocks; with all singletons present the children of a block always
    partition it.
    """
    by_size = sorted(blocks, key=lambda m: (m.bit_count(), m))
    children: dict[int, list[int]] = {b: [] for b in blocks}
    maximal: list[int] = []
    for b in by_size:
        parent = None
        for cand in by_size:
            if cand != b and (b & cand) == b:
                if parent is None or (cand & parent) == cand:
                    parent = cand
        if parent is None:
            maximal.append(b)
        else:
            children[parent].append(b)
    return maximal, children


def nest_stats(nest: Nest) -> NestStats:
    maximal, children = tree_structure(nest.blocks)
    counts = {b: len(children[b]) for b in nest.internal}
    return NestStats(c=len(maximal), children=counts, internal=nest.internal)


@lru_cache(maxsize=None)
def _weight_poly_from_counts(child_counts: tuple[int, ...], d: int) -> IntPoly:
    out = IntPoly.one()
    for c in child_counts:
        out = out * sigma(c - 1, d)
        if not out:
            break
    return out


def nest_weight_poly(nest: Nest, d: int) -> IntPoly:
    """Product over internal blocks of sigma(children - 1, d).

    Encodes the distribution of total twist weight over all admissible
    weight vectors of the nest; 1 for the singletons-only nest.
    """
    if d < 1:
        raise ValueError("d must be positive")
    stats = nest_stats(nest)
    counts = tuple(sorted(stats.children[b] for b in stats.internal))
    return _weight_poly_from_counts(counts, d)


def enumerate_weight_vectors(nest: Nest, d: int) -> Iterator[dict[int, int]]:
    """All maps internal block -> weight inside the box [1, d*(c_I-1)-1].

    Yields a single empty map for the singletons-only nest; yields
    nothing when any block's range is empty.
    """
    if d < 1:
        raise ValueError("d must be positive")
    stats = nest_stats(nest)
    internal = stats.internal
    if not internal:
        yield {}
        return
    ranges = [range(1, d * (stats.children[b] - 1)) for b in internal]
    for combo in iproduct(*ranges):
        yield dict(zip(internal, combo))


def _trees(elements: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    # internal blocks of a tree rooted at the full block (len >= 2)
    full = mask_of(elements)
    for parts in partitions_of(elements):
        if len(parts) == 1:
            continue
        big = [p for p in parts if len(p) >= 2]

        def rec(idx: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if idx == len(big):
                yield acc
                return
            for sub in _trees(big[idx]):
                yield from rec(idx + 1, acc + sub)

        yield from rec(0, (full,))


def _forests(elements: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    for parts in partitions_of(elements):
        big = [p for p in parts if len(p) >= 2]

        def rec(idx: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if idx == len(big):
                yield acc
                return
            for sub in _trees(big[idx]):
                yield from rec(idx + 1, acc + sub)

        yield from rec(0, ())


def enumerate_nests(n: int) -> Iterator[Nest]:
    """Every nest of {1..n} exactly once, in a deterministic order."""
    if not 1 <= n <= nest_cap():
        raise CapExceededError(f"nest enumeration capped at n <= {nest_cap()}, got {n}")
    singletons = tuple(1 << e for e in range(n))
    for internal in _forests(tuple(range(1, n + 1))):
        blocks = tuple(sorted(singletons + internal, key=lambda m: (m.bit_count(), m)))
        yield Nest(n, blocks)
