"""Unlabeled weighted forests and their labeled counting.

A tree is encoded as a nested tuple ``(weight, children)``: leaves are
``(0, ())`` and internal nodes carry a positive weight and a sorted
tuple of at least two child encodings.  A forest is a sorted tuple of
tree encodings.  Two forests are equal exactly when their encodings
are, which is what "unlabeled" means here.

`forest_of_nest` erases the leaf labels of a weighted nest;
`labelings_count` inverts that count, giving how many labeled
(nest, weights) pairs collapse onto a given canonical forest.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Iterator

from .errors import CapExceededError
from .nests import Nest, bits_of, nest_cap, tree_structure

Tree = tuple  # (weight, children); leaf == (0, ())

LEAF: Tree = (0, ())


def make_node(weight: int, children) -> Tree:
    children = tuple(sorted(children))
    if len(children) < 2:
        raise ValueError("internal nodes need at least two children")
    if weight < 1:
        raise ValueError("internal weights are positive")
    return (weight, children)


def tree_leaves(tree: Tree) -> int:
    if not tree[1]:
        return 1
    return sum(tree_leaves(c) for c in tree[1])


def tree_weight(tree: Tree) -> int:
    return tree[0] + sum(tree_weight(c) for c in tree[1])


def _tree_obj(tree: Tree):
    return [tree[0], [_tree_obj(c) for c in tree[1]]]


@dataclass(frozen=True)
class ForestType:
    """Multiset of multiplicities of the distinct trees, plus total weight."""

    multiplicities: tuple[int, ...]
    total_weight: int


@dataclass(frozen=True)
class WeightedForest:
    trees: tuple[Tree, ...]

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(sorted(self.trees)))

    @property
    def n(self) -> int:
        return sum(tree_leaves(t) for t in self.trees)

    @property
    def total_weight(self) -> int:
        return sum(tree_weight(t) for t in self.trees)

    def type_multiplicities(self) -> tuple[int, ...]:
        """Sorted multiset of how often each distinct tree occurs."""
        return tuple(sorted(Counter(self.trees).values()))

    def forest_type(self) -> ForestType:
        return ForestType(self.type_multiplicities(), self.total_weight)

    def to_obj(self):
        """JSON-friendly nested-list encoding, deterministic."""
        return [_tree_obj(t) for t in self.trees]

    def __str__(self) -> str:
        def fmt(t: Tree) -> str:
            if not t[1]:
                return "*"
            return f"({t[0]}:{' '.join(fmt(c) for c in t[1])})"

        return "[" + " + ".join(fmt(t) for t in self.trees) + "]"


def forest_of_nest(nest: Nest, mu: dict[int, int]) -> WeightedForest:
    """Erase the leaf labels of a nest weighted by mu.

    mu must assign a positive weight to every block of size >= 2; the
    result only depends on the orbit of (nest, mu) under relabeling.
    """
    internal = set(nest.internal)
    if set(mu) != internal:
        raise ValueError("weights must be given exactly on the internal blocks")
    for b, w in mu.items():
        if w < 1:
            raise ValueError(f"weight of block {bits_of(b)} must be positive")
    maximal, children = tree_structure(nest.blocks)

    def build(block: int) -> Tree:
        if block.bit_count() == 1:
            return LEAF
        return make_node(mu[block], tuple(build(c) for c in children[block]))

    return WeightedForest(tuple(sorted(build(b) for b in maximal)))


def _tree_labelings(tree: Tree) -> int:
    if not tree[1]:
        return 1
    total = tree_leaves(tree)
    ways = factorial(total)
    for child in tree[1]:
        ways //= factorial(tree_leaves(child))
    for child in tree[1]:
        ways *= _tree_labelings(child)
    for mult in Counter(tree[1]).values():
        q, r = divmod(ways, factorial(mult))
        assert r == 0
        ways = q
    return ways


def labelings_count(forest: WeightedForest, n: int) -> int:
    """Number of labeled (nest, weights) pairs with this canonical image.

    Distributes the n leaf labels over the trees and recursively within
    each tree, dividing by the automorphisms that permute identical
    sibling subtrees (and identical whole trees).
    """
    if forest.n != n:
        raise ValueError(f"forest has {forest.n} leaves, expected {n}")
    ways = factorial(n)
    for tree in forest.trees:
        ways //= factorial(tree_leaves(tree))
        ways *= _tree_labelings(tree)
    for mult in Counter(forest.trees).values():
        q, r = divmod(ways, factorial(mult))
        assert r == 0
        ways = q
    return ways


def weighted_trees(leaves: int, d: int) -> list[Tree]:
    """All canonical weighted trees with the given leaf count.

    Weights at a node with c children run over 1 .. (c-1)*d - 1; a shape
    whose range is empty at some node produces nothing.
    """
    return _weighted_trees(leaves, d)


_TREE_CACHE: dict[tuple[int, int], list[Tree]] = {}


def _weighted_trees(leaves: int, d: int) -> list[Tree]:
    key = (leaves, d)
    if key in _TREE_CACHE:
        return _TREE_CACHE[key]
    if leaves == 1:
        out = [LEAF]
    else:
        pool: list[Tree] = []
        for sub in range(1, leaves):
            pool.extend(_weighted_trees(sub, d))
        pool.sort()
        sizes = [tree_leaves(t) for t in pool]
        out = []

        def pick(remaining: int, start: int, acc: tuple[Tree, ...]):
            if remaining == 0:
                if len(acc) >= 2:
                    top = d * (len(acc) - 1) - 1
                    for w in range(1, top + 1):
                        out.append((w, acc))
                return
            for idx in range(start, len(pool)):
                if sizes[idx] <= remaining:
                    pick(remaining - sizes[idx], idx, acc + (pool[idx],))

        pick(leaves, 0, ())
        out.sort()
    _TREE_CACHE[key] = out
    return out


def enumerate_weighted_forests(n: int, d: int) -> Iterator[WeightedForest]:
    """Every canonical weighted forest with n leaves, exactly once."""
    if not 1 <= n <= nest_cap():
        raise CapExceededError(f"forest enumeration capped at n <= {nest_cap()}, got {n}")
    if d < 1:
        raise ValueError("d must be positive")
    pool: list[Tree] = []
    for sub in range(1, n + 1):
        pool.extend(_weighted_trees(sub, d))
    pool.sort()
    sizes = [tree_leaves(t) for t in pool]

    def pick(remaining: int, start: int, acc: tuple[Tree, ...]) -> Iterator[WeightedForest]:
        if remaining == 0:
            yield WeightedForest(acc)
            return
        for idx in range(start, len(pool)):
            if sizes[idx] <= remaining:
                yield from pick(remaining - sizes[idx], idx, acc + (pool[idx],))

    yield from pick(n, 0, ())
