"""Combinatorial engine for iterated blow-ups of subvariety arrangements.

An arrangement is captured purely numerically: strata with dimensions,
a containment poset closed under pairwise meets, and a distinguished
building set whose minimal elements over each stratum multiply out its
codimension.  That is exactly the data the additive decomposition of
the blow-up compactification depends on.

Two routes produce the decomposition: `decompose` applies the closed
formula (one summand per nested subset of the building set and per
admissible weight vector), while `decompose_iterative` replays the
blow-ups one center at a time in any inclusion-compatible order and
must land on the same answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import CrossCheckError, ValidationError
from .nests import enumerate_partitions
from .polynomials import IntPoly, twist_range_poly


@dataclass
class Arrangement:
    ambient: str
    ambient_dim: int
    dims: dict[str, int]                  # proper strata only
    below: dict[str, frozenset[str]]      # id -> strata contained in it (incl. itself)
    building: tuple[str, ...]
    factors: dict[str, frozenset[str]]
    labels: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self._meet_cache: dict[tuple[str, str], str | None] = {}
        self._nest_cache: dict[frozenset[str], bool] = {}

    # -- poset helpers ---------------------------------------------------

    def dim(self, s: str) -> int:
        return self.ambient_dim if s == self.ambient else self.dims[s]

    def contains(self, a: str, b: str) -> bool:
        """True when stratum a contains stratum b."""
        if a == self.ambient:
            return True
        if b == self.ambient:
            return False
        return b in self.below[a]

    def meet_pair(self, a: str, b: str) -> str | None:
        """Intersection of two strata: a stratum id, or None when disjoint."""
        if a == self.ambient:
            return b
        if b == self.ambient:
            return a
        if (a, b) in self._meet_cache:
            return self._meet_cache[(a, b)]
        common = self.below[a] & self.below[b]
        result: str | None
        if not common:
            result = None
        else:
            maximal = [c for c in common
                       if not any(e != c and c in self.below[e] for e in common)]
            if len(maximal) != 1:
                raise ValidationError(
                    f"intersection of {a!r} and {b!r} is ambiguous between {sorted(maximal)}")
            result = maximal[0]
        self._meet_cache[(a, b)] = result
        self._meet_cache[(b, a)] = result
        return result

    def meet_many(self, ids) -> str | None:
        acc = self.ambient
        for s in ids:
            acc = self.meet_pair(acc, s)
            if acc is None:
                return None
        return acc

    def compatible_order(self) -> list[str]:
        """Building set sorted so contained elements come first."""
        return sorted(self.building, key=lambda g: (self.dims[g], g))

    # -- nests -----------------------------------------------------------

    def is_nest(self, t: frozenset[str]) -> bool:
        """Recursive test: minimal members are the factor set of their
        meet, and each strict upward slice is again nested."""
        if not t:
            return True
        cached = self._nest_cache.get(t)
        if cached is not None:
            return cached
        minimal = [g for g in t if not any(h != g and self.contains(g, h) for h in t)]
        ok = False
        m = self.meet_many(minimal)
        if m is not None and m != self.ambient and self.factors[m] == frozenset(minimal):
            ok = True
            for a in minimal:
                upper = frozenset(h for h in t if h != a and self.contains(h, a))
                if upper and not self.is_nest(upper):
                    ok = False
                    break
        self._nest_cache[t] = ok
        return ok

    def r_in_nest(self, g: str, t) -> int:
        """Rank of the step that introduces g relative to the members of t
        strictly containing it (the whole space when there are none)."""
        above = [h for h in t if h != g and self.contains(h, g)]
        if above:
            m = self.meet_many(above)
            if m is None:
                raise CrossCheckError(f"members above {g!r} have empty intersection")
            amb_dim = self.dim(m)
        else:
            amb_dim = self.ambient_dim
        return amb_dim - self.dims[g]

    def to_document(self) -> dict:
        strata = []
        for s in sorted(self.dims, key=lambda s: (-self.dims[s], s)):
            parents = sorted(t for t in self.dims if t != s and self.contains(t, s))
            strata.append({"id": s, "dim": self.dims[s], "contained_in": parents})
        doc = {
            "ambient": {"id": self.ambient, "dim": self.ambient_dim},
            "strata": strata,
            "building": sorted(self.building),
            "factors": {s: sorted(self.factors[s]) for s in sorted(self.factors)},
        }
        if self.labels:
            doc["labels"] = {s: self.labels[s] for s in sorted(self.labels)}
        return doc


def _transitive_closure(parents: dict[str, set[str]]) -> dict[str, set[str]]:
    closure: dict[str, set[str]] = {}

    def visit(s: str, trail: tuple[str, ...]) -> set[str]:
        if s in trail:
            raise ValidationError(f"containment cycle through {s!r}")
        if s in closure:
            return closure[s]
        acc = set(parents[s])
        for p in parents[s]:
            acc |= visit(p, trail + (s,))
        closure[s] = acc
        return acc

    for s in parents:
        visit(s, ())
    return closure


def load_arrangement(document: dict) -> Arrangement:
    """Parse and validate an arrangement document.

    Containment may be given as any DAG (a transitive reduction works);
    the closure is computed here.  Factors are recomputed from the order
    and, when also supplied in the document, compared against it.
    """
    try:
        ambient = str(document["ambient"]["id"])
        ambient_dim = int(document["ambient"]["dim"])
        strata_records = document.get("strata", [])
        building = [str(b) for b in document.get("building", [])]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed arrangement document: {exc}") from exc

    dims: dict[str, int] = {}
    parents: dict[str, set[str]] = {}
    for rec in strata_records:
        sid = str(rec["id"])
        if sid == ambient or sid in dims:
            raise ValidationError(f"duplicate stratum id {sid!r}")
        dims[sid] = int(rec["dim"])
        parents[sid] = {str(p) for p in rec.get("contained_in", ())}
    for sid, ps in parents.items():
        ps.discard(ambient)
        unknown = ps - set(dims)
        if unknown:
            raise ValidationError(f"stratum {sid!r} contained in unknown ids {sorted(unknown)}")
    for b in building:
        if b not in dims:
            raise ValidationError(f"building id {b!r} is not a stratum")
    if len(set(building)) != len(building):
        raise ValidationError("duplicate ids in building set")

    up = _transitive_closure(parents)
    below: dict[str, frozenset[str]] = {
        s: frozenset([s] + [t for t in dims if s in up[t]]) for s in dims
    }

    for s, ups in up.items():
        if dims[s] >= ambient_dim:
            raise ValidationError(f"stratum {s!r} has dim {dims[s]} not below ambient {ambient_dim}")
        for t in ups:
            if dims[s] >= dims[t]:
                raise ValidationError(
                    f"dims must strictly decrease: {s!r} (dim {dims[s]}) inside {t!r} (dim {dims[t]})")

    arr = Arrangement(ambient=ambient, ambient_dim=ambient_dim, dims=dims,
                      below=below, building=tuple(sorted(building)), factors={},
                      labels=dict(document.get("labels", {})))

    ids = sorted(dims)
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            arr.meet_pair(a, b)   # raises on ambiguity

    declared = document.get("factors") or {}
    for s in ids:
        cands = [g for g in arr.building if arr.contains(g, s)]
        minimal = frozenset(g for g in cands
                            if not any(h != g and arr.contains(g, h) for h in cands))
        arr.factors[s] = minimal
        if s in declared and frozenset(map(str, declared[s])) != minimal:
            raise ValidationError(
                f"declared factors of {s!r} are {sorted(declared[s])}, computed {sorted(minimal)}")
        codim_sum = sum(ambient_dim - dims[g] for g in minimal)
        if codim_sum != ambient_dim - dims[s]:
            raise ValidationError(
                f"factors of {s!r} have total codim {codim_sum}, stratum has {ambient_dim - dims[s]}")
        if arr.meet_many(minimal) != s:
            raise ValidationError(f"factors of {s!r} do not intersect to it")
    return arr


def blowup_arrangement(ambient_dim: int, center_dim: int,
                       ambient: str = "Y", center: str = "V") -> Arrangement:
    """Single-center arrangement: one subvariety to blow up."""
    return load_arrangement({
        "ambient": {"id": ambient, "dim": ambient_dim},
        "strata": [{"id": center, "dim": center_dim, "contained_in": []}],
        "building": [center],
    })


def chain_arrangement(ambient_dim: int, dims: Sequence[int], ambient: str = "Y") -> Arrangement:
    """A flag of nested centers G1 in G2 in ... (dims given inner first)."""
    names = [f"G{i + 1}" for i in range(len(dims))]
    strata = []
    for i, (name, dm) in enumerate(zip(names, dims)):
        strata.append({"id": name, "dim": dm, "contained_in": names[i + 1:]})
    return load_arrangement({
        "ambient": {"id": ambient, "dim": ambient_dim},
        "strata": strata,
        "building": names,
    })


def _partition_id(nontrivial: Sequence[tuple[int, ...]], wide: bool) -> str:
    sep = "." if wide else ""
    return "D" + "|".join(sep.join(map(str, block)) for block in nontrivial)


def fm_arrangement(n: int, d: int) -> Arrangement:
    """Diagonal arrangement of the n-th cartesian power of a d-fold.

    Strata are the partition diagonals with dimension d times the block
    count; the building set is the diagonals of single subsets of size
    at least two; containment is refinement.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if d < 1:
        raise ValueError("d must be positive")
    wide = n > 9
    parts: list[tuple[tuple[tuple[int, ...], ...], str]] = []
    for partition in enumerate_partitions(n):
        nontrivial = tuple(sorted(tuple(sorted(b)) for b in partition if len(b) >= 2))
        if not nontrivial:
            continue
        parts.append((nontrivial, _partition_id(nontrivial, wide)))

    def refines(fine, coarse) -> bool:
        # every block of `fine` lies inside a block of `coarse`
        return all(any(set(fb) <= set(cb) for cb in coarse) for fb in fine)

    strata = []
    labels = {}
    for nontrivial, sid in parts:
        merged = sum(len(b) - 1 for b in nontrivial)
        k = n - merged
        parents = [other_id for other, other_id in parts
                   if other_id != sid and refines(other, nontrivial)]
        strata.append({"id": sid, "dim": d * k, "contained_in": parents})
        labels[sid] = f"X^{k}"
    building = [sid for nontrivial, sid in parts if len(nontrivial) == 1]
    return load_arrangement({
        "ambient": {"id": f"X^{n}", "dim": d * n},
        "strata": strata,
        "building": building,
        "labels": {**labels, f"X^{n}": f"X^{n}"},
    })


def enumerate_g_nests(arr: Arrangement) -> Iterator[frozenset[str]]:
    """Every nonempty nested subset of the building set, exactly once.

    Built incrementally: members are added in decreasing dimension, so
    each nest is reached from the nest of its higher members.  The empty
    set is not emitted; it corresponds to the untouched ambient summand.
    """
    order = arr.compatible_order()
    nests: list[frozenset[str]] = [frozenset()]
    for g in reversed(order):
        for t in list(nests):
            cand = t | {g}
            if arr.is_nest(cand):
                nests.append(cand)
    yield from sorted((t for t in nests if t), key=lambda t: (len(t), tuple(sorted(t))))


def weight_ranges(arr: Arrangement, t: frozenset[str]) -> dict[str, int]:
    """Map member -> rank r of its step inside the nest t."""
    if not arr.is_nest(t):
        raise ValueError("weight ranges only make sense for a nest")
    return {g: arr.r_in_nest(g, t) for g in t}


@dataclass(frozen=True)
class Decomposition:
    """Aggregated summands (stratum, twist) -> multiplicity."""

    ambient: str
    entries: dict[tuple[str, int], int]
    dims: dict[str, int]

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.ambient == other.ambient and self.entries == other.entries

    def multiplicity(self, stratum: str, twist: int) -> int:
        return self.entries.get((stratum, twist), 0)

    def sorted_summands(self) -> list[tuple[str, int, int]]:
        return [(s, i, self.entries[(s, i)])
                for s, i in sorted(self.entries, key=lambda si: (-self.dims[si[0]], si[0], si[1]))]

    def by_dimension(self) -> dict[tuple[int, int], int]:
        """Aggregate strata with equal dimension: (dim, twist) -> count."""
        out: dict[tuple[int, int], int] = {}
        for (s, i), m in self.entries.items():
            key = (self.dims[s], i)
            out[key] = out.get(key, 0) + m
        return out

    def total_summands(self) -> int:
        return sum(self.entries.values())

    def to_document(self, labels: dict[str, str] | None = None) -> dict:
        labels = labels or {}
        return {
            "ambient": self.ambient,
            "summands": [
                {"stratum": s, "label": labels.get(s, s), "dim": self.dims[s],
                 "twist": i, "mult": m}
                for s, i, m in self.sorted_summands()
            ],
        }


def decompose(arr: Arrangement) -> Decomposition:
    """Closed-form decomposition: the ambient summand plus, per nest and
    per admissible weight vector, one copy of the nest's intersection
    twisted by the vector's total."""
    entries: dict[tuple[str, int], int] = {(arr.ambient, 0): 1}
    dims = {arr.ambient: arr.ambient_dim}
    for t in enumerate_g_nests(arr):
        poly = IntPoly.one()
        for g in t:
            poly = poly * twist_range_poly(arr.r_in_nest(g, t))
            if not poly:
                break
        if not poly:
            continue
        stratum = arr.meet_many(t)
        assert stratum is not None
        dims[stratum] = arr.dim(stratum)
        for i, c in poly.terms():
            key = (stratum, i)
            entries[key] = entries.get(key, 0) + c
    return Decomposition(arr.ambient, entries, dims)


def decompose_iterative(arr: Arrangement, order: Sequence[str]) -> Decomposition:
    """Replay the blow-ups in the given inclusion-compatible order.

    The running state maps each nest formed so far to the polynomial of
    its accumulated twists; processing a center extends every nest it
    stays nested with, using the rank of the step at that moment.  The
    result must equal the closed form, else CrossCheckError.
    """
    order = list(order)
    if sorted(order) != sorted(arr.building):
        raise ValidationError("order must list every building element exactly once")
    for i, gi in enumerate(order):
        for gj in order[i + 1:]:
            if gi != gj and arr.contains(gi, gj):
                raise ValidationError(
                    f"order not inclusion-compatible: {gj!r} is inside {gi!r} but comes later")

    state: dict[frozenset[str], IntPoly] = {frozenset(): IntPoly.one()}
    for g in reversed(order):
        for t, poly in list(state.items()):
            cand = t | {g}
            if not arr.is_nest(cand):
                continue
            box = twist_range_poly(arr.r_in_nest(g, t))
            if not box:
                continue
            assert cand not in state
            state[cand] = box * poly

    entries: dict[tuple[str, int], int] = {(arr.ambient, 0): 1}
    dims = {arr.ambient: arr.ambient_dim}
    for t, poly in state.items():
        if not t:
            continue
        stratum = arr.meet_many(t)
        assert stratum is not None
        dims[stratum] = arr.dim(stratum)
        for i, c in poly.terms():
            key = (stratum, i)
            entries[key] = entries.get(key, 0) + c
    result = Decomposition(arr.ambient, entries, dims)

    closed = decompose(arr)
    if result != closed:
        cells = sorted(set(result.entries) | set(closed.entries))
        diff = [(c, closed.entries.get(c, 0), result.entries.get(c, 0))
                for c in cells if closed.entries.get(c, 0) != result.entries.get(c, 0)]
        raise CrossCheckError(
            "iterative route disagrees with closed form: "
            + "; ".join(f"{c}: closed={a} iterative={b}" for c, a, b in diff[:12]))
    return result


def admissible_orders(arr: Arrangement) -> Iterator[tuple[str, ...]]:
    """All inclusion-compatible orders of the building set, lexicographically."""
    building = sorted(arr.building)
    prereq = {g: frozenset(h for h in building if h != g and arr.contains(g, h))
              for g in building}

    def rec(placed: tuple[str, ...], remaining: frozenset[str]) -> Iterator[tuple[str, ...]]:
        if not remaining:
            yield placed
            return
        placed_set = frozenset(placed)
        for g in sorted(remaining):
            if prereq[g] <= placed_set:
                yield from rec(placed + (g,), remaining - {g})

    yield from rec((), frozenset(building))


def sample_admissible_orders(arr: Arrangement, count: int, seed: int = 0) -> list[tuple[str, ...]]:
    """Deterministic sample of distinct inclusion-compatible orders."""
    building = sorted(arr.building)
    prereq = {g: frozenset(h for h in building if h != g and arr.contains(g, h))
              for g in building}
    rng = random.Random(seed)
    seen: dict[tuple[str, ...], None] = {}
    attempts = 0
    while len(seen) < count and attempts < count * 40:
        attempts += 1
        placed: list[str] = []
        placed_set: set[str] = set()
        remaining = set(building)
        while remaining:
            ready = sorted(g for g in remaining if prereq[g] <= placed_set)
            pick = rng.choice(ready)
            placed.append(pick)
            placed_set.add(pick)
            remaining.discard(pick)
        seen[tuple(placed)] = None
    return list(seen)
