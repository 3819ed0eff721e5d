"""Finite permutations and permutation groups given by generators.

Products compose right to left: ``(p * q)(x) == p(q(x))``.  Groups are
enumerated by breadth-first closure with a hard element cap; every element
list returned here is sorted lexicographically by image table.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

from .errors import DegreeMismatch, DegreeOverflow, GroupTooLarge, NotInvariant

DEFAULT_ELEMENT_CAP = 1_000_000
DEFAULT_MAX_DEGREE = 64

T = TypeVar("T")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image table."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))) or not images:
            raise ValueError(f"not a permutation: {self.images!r}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        p = self.images
        return Permutation(tuple(p[x] for x in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def sign(self) -> int:
        transpositions = sum(len(c) - 1 for c in self.cycles())
        return -1 if transpositions % 2 else 1

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def moved_points(self) -> int:
        return sum(1 for x, y in enumerate(self.images) if x != y)

    def image_of_set(self, points: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[x] for x in points)

    def __repr__(self):
        cycles = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()"
        return f"Permutation{body}[{self.degree}]"


def closure(generators: Iterable[T], identity: T, mul: Callable[[T, T], T],
            cap: int = DEFAULT_ELEMENT_CAP, key: Callable[[T], Hashable] | None = None) -> list[T]:
    """Breadth-first closure of ``generators`` under right multiplication.

    Works for any finite group given by a multiplication.  Raises
    ``GroupTooLarge`` as soon as more than ``cap`` elements are found.
    """
    key = key or (lambda x: x)
    generators = list(generators)
    seen = {key(identity): identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = mul(x, g)
            k = key(y)
            if k not in seen:
                seen[k] = y
                if len(seen) > cap:
                    raise GroupTooLarge(f"closure exceeds cap of {cap} elements")
                queue.append(y)
    return list(seen.values())


def _tuple_closure(gens: list[tuple[int, ...]], degree: int, cap: int) -> list[tuple[int, ...]]:
    # Tuple-level BFS avoids re-validating every intermediate Permutation.
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[i] for i in g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupTooLarge(f"closure exceeds cap of {cap} elements")
                queue.append(y)
    return sorted(seen)


@dataclass(frozen=True, eq=False)
class PermutationGroup:
    """A permutation group of the given degree, described by generators."""

    degree: int
    generators: tuple[Permutation, ...]
    element_cap: int = field(default=DEFAULT_ELEMENT_CAP)

    def __post_init__(self):
        gens = tuple(self.generators)
        if self.degree < 1:
            raise ValueError("degree must be positive")
        for g in gens:
            if g.degree != self.degree:
                raise DegreeMismatch(f"generator {g!r} has degree {g.degree}, group has {self.degree}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_images(cls, images: Sequence[Sequence[int]], degree: int | None = None, **kw) -> PermutationGroup:
        gens = tuple(Permutation(tuple(g)) for g in images)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group with no generators")
            degree = gens[0].degree
        return cls(degree, gens, **kw)

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        tables = _tuple_closure([g.images for g in self.generators], self.degree, self.element_cap)
        return tuple(Permutation(t) for t in tables)

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.element_set

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def is_transitive(self) -> bool:
        return orbit_transitivity(self, range(self.degree))[1]

    def conjugated(self, relabel: Permutation) -> PermutationGroup:
        """The same group with point ``x`` renamed ``relabel(x)``."""
        inv = relabel.inverse()
        return PermutationGroup(self.degree, tuple(relabel * g * inv for g in self.generators),
                                self.element_cap)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g.images) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict, **kw) -> PermutationGroup:
        return cls.from_images(data["generators"], degree=data["degree"], **kw)

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, generators={list(self.generators)!r})"


def load_group(path, **kw) -> PermutationGroup:
    with open(path) as fh:
        return PermutationGroup.from_json(json.load(fh), **kw)


def save_group(group: PermutationGroup, path) -> None:
    with open(path, "w") as fh:
        json.dump(group.to_json(), fh)


def enumerate_group(group: PermutationGroup) -> list[Permutation]:
    """All elements of ``group``, sorted by image table."""
    return list(group.elements)


def generated_order(generators: Sequence[Permutation], degree: int, cap: int = DEFAULT_ELEMENT_CAP) -> int:
    return len(_tuple_closure([g.images for g in generators], degree, cap))


def orbit_transitivity(group: PermutationGroup, points: Iterable[int]) -> tuple[list[frozenset[int]], bool]:
    """Orbits of the generators on an invariant point set.

    Returns ``(orbits, transitive)``.  Raises ``NotInvariant`` if some
    generator moves a point of ``points`` outside the set.
    """
    points = frozenset(points)
    if not points:
        raise ValueError("point set must be nonempty")
    for g in group.generators:
        if not g.image_of_set(points) <= points:
            raise NotInvariant(f"{g!r} does not preserve {sorted(points)}")
    orbits = []
    remaining = set(points)
    while remaining:
        start = min(remaining)
        orbit = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for g in group.generators:
                y = g(x)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        orbits.append(frozenset(orbit))
        remaining -= orbit
    return orbits, len(orbits) == 1


def pointwise_stabilizer(elements: Iterable[Permutation], points: Iterable[int]) -> list[Permutation]:
    points = tuple(points)
    return [g for g in elements if all(g(x) == x for x in points)]


def symmetric(m: int) -> PermutationGroup:
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return PermutationGroup(1, ())
    gens = [Permutation.from_cycles(m, (0, 1))]
    if m > 2:
        gens.append(Permutation.from_cycles(m, tuple(range(m))))
    return PermutationGroup(m, tuple(gens))


def cyclic(m: int) -> PermutationGroup:
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return PermutationGroup(1, ())
    return PermutationGroup(m, (Permutation.from_cycles(m, tuple(range(m))),))


def alternating(m: int) -> PermutationGroup:
    if m < 3:
        return PermutationGroup(m, ())
    gens = tuple(Permutation.from_cycles(m, (0, 1, j)) for j in range(2, m))
    return PermutationGroup(m, gens)


def dihedral(m: int) -> PermutationGroup:
    """Symmetries of the m-gon acting on its vertices (order 2m)."""
    rotation = Permutation.from_cycles(m, tuple(range(m)))
    reflection = Permutation(tuple((-x) % m for x in range(m)))
    return PermutationGroup(m, (rotation, reflection))


def direct_product(*groups: PermutationGroup) -> PermutationGroup:
    """Intransitive direct product acting on the disjoint union of points."""
    degree = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for grp in groups:
        for g in grp.generators:
            images = list(range(degree))
            for x in range(grp.degree):
                images[offset + x] = offset + g(x)
            gens.append(Permutation(tuple(images)))
        offset += grp.degree
    return PermutationGroup(degree, tuple(gens))


def wreath_action(top: PermutationGroup, bottom: PermutationGroup,
                  max_degree: int = DEFAULT_MAX_DEGREE) -> PermutationGroup:
    """Imprimitive action of ``top`` wr ``bottom`` on Y1 x Y2.

    Point ``(y, z)`` is flattened to ``y * |Y2| + z``; the element
    ``(a, (b_y))`` sends ``(y, z)`` to ``(a(y), b_y(z))``.
    """
    n1, n2 = top.degree, bottom.degree
    degree = n1 * n2
    if degree > max_degree:
        raise DegreeOverflow(f"wreath action degree {degree} exceeds {max_degree}")
    gens = []
    for a in top.generators:
        gens.append(Permutation(tuple(a(y) * n2 + z for y in range(n1) for z in range(n2))))
    for b in bottom.generators:
        for y0 in range(n1):
            gens.append(Permutation(tuple(
                y * n2 + (b(z) if y == y0 else z) for y in range(n1) for z in range(n2))))
    return PermutationGroup(degree, tuple(gens))


_STANDARD = {
    "symmetric": symmetric,
    "cyclic": cyclic,
    "alternating": alternating,
    "dihedral": dihedral,
    "wreath_action": wreath_action,
    "direct_product": direct_product,
}


def build_standard_group(kind: str, *args, **kwargs) -> PermutationGroup:
    """Dispatch by name, e.g. ``build_standard_group("symmetric", 5)``."""
    try:
        builder = _STANDARD[kind]
    except KeyError:
        raise ValueError(f"unknown group kind {kind!r}; expected one of {sorted(_STANDARD)}") from None
    return builder(*args, **kwargs)


def generates(group: PermutationGroup, gens: Sequence[Permutation]) -> bool:
    return generated_order(gens, group.degree, group.element_cap) == group.order


def is_minimal_generating_set(group: PermutationGroup, gens: Sequence[Permutation]) -> bool:
    """True iff ``gens`` generates ``group`` and no element can be dropped."""
    gens = list(gens)
    for g in gens:
        if g not in group:
            raise ValueError(f"{g!r} is not an element of the group")
    if not generates(group, gens):
        return False
    return all(not generates(group, gens[:i] + gens[i + 1:]) for i in range(len(gens)))


def minimal_generating_subset(group: PermutationGroup) -> list[Permutation]:
    """Drop redundant generators greedily; the survivors are irredundant."""
    gens = [g for g in group.generators if not g.is_identity()]
    i = 0
    while i < len(gens):
        rest = gens[:i] + gens[i + 1:]
        if generates(group, rest):
            gens = rest
        else:
            i += 1
    return gens


def derived_or_power_subgroup(group: PermutationGroup, which: str, k: int | None = None) -> list[Permutation]:
    """The commutator subgroup (``which="derived"``) or the subgroup
    generated by all k-th powers (``which="power"``), as a sorted list."""
    elements = group.elements
    if which == "derived":
        gens = {a * b * a.inverse() * b.inverse() for a in elements for b in elements}
    elif which == "power":
        if k is None or k < 1:
            raise ValueError("power subgroup needs k >= 1")
        gens = {a ** k for a in elements}
    else:
        raise ValueError(f"unknown subgroup kind {which!r}")
    gens.discard(group.identity())
    tables = _tuple_closure([g.images for g in sorted(gens)], group.degree, group.element_cap)
    return [Permutation(t) for t in tables]


def subgroup_closure(group: PermutationGroup, gens: Iterable[Permutation]) -> list[Permutation]:
    tables = _tuple_closure([g.images for g in gens], group.degree, group.element_cap)
    return [Permutation(t) for t in tables]


def is_normal(group: PermutationGroup, subset: Iterable[Permutation]) -> bool:
    subset = frozenset(subset)
    return all(g * h * g.inverse() in subset for g in group.generators for h in subset)


def is_subgroup(subset: Iterable[Permutation]) -> bool:
    subset = frozenset(subset)
    return bool(subset) and all(a * b.inverse() in subset for a in subset for b in subset)


def proper_subsets_generate(group: PermutationGroup, gens: Sequence[Permutation]) -> bool:
    """Brute force: does any proper subset of ``gens`` generate the group?"""
    gens = list(gens)
    for r in range(len(gens)):
        for sub in combinations(gens, r):
            if generates(group, sub):
                return True
    return False
