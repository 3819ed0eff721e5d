"""Arithmetic in the permutational wreath product (A, X) wr H for finite H.

Elements are kept in factored form ``top * tail``: a permutation of X and a
tuple of H-element indices, one per point.  Conjugating a tail by a top
permutation moves the entry at coordinate x to coordinate a(x)::

    (a^-1 k a)_j = k_{a^-1(j)}

so that, with a(0) = n, a^-1 (g, e, ..., e) a = (e, ..., e, g).

That rule is a right action, so inside the wreath group tops compose left
to right: in ``g * h`` the top of g acts first.  (``Permutation.__mul__``
composes right to left; the wreath top of ``g * h`` is ``h.top * g.top``.)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeMismatch, GroupMismatch
from .perm import DEFAULT_ELEMENT_CAP, Permutation, PermutationGroup, closure


class FiniteGroup:
    """An enumerated permutation group with a full multiplication table.

    Elements are referred to by their index in the canonical (sorted)
    element list of the underlying ``PermutationGroup``.
    """

    def __init__(self, group: PermutationGroup, name: str | None = None):
        self.group = group
        self.name = name
        self.elements = group.elements
        self._index = {g: i for i, g in enumerate(self.elements)}
        m = len(self.elements)
        table = np.empty((m, m), dtype=np.int32)
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                table[i, j] = self._index[a * b]
        self.table = table
        self._inv = [self._index[g.inverse()] for g in self.elements]
        self.identity = self._index[group.identity()]

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, p: Permutation) -> int:
        return self._index[p]

    def element(self, i: int) -> Permutation:
        return self.elements[i]

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return self._inv[i]

    def product(self, items: Iterable[int]) -> int:
        r = self.identity
        for i in items:
            r = int(self.table[r, i])
        return r

    def pow(self, i: int, k: int) -> int:
        base = i if k >= 0 else self._inv[i]
        r = self.identity
        for _ in range(abs(k)):
            r = int(self.table[r, base])
        return r

    def commutator(self, i: int, j: int) -> int:
        """``i j i^-1 j^-1``"""
        return self.product((i, j, self._inv[i], self._inv[j]))

    def elem_order(self, i: int) -> int:
        k, r = 1, i
        while r != self.identity:
            r = int(self.table[r, i])
            k += 1
        return k

    def indices(self, perms: Iterable[Permutation]) -> frozenset[int]:
        return frozenset(self._index[p] for p in perms)

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        return frozenset(closure(list(gens), self.identity, self.mul))

    def words(self, gens: Sequence[int]) -> dict[int, tuple[tuple[int, int], ...]]:
        """Shortest words for every element of the subgroup ``<gens>``.

        A word is a tuple of ``(position in gens, +1 | -1)`` pairs; among
        words of equal length the first one found breadth-first is kept.
        """
        letters = [(p, s) for p in range(len(gens)) for s in (1, -1)]
        words = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for p, s in letters:
                    g = gens[p] if s == 1 else self._inv[gens[p]]
                    y = int(self.table[x, g])
                    if y not in words:
                        words[y] = words[x] + ((p, s),)
                        nxt.append(y)
            frontier = nxt
        return words

    def evaluate(self, gens: Sequence[int], word: Iterable[tuple[int, int]]) -> int:
        return self.product(gens[p] if s == 1 else self._inv[gens[p]] for p, s in word)

    def __repr__(self):
        label = self.name or f"degree {self.group.degree}"
        return f"FiniteGroup({label}, order={self.order})"


def wr_conjugate(tail: Sequence[int], a: Permutation) -> tuple[int, ...]:
    """Tail of ``a^-1 * tail * a``: the entry at x moves to a(x)."""
    if len(tail) != a.degree:
        raise DegreeMismatch(f"tail of length {len(tail)} against permutation of degree {a.degree}")
    out = [0] * len(tail)
    for x, h in enumerate(tail):
        out[a(x)] = h
    return tuple(out)


@dataclass(frozen=True)
class WreathElement:
    top: Permutation
    tail: tuple[int, ...]
    group: FiniteGroup

    def __post_init__(self):
        tail = tuple(int(h) for h in self.tail)
        if len(tail) != self.top.degree:
            raise DegreeMismatch(f"tail length {len(tail)} != degree {self.top.degree}")
        if any(not 0 <= h < self.group.order for h in tail):
            raise ValueError("tail entry out of range for H")
        object.__setattr__(self, "tail", tail)

    @classmethod
    def identity(cls, degree: int, group: FiniteGroup) -> WreathElement:
        return cls(Permutation.identity(degree), (group.identity,) * degree, group)

    @classmethod
    def from_top(cls, a: Permutation, group: FiniteGroup) -> WreathElement:
        return cls(a, (group.identity,) * a.degree, group)

    @classmethod
    def from_tail(cls, tail: Sequence[int], group: FiniteGroup) -> WreathElement:
        return cls(Permutation.identity(len(tail)), tuple(tail), group)

    @classmethod
    def at(cls, degree: int, group: FiniteGroup, entries: dict[int, int]) -> WreathElement:
        """Pure-tail element with the given coordinates, identity elsewhere."""
        tail = [group.identity] * degree
        for x, h in entries.items():
            tail[x] = h
        return cls.from_tail(tail, group)

    @property
    def degree(self) -> int:
        return self.top.degree

    def _check(self, other: WreathElement):
        if other.group is not self.group:
            raise GroupMismatch("wreath elements over different H")
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")

    def __mul__(self, other: WreathElement) -> WreathElement:
        if not isinstance(other, WreathElement):
            return NotImplemented
        self._check(other)
        moved = wr_conjugate(self.tail, other.top)
        H = self.group
        tail = tuple(H.mul(a, b) for a, b in zip(moved, other.tail))
        return WreathElement(other.top * self.top, tail, H)

    def inverse(self) -> WreathElement:
        a_inv = self.top.inverse()
        H = self.group
        return WreathElement(a_inv, wr_conjugate([H.inv(h) for h in self.tail], a_inv), H)

    def __pow__(self, k: int) -> WreathElement:
        base = self if k >= 0 else self.inverse()
        r = WreathElement.identity(self.degree, self.group)
        for _ in range(abs(k)):
            r = r * base
        return r

    def conj(self, a: WreathElement | Permutation) -> WreathElement:
        """``a^-1 * self * a``"""
        if isinstance(a, Permutation):
            a = WreathElement.from_top(a, self.group)
        return a.inverse() * self * a

    def is_identity(self) -> bool:
        return self.top.is_identity() and all(h == self.group.identity for h in self.tail)

    @cached_property
    def key(self) -> tuple:
        return (self.top.images, self.tail)

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.group is other.group and self.key == other.key

    def to_json(self, h_group: str | None = None) -> dict:
        out = {"top": list(self.top.images), "tail": list(self.tail)}
        if h_group is not None:
            out["h_group"] = h_group
        return out

    @classmethod
    def from_json(cls, data: dict, group: FiniteGroup) -> WreathElement:
        return cls(Permutation(tuple(data["top"])), tuple(data["tail"]), group)

    def __repr__(self):
        tail = ", ".join("e" if h == self.group.identity else str(h) for h in self.tail)
        return f"WreathElement(top={self.top!r}, tail=({tail}))"


def wr_product(g: WreathElement, h: WreathElement) -> WreathElement:
    return g * h


def wr_inverse(g: WreathElement) -> WreathElement:
    return g.inverse()


def wreath_closure(gens: Sequence[WreathElement], cap: int = DEFAULT_ELEMENT_CAP) -> list[WreathElement]:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to fix degree and H")
    ident = WreathElement.identity(gens[0].degree, gens[0].group)
    return closure(gens, ident, WreathElement.__mul__, cap, key=lambda x: x.key)


def closure_order(gens: Sequence[WreathElement], cap: int = DEFAULT_ELEMENT_CAP) -> int:
    """Order of the subgroup generated by ``gens`` (breadth-first)."""
    return len(wreath_closure(gens, cap))


def check_irredundant(gens: Sequence[WreathElement], cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """True iff dropping any one generator shrinks the generated subgroup."""
    gens = list(gens)
    full = closure_order(gens, cap)
    for i in range(len(gens)):
        rest = gens[:i] + gens[i + 1:]
        if not rest:
            if full == 1:
                return False
            continue
        if closure_order(rest, cap) >= full:
            return False
    return True
