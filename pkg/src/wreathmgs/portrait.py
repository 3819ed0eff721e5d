"""Depth-truncated tree automorphisms (portraits).

A portrait of depth D on a tree with level alphabets ``alphabet_sizes``
stores one permutation per vertex of levels 0..D-1.  Level l is an integer
array of shape ``(V_l, s_l)`` where ``V_l`` is the number of level-l
vertices in lexicographic order (first letter most significant) and
``s_l`` is the size of the alphabet of the next letter.  Portraits of one
shape form a group: the quotient of Aut T by the level-D stabilizer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LetterOutOfRange, ShapeMismatch


def _level_counts(sizes: Sequence[int]) -> list[int]:
    counts = [1]
    for s in sizes[:-1]:
        counts.append(counts[-1] * s)
    return counts


@dataclass(frozen=True, eq=False)
class Portrait:
    alphabet_sizes: tuple[int, ...]
    perms: tuple[np.ndarray, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.alphabet_sizes)
        if len(sizes) != len(self.perms):
            raise ShapeMismatch("need one alphabet size per level")
        if any(s < 2 for s in sizes):
            raise ShapeMismatch("every level alphabet needs at least two letters")
        perms = []
        for level, (s, count, arr) in enumerate(zip(sizes, _level_counts(sizes), self.perms)):
            arr = np.asarray(arr, dtype=np.int64)
            if arr.shape != (count, s):
                raise ShapeMismatch(f"level {level} has shape {arr.shape}, expected {(count, s)}")
            if not np.array_equal(np.sort(arr, axis=1), np.broadcast_to(np.arange(s), arr.shape)):
                raise ValueError(f"level {level} holds a non-permutation")
            arr.setflags(write=False)
            perms.append(arr)
        object.__setattr__(self, "alphabet_sizes", sizes)
        object.__setattr__(self, "perms", tuple(perms))

    @classmethod
    def identity(cls, alphabet_sizes: Sequence[int]) -> Portrait:
        sizes = tuple(alphabet_sizes)
        return cls(sizes, tuple(np.tile(np.arange(s), (c, 1)) for s, c in zip(sizes, _level_counts(sizes))))

    @property
    def depth(self) -> int:
        return len(self.perms)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.alphabet_sizes

    def vertex_index(self, v: Sequence[int]) -> int:
        idx = 0
        for level, x in enumerate(v):
            if not 0 <= x < self.alphabet_sizes[level]:
                raise LetterOutOfRange(f"letter {x} at level {level}")
            idx = idx * self.alphabet_sizes[level] + x
        return idx

    def perm_at(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(y) for y in self.perms[len(v)][self.vertex_index(v)])

    def act(self, word: Sequence[int]) -> tuple[int, ...]:
        if len(word) > self.depth:
            raise ValueError(f"word longer than portrait depth {self.depth}")
        idx = 0
        out = []
        for level, x in enumerate(word):
            if not 0 <= x < self.alphabet_sizes[level]:
                raise LetterOutOfRange(f"letter {x} at level {level}")
            out.append(int(self.perms[level][idx, x]))
            idx = idx * self.alphabet_sizes[level] + x
        return tuple(out)

    def vertex_images(self) -> list[np.ndarray]:
        """For each level l < D, the image index of every level-l vertex."""
        images = [np.zeros(1, dtype=np.int64)]
        for level in range(self.depth - 1):
            s = self.alphabet_sizes[level]
            img = images[-1]
            images.append((img[:, None] * s + self.perms[level]).reshape(-1))
        return images

    def _check(self, other: Portrait):
        if self.alphabet_sizes != other.alphabet_sizes:
            raise ShapeMismatch(f"shapes {self.alphabet_sizes} and {other.alphabet_sizes}")

    def __mul__(self, other: Portrait) -> Portrait:
        return p_product(self, other)

    def inverse(self) -> Portrait:
        return p_inverse(self)

    def __pow__(self, k: int) -> Portrait:
        base = self if k >= 0 else self.inverse()
        r = Portrait.identity(self.alphabet_sizes)
        for _ in range(abs(k)):
            r = r * base
        return r

    def __eq__(self, other):
        if not isinstance(other, Portrait):
            return NotImplemented
        return self.alphabet_sizes == other.alphabet_sizes and all(
            np.array_equal(a, b) for a, b in zip(self.perms, other.perms))

    def __hash__(self):
        return hash((self.alphabet_sizes, tuple(p.tobytes() for p in self.perms)))

    def is_identity(self) -> bool:
        return self == Portrait.identity(self.alphabet_sizes)

    def to_json(self) -> dict:
        """Only non-identity vertices are written; keys are dot-joined words."""
        out = {}
        for level, arr in enumerate(self.perms):
            ident = np.arange(self.alphabet_sizes[level])
            for idx in np.flatnonzero(np.any(arr != ident, axis=1)):
                out[_vertex_key(self.alphabet_sizes, level, int(idx))] = [int(y) for y in arr[idx]]
        return {"alphabet_sizes": list(self.alphabet_sizes), "depth": self.depth, "perms": out}

    @classmethod
    def from_json(cls, data: dict) -> Portrait:
        sizes = tuple(data["alphabet_sizes"])
        if "depth" in data and int(data["depth"]) != len(sizes):
            sizes = sizes[: int(data["depth"])]
        base = Portrait.identity(sizes)
        perms = [np.array(p) for p in base.perms]
        for key, images in data.get("perms", {}).items():
            v = [int(x) for x in key.split(".")] if key else []
            if len(v) >= len(sizes):
                raise ShapeMismatch(f"vertex {key!r} is below the portrait depth")
            perms[len(v)][base.vertex_index(v)] = images
        return cls(sizes, tuple(perms))


def _vertex_key(sizes, level, idx) -> str:
    letters = []
    for s in reversed(sizes[:level]):
        letters.append(idx % s)
        idx //= s
    return ".".join(str(x) for x in reversed(letters))


def load_portrait(path) -> Portrait:
    with open(path) as fh:
        return Portrait.from_json(json.load(fh))


def p_product(g: Portrait, h: Portrait) -> Portrait:
    """``g h`` (apply h first): the perm of gh at v is g's perm at h(v)
    composed after h's perm at v."""
    g._check(h)
    perms = []
    for level, img in enumerate(h.vertex_images()):
        perms.append(np.take_along_axis(g.perms[level][img], h.perms[level], axis=1))
    return Portrait(g.alphabet_sizes, tuple(perms))


def p_inverse(g: Portrait) -> Portrait:
    perms = []
    for level, img in enumerate(g.vertex_images()):
        inv = np.empty_like(g.perms[level])
        inv[img] = np.argsort(g.perms[level], axis=1)
        perms.append(inv)
    return Portrait(g.alphabet_sizes, tuple(perms))


def p_act(g: Portrait, word: Sequence[int]) -> tuple[int, ...]:
    return g.act(word)


def decompose_level_k(g: Portrait, k: int) -> tuple[Portrait, Portrait]:
    """Split g = top * rest with top trivial from level k down and rest in
    the level-k stabilizer."""
    if not 0 <= k <= g.depth:
        raise ValueError(f"k must lie in 0..{g.depth}")
    ident = Portrait.identity(g.alphabet_sizes)
    top = Portrait(g.alphabet_sizes, g.perms[:k] + ident.perms[k:])
    rest = p_inverse(top) * g
    return top, rest


def _row_signs(arr: np.ndarray) -> np.ndarray:
    s = arr.shape[1]
    upper = np.triu(np.ones((s, s), dtype=bool), k=1)
    inversions = ((arr[:, :, None] > arr[:, None, :]) & upper).sum(axis=(1, 2))
    return np.where(inversions % 2, -1, 1)


def pi_sign(g: Portrait, n: int) -> int:
    """Sign of the product of all level-n vertex permutations.

    The product itself depends on the order of the factors; its sign does
    not, and it is the sign of the induced action on the next letter.
    """
    if not 0 <= n < g.depth:
        raise ValueError(f"level {n} outside 0..{g.depth - 1}")
    return int(np.prod(_row_signs(g.perms[n])))


def square_obstruction(g: Portrait) -> int | None:
    """First level n with odd parity, which certifies g is not a square in
    Aut T; None when every level is even (inconclusive)."""
    for n in range(g.depth):
        if pi_sign(g, n) == -1:
            return n
    return None


def random_portrait(alphabet_sizes: Sequence[int], seed) -> Portrait:
    """Every vertex permutation uniform on its level's symmetric group."""
    rng = np.random.default_rng(seed)
    sizes = tuple(alphabet_sizes)
    perms = tuple(rng.permuted(np.tile(np.arange(s), (c, 1)), axis=1)
                  for s, c in zip(sizes, _level_counts(sizes)))
    return Portrait(sizes, perms)
