"""Finite-state automorphisms of the regular rooted tree as Mealy machines.

A state s carries a permutation ``output[s]`` of the alphabet and a
transition ``next[s][x]`` per letter.  Acting from the left, with sections
applied to suffixes::

    g(x w) = output(x) . (g|_x)(w)

Every public constructor and operation returns machines in canonical form:
only states reachable from the initial one, equivalent states merged, and
states numbered breadth-first from the initial state (letters in
increasing order).  Equal behavior therefore means equal dataclasses.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .errors import AlphabetMismatch, LetterOutOfRange


@dataclass(frozen=True)
class MealyAutomorphism:
    q: int
    outputs: tuple[tuple[int, ...], ...]
    nexts: tuple[tuple[int, ...], ...]
    initial: int = 0

    def __post_init__(self):
        outputs = tuple(tuple(int(y) for y in o) for o in self.outputs)
        nexts = tuple(tuple(int(t) for t in row) for row in self.nexts)
        if self.q < 2:
            raise ValueError("alphabet must have at least two letters")
        if len(outputs) != len(nexts) or not outputs:
            raise ValueError("need one output and one transition row per state")
        for o, row in zip(outputs, nexts):
            if sorted(o) != list(range(self.q)):
                raise ValueError(f"state output {o} is not a permutation of the alphabet")
            if len(row) != self.q or any(not 0 <= t < len(outputs) for t in row):
                raise ValueError(f"bad transition row {row}")
        if not 0 <= self.initial < len(outputs):
            raise ValueError("initial state out of range")
        object.__setattr__(self, "outputs", outputs)
        object.__setattr__(self, "nexts", nexts)

    @classmethod
    def from_table(cls, q: int, table: Mapping[str, tuple[Sequence[int], Sequence[str]]],
                   initial: str) -> MealyAutomorphism:
        """Build from named states: ``{"a": ((1, 0), ("e", "a")), ...}``."""
        names = list(table)
        pos = {name: i for i, name in enumerate(names)}
        outputs = [tuple(table[n][0]) for n in names]
        nexts = [tuple(pos[t] for t in table[n][1]) for n in names]
        return minimize(cls(q, tuple(outputs), tuple(nexts), pos[initial]))

    @classmethod
    def identity(cls, q: int) -> MealyAutomorphism:
        return cls(q, (tuple(range(q)),), ((0,) * q,), 0)

    @property
    def n_states(self) -> int:
        return len(self.outputs)

    @cached_property
    def nontrivial_states(self) -> frozenset[int]:
        """States whose automorphism is not the identity.

        A state is trivial iff every state reachable from it has identity
        output.
        """
        ident = tuple(range(self.q))
        preds = [[] for _ in self.outputs]
        for s, row in enumerate(self.nexts):
            for t in row:
                preds[t].append(s)
        bad = {s for s, o in enumerate(self.outputs) if o != ident}
        stack = list(bad)
        while stack:
            t = stack.pop()
            for s in preds[t]:
                if s not in bad:
                    bad.add(s)
                    stack.append(s)
        return frozenset(bad)

    def is_trivial(self) -> bool:
        return self.initial not in self.nontrivial_states

    def act(self, word: Sequence[int]) -> tuple[int, ...]:
        s = self.initial
        out = []
        for x in word:
            if not 0 <= x < self.q:
                raise LetterOutOfRange(f"letter {x} outside alphabet of size {self.q}")
            out.append(self.outputs[s][x])
            s = self.nexts[s][x]
        return tuple(out)

    def state_after(self, word: Sequence[int]) -> int:
        s = self.initial
        for x in word:
            if not 0 <= x < self.q:
                raise LetterOutOfRange(f"letter {x} outside alphabet of size {self.q}")
            s = self.nexts[s][x]
        return s

    def __mul__(self, other: MealyAutomorphism) -> MealyAutomorphism:
        return mealy_product(self, other)

    def inverse(self) -> MealyAutomorphism:
        return mealy_inverse(self)

    def __pow__(self, k: int) -> MealyAutomorphism:
        base = self if k >= 0 else self.inverse()
        r = MealyAutomorphism.identity(self.q)
        for _ in range(abs(k)):
            r = r * base
        return r

    def to_json(self) -> dict:
        return {
            "alphabet": self.q,
            "states": [{"output": list(o), "next": list(n)} for o, n in zip(self.outputs, self.nexts)],
            "initial": self.initial,
        }

    @classmethod
    def from_json(cls, data: dict) -> MealyAutomorphism:
        states = data["states"]
        return cls(int(data["alphabet"]), tuple(tuple(s["output"]) for s in states),
                   tuple(tuple(s["next"]) for s in states), int(data.get("initial", 0)))


def load_machine(path) -> MealyAutomorphism:
    with open(path) as fh:
        return MealyAutomorphism.from_json(json.load(fh))


def save_machine(g: MealyAutomorphism, path) -> None:
    with open(path, "w") as fh:
        json.dump(g.to_json(), fh)


def act(g: MealyAutomorphism, word: Sequence[int]) -> tuple[int, ...]:
    return g.act(word)


def minimize(g: MealyAutomorphism) -> MealyAutomorphism:
    """Canonical form: reachable part, Moore partition refinement, BFS numbering."""
    reach = [g.initial]
    seen = {g.initial}
    for s in reach:
        for t in g.nexts[s]:
            if t not in seen:
                seen.add(t)
                reach.append(t)

    outs = {}
    block = {s: outs.setdefault(g.outputs[s], len(outs)) for s in reach}
    n_blocks = len(outs)
    while True:
        sigs = {}
        new_block = {}
        for s in reach:
            sig = (block[s],) + tuple(block[t] for t in g.nexts[s])
            new_block[s] = sigs.setdefault(sig, len(sigs))
        block = new_block
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)

    rep = {}
    for s in reach:
        rep.setdefault(block[s], s)
    number = {block[g.initial]: 0}
    order = [block[g.initial]]
    for b in order:
        for t in g.nexts[rep[b]]:
            bt = block[t]
            if bt not in number:
                number[bt] = len(order)
                order.append(bt)
    outputs = tuple(g.outputs[rep[b]] for b in order)
    nexts = tuple(tuple(number[block[t]] for t in g.nexts[rep[b]]) for b in order)
    return MealyAutomorphism(g.q, outputs, nexts, 0)


def mealy_product(g: MealyAutomorphism, h: MealyAutomorphism) -> MealyAutomorphism:
    """The machine of ``g h`` (apply h first): sections (gh)|_x = g|_{h(x)} h|_x."""
    if g.q != h.q:
        raise AlphabetMismatch(f"alphabets {g.q} and {h.q}")
    start = (g.initial, h.initial)
    index = {start: 0}
    pairs = [start]
    outputs, nexts = [], []
    for s, t in pairs:
        og, oh = g.outputs[s], h.outputs[t]
        outputs.append(tuple(og[oh[x]] for x in range(g.q)))
        row = []
        for x in range(g.q):
            pair = (g.nexts[s][oh[x]], h.nexts[t][x])
            if pair not in index:
                index[pair] = len(pairs)
                pairs.append(pair)
            row.append(index[pair])
        nexts.append(tuple(row))
    return minimize(MealyAutomorphism(g.q, tuple(outputs), tuple(nexts), 0))


def mealy_inverse(g: MealyAutomorphism) -> MealyAutomorphism:
    """Inverse machine: output inverted and (g^-1)|_x = (g|_{o^-1(x)})^-1."""
    outputs, nexts = [], []
    for o, row in zip(g.outputs, g.nexts):
        inv = [0] * g.q
        for x, y in enumerate(o):
            inv[y] = x
        outputs.append(tuple(inv))
        nexts.append(tuple(row[inv[x]] for x in range(g.q)))
    return minimize(MealyAutomorphism(g.q, tuple(outputs), tuple(nexts), g.initial))


def section(g: MealyAutomorphism, v: Sequence[int]) -> MealyAutomorphism:
    """``g|_v``: the state reached after reading v, as its own machine."""
    s = g.state_after(v)
    return minimize(MealyAutomorphism(g.q, g.outputs, g.nexts, s))


@dataclass(frozen=True)
class ThetaProfile:
    """Theta_0 ... Theta_N: nontrivial sections per level."""

    counts: tuple[int, ...]

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return len(self.counts)

    def as_array(self) -> np.ndarray:
        return np.array(self.counts, dtype=object)


def theta_profile(g: MealyAutomorphism, N: int) -> ThetaProfile:
    """Count nontrivial sections on levels 0..N by propagating state occupancy."""
    nontrivial = g.nontrivial_states
    counts = [0] * g.n_states
    counts[g.initial] = 1
    out = []
    for n in range(N + 1):
        out.append(sum(counts[s] for s in nontrivial))
        if n == N:
            break
        nxt = [0] * g.n_states
        for s, c in enumerate(counts):
            if c:
                for t in g.nexts[s]:
                    nxt[t] += c
        counts = nxt
    return ThetaProfile(tuple(out))


@dataclass(frozen=True)
class Activity:
    """``kind`` is "bounded", "polynomial" or "exponential"; ``degree`` is
    the polynomial degree (0 for bounded, None for exponential)."""

    kind: str
    degree: int | None

    @classmethod
    def of_degree(cls, m: int) -> Activity:
        return cls("bounded", 0) if m <= 0 else cls("polynomial", m)


def _nontrivial_graph(g: MealyAutomorphism):
    nt = sorted(g.nontrivial_states)
    edges = {s: [t for t in g.nexts[s] if t in g.nontrivial_states] for s in nt}
    return nt, edges


def _sccs(nodes, edges) -> list[list[int]]:
    """Strongly connected components by mutual reachability (small graphs)."""
    reach = {}
    for s in nodes:
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in edges[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach[s] = seen
    comps, placed = [], set()
    for s in nodes:
        if s in placed:
            continue
        comp = sorted(t for t in nodes if t in reach[s] and s in reach[t])
        placed.update(comp)
        comps.append(comp)
    return comps


def cycle_structure(g: MealyAutomorphism) -> tuple[list[list[int]], dict[int, int]]:
    """Nontrivial SCCs and, per SCC index, its count of internal edges."""
    nodes, edges = _nontrivial_graph(g)
    comps = _sccs(nodes, edges)
    internal = {}
    for i, comp in enumerate(comps):
        members = set(comp)
        internal[i] = sum(1 for s in comp for t in edges[s] if t in members)
    return comps, internal


def classify_activity(g: MealyAutomorphism) -> Activity:
    """Growth class of Theta_n from the cycle structure of nontrivial states.

    Exponential iff some strongly connected component of nontrivial states
    has more internal edges than states (a state on two distinct cycles).
    Otherwise the degree is one less than the largest number of cycles met
    along a directed path; no cycles at all means finitary, hence bounded.
    """
    g = minimize(g)
    nodes, edges = _nontrivial_graph(g)
    comps, internal = cycle_structure(g)
    if any(internal[i] > len(c) for i, c in enumerate(comps)):
        return Activity("exponential", None)
    comp_of = {s: i for i, c in enumerate(comps) for s in c}
    succ = {i: {comp_of[t] for s in c for t in edges[s]} - {i} for i, c in enumerate(comps)}
    cyclic = {i: 1 if internal[i] > 0 else 0 for i in range(len(comps))}
    best: dict[int, int] = {}

    def longest(i):
        if i not in best:
            best[i] = cyclic[i] + max((longest(j) for j in succ[i]), default=0)
        return best[i]

    most = max((longest(i) for i in range(len(comps))), default=0)
    return Activity.of_degree(most - 1)


def _lagged_difference(seq: list[int], lag: int) -> list[int]:
    return [seq[i + lag] - seq[i] for i in range(len(seq) - lag)]


def activity_from_theta(counts: Sequence[int], period: int, order: int) -> Activity | None:
    """Read the growth class off a Theta sequence alone.

    ``counts`` must satisfy a linear recurrence of length ``order`` (true
    for any machine with ``order`` nontrivial states) whose root-of-unity
    eigenvalues all divide ``period``.  The degree is the least d such that
    the (d+1)-fold lag-``period`` difference vanishes on its last ``order``
    entries, which by the recurrence means it vanishes from there on.
    Exponential if no d < ``order`` works.  Returns None if the sequence
    is too short to decide.
    """
    seq = list(counts)
    if order == 0:
        return Activity("bounded", 0)
    diff = seq
    for d in range(order):
        diff = _lagged_difference(diff, period)
        if len(diff) < order:
            return None
        if all(v == 0 for v in diff[-order:]):
            return Activity.of_degree(d)
    return Activity("exponential", None)


def sampling_plan(g: MealyAutomorphism, min_levels: int = 20) -> tuple[int, int, int]:
    """``(period, order, N)`` sufficient for ``activity_from_theta``.

    The period is lcm(1..s) for s nontrivial states, since every cycle has
    length at most s; this avoids consulting the cycle structure.
    """
    s = len(g.nontrivial_states)
    period = math.lcm(*range(1, s + 1)) if s else 1
    N = max(min_levels, period * s + s)
    return period, s, N


def empirical_activity(g: MealyAutomorphism, min_levels: int = 20) -> Activity:
    g = minimize(g)
    period, order, N = sampling_plan(g, min_levels)
    result = activity_from_theta(theta_profile(g, N).counts, period, order)
    assert result is not None, "sampling plan too short"
    return result


def is_finitary(g: MealyAutomorphism) -> int | None:
    """Least n with Theta_n = 0, or None if some cycle passes through a
    nontrivial state."""
    g = minimize(g)
    nodes, edges = _nontrivial_graph(g)
    depth: dict[int, int] = {}
    on_stack: set[int] = set()

    def longest(s):
        if s in on_stack:
            raise _Cycle
        if s not in depth:
            on_stack.add(s)
            depth[s] = 1 + max((longest(t) for t in edges[s]), default=0)
            on_stack.discard(s)
        return depth[s]

    if g.initial not in g.nontrivial_states:
        return 0
    try:
        for s in nodes:
            longest(s)
    except _Cycle:
        return None
    return depth[g.initial]


class _Cycle(Exception):
    pass


def odometer() -> MealyAutomorphism:
    """Binary adding machine: a(0w) = 1w, a(1w) = 0 a(w)."""
    return MealyAutomorphism.from_table(2, {"a": ((1, 0), ("e", "a")), "e": ((0, 1), ("e", "e"))}, "a")


def root_transposition(q: int = 2) -> MealyAutomorphism:
    swap = (1, 0) + tuple(range(2, q))
    return minimize(MealyAutomorphism(q, (swap, tuple(range(q))), ((1,) * q, (1,) * q), 0))


def m0_generator(i: int) -> MealyAutomorphism:
    """The order-2 automorphism swapping 0^i 1 0 v and 0^i 1 1 v (binary tree)."""
    if i < 0:
        raise ValueError("i must be non-negative")
    gate, swap, triv = i, i + 1, i + 2
    ident = (0, 1)
    outputs = [ident] * (i + 1) + [(1, 0), ident]
    nexts = [(d + 1, triv) for d in range(i)] + [(triv, swap), (triv, triv), (triv, triv)]
    return minimize(MealyAutomorphism(2, tuple(outputs), tuple(nexts), 0))


def random_machine(rng: random.Random, n_states: int, q: int = 2) -> MealyAutomorphism:
    """Uniformly random outputs and transitions, returned raw (not minimized)."""
    outputs = []
    for _ in range(n_states):
        o = list(range(q))
        rng.shuffle(o)
        outputs.append(tuple(o))
    nexts = tuple(tuple(rng.randrange(n_states) for _ in range(q)) for _ in range(n_states))
    return MealyAutomorphism(q, tuple(outputs), nexts, 0)


def to_portrait(g: MealyAutomorphism, depth: int):
    """Vertex permutations of g on levels 0..depth-1."""
    from .portrait import Portrait

    states = np.array([g.initial])
    outputs = np.array(g.outputs, dtype=np.int64)
    nexts = np.array(g.nexts, dtype=np.int64)
    perms = []
    for _ in range(depth):
        perms.append(outputs[states])
        states = nexts[states].reshape(-1)
    return Portrait((g.q,) * depth, tuple(perms))


def act_many(g: MealyAutomorphism, batch: np.ndarray) -> np.ndarray:
    """Act on every row of an integer array of words at once."""
    batch = np.asarray(batch, dtype=np.int64)
    if batch.size and (batch.min() < 0 or batch.max() >= g.q):
        raise LetterOutOfRange(f"letters must lie in 0..{g.q - 1}")
    outputs = np.array(g.outputs, dtype=np.int64)
    nexts = np.array(g.nexts, dtype=np.int64)
    states = np.full(batch.shape[0], g.initial, dtype=np.int64)
    out = np.empty_like(batch)
    for i in range(batch.shape[1]):
        out[:, i] = outputs[states, batch[:, i]]
        states = nexts[states, batch[:, i]]
    return out


def all_words(q: int, n: int) -> np.ndarray:
    return np.array(list(product(range(q), repeat=n)), dtype=np.int64).reshape(-1, n)


def words(q: int, n: int):
    """All words of length n in lexicographic order."""
    return product(range(q), repeat=n)


def brute_force_theta(g: MealyAutomorphism, N: int) -> list[int]:
    """Theta_n by computing every section on every level (oracle)."""
    return [sum(1 for v in words(g.q, n) if not section(g, v).is_trivial()) for n in range(N + 1)]


def equivalent_on_words(g: MealyAutomorphism, h: MealyAutomorphism, length: int) -> bool:
    return all(g.act(w) == h.act(w) for n in range(length + 1) for w in words(g.q, n))

