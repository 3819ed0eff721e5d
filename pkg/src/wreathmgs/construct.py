"""Replaying the generating-set construction for G = (A, X) wr H at finite scale.

All computations happen in *proof coordinates*: the points of X are
relabeled (see ``pscert.find_steering``) so that X1 = {0, ..., l1} and
X2 = {l2, ..., n}.  The generating set is ``S = S_A + S_K`` where S_A is an
irredundant generating set of A and S_K holds one element per f in F::

    q_i = (f_i, e, ..., e, phi(i))   for i in I2
    q_i = (f_i, e, ..., e)           for i in I1

Each ``replay_*`` function builds an element of <S> exactly the way the
generation argument does and checks it against its closed form.  There is
no tolerance anywhere: a disagreement raises ``ReplayMismatch``.

Finite stand-ins: H/H0 cannot have an infinite minimal generating set, so
the validator checks that the images of F generate H/H0 instead, and the
cardinality requirement |H/H0| >= |H0| is reported but not required (its
only job is to make phi surjective, which is checked directly).
"""

from __future__ import annotations

import logging
import random
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidData, NotExpressible, NotSatisfied, ReplayMismatch, SteeringNotFound
from .perm import (
    Permutation,
    PermutationGroup,
    derived_or_power_subgroup,
    is_minimal_generating_set,
    minimal_generating_subset,
)
from .pscert import find_ps_witness, find_steering, verify_ps_witness
from .wreath import FiniteGroup, WreathElement, check_irredundant, closure_order

log = logging.getLogger(__name__)

Word = Sequence[tuple[int, int]]


@dataclass
class LemmaEntry:
    lemma_id: str
    instances_checked: int
    all_passed: bool
    first_failure: str | None = None
    required: bool = True
    note: str | None = None


@dataclass
class ReplayReport:
    entries: list[LemmaEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.all_passed for e in self.entries if e.required)

    def entry(self, lemma_id: str) -> LemmaEntry:
        for e in self.entries:
            if e.lemma_id == lemma_id:
                return e
        raise KeyError(lemma_id)

    def to_json(self) -> dict:
        return {"passed": self.passed, "entries": [asdict(e) for e in self.entries]}


def _canonical(elements: Iterable[Permutation]) -> list[Permutation]:
    return sorted(elements, key=lambda g: (g.moved_points(), g.images))


@dataclass(eq=False)
class LConditionData:
    """A finite instance of the wreath-product generation setup.

    ``F`` holds H-element indices; ``I2`` lists positions in F; ``phi``
    maps each position in I2 to an index in ``H0``.  Positions not in I2
    form I1.
    """

    A: PermutationGroup
    H: FiniteGroup
    H0: frozenset[int]
    k: int
    F: tuple[int, ...]
    I2: tuple[int, ...]
    phi: dict[int, int]

    @classmethod
    def from_perms(cls, A: PermutationGroup, H: PermutationGroup | FiniteGroup,
                   H0: Iterable[Permutation], k: int, F: Sequence[Permutation],
                   I2: Sequence[int] | None = None,
                   phi: dict[int, Permutation] | None = None) -> LConditionData:
        """Build from permutations.  Defaults: I2 = all of F, and phi sends
        the i-th position of I2 to the i-th element of H0 (cyclically)."""
        Hf = H if isinstance(H, FiniteGroup) else FiniteGroup(H)
        H0_idx = Hf.indices(H0)
        F_idx = tuple(Hf.index(f) for f in F)
        I2 = tuple(range(len(F_idx))) if I2 is None else tuple(I2)
        if phi is None:
            h0_sorted = sorted(H0_idx)
            phi_idx = {p: h0_sorted[i % len(h0_sorted)] for i, p in enumerate(I2)}
        else:
            phi_idx = {p: Hf.index(v) for p, v in phi.items()}
        return cls(A, Hf, H0_idx, k, F_idx, I2, phi_idx)

    @property
    def I1(self) -> tuple[int, ...]:
        return tuple(p for p in range(len(self.F)) if p not in set(self.I2))

    @property
    def degree(self) -> int:
        return self.A.degree

    @property
    def n(self) -> int:
        """Largest point label."""
        return self.A.degree - 1

    @cached_property
    def witness(self):
        return find_ps_witness(self.A)

    @cached_property
    def steering(self):
        return find_steering(self.A, self.witness)

    @property
    def case(self) -> str:
        return self.steering.case

    @cached_property
    def proof_group(self) -> PermutationGroup:
        return self.A.conjugated(self.steering.labeling)

    @cached_property
    def x1(self) -> frozenset[int]:
        return frozenset(range(len(self.witness.x1)))

    @cached_property
    def x2(self) -> frozenset[int]:
        return frozenset(range(self.degree - len(self.witness.x2), self.degree))

    @cached_property
    def _a1(self) -> list[Permutation]:
        outside = [x for x in range(self.degree) if x not in self.x1]
        return _canonical(g for g in self.proof_group.elements if all(g(x) == x for x in outside))

    @cached_property
    def _a2(self) -> list[Permutation]:
        outside = [x for x in range(self.degree) if x not in self.x2]
        return _canonical(g for g in self.proof_group.elements if all(g(x) == x for x in outside))

    def _pick(self, pool: Sequence[Permutation], src: int, dst: int, what: str) -> Permutation:
        for g in pool:
            if g(src) == dst:
                return g
        raise SteeringNotFound(f"no {what} element sends {src} to {dst}")

    def a1_moving(self, src: int, dst: int) -> Permutation:
        return self._pick(self._a1, src, dst, "A1")

    def a2_moving(self, src: int, dst: int) -> Permutation:
        return self._pick(self._a2, src, dst, "A2")

    @cached_property
    def _a_all(self) -> list[Permutation]:
        return _canonical(self.proof_group.elements)

    def a_moving(self, src: int, dst: int) -> Permutation:
        return self._pick(self._a_all, src, dst, "A")

    @cached_property
    def derived(self) -> frozenset[int]:
        return self.H.indices(derived_or_power_subgroup(self.H.group, "derived"))

    @cached_property
    def power(self) -> frozenset[int]:
        return self.H.indices(derived_or_power_subgroup(self.H.group, "power", self.k))

    @cached_property
    def branch(self) -> str | None:
        """``"A"`` if H0 <= H', ``"B"`` if H' < H0 <= H^k H', else None."""
        if self.H0 <= self.derived:
            return "A"
        hk_hd = self.H.closure(self.power | self.derived)
        if self.derived < self.H0 and self.H0 <= hk_hd:
            return "B"
        return None

    @cached_property
    def words_F(self) -> dict[int, tuple[tuple[int, int], ...]]:
        return self.H.words(self.F)

    def _sub_words(self, positions: Sequence[int]) -> dict[int, tuple[tuple[int, int], ...]]:
        words = self.H.words([self.F[p] for p in positions])
        return {h: tuple((positions[i], s) for i, s in w) for h, w in words.items()}

    @cached_property
    def words_I1(self):
        return self._sub_words(self.I1)

    @cached_property
    def words_I2(self):
        return self._sub_words(self.I2)

    @cached_property
    def commutator_words(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """Each element of H' as a shortest product of commutators.

        Letters are ``(x, y)`` pairs standing for ``x y x^-1 y^-1``.
        """
        H = self.H
        pairs = {}
        for x in range(H.order):
            for y in range(H.order):
                c = H.commutator(x, y)
                if c != H.identity:
                    pairs.setdefault(c, (x, y))
        words = {H.identity: ()}
        frontier = [H.identity]
        while frontier:
            nxt = []
            for z in frontier:
                for c, pair in sorted(pairs.items()):
                    w = H.mul(z, c)
                    if w not in words:
                        words[w] = words[z] + (pair,)
                        nxt.append(w)
            frontier = nxt
        return words


def validate_lcondition_finite(data: LConditionData) -> ReplayReport:
    """Check the finite-scale version of every requirement on ``data``."""
    report = ReplayReport()
    H = data.H

    def add(lemma_id, ok, failure=None, required=True, note=None):
        report.entries.append(LemmaEntry(lemma_id, 1, bool(ok), None if ok else failure, required, note))

    try:
        w = data.witness
        vr = verify_ps_witness(data.A, w)
        add("ps", vr.passed, f"witness checks failed: {vr.failed()}")
    except NotSatisfied as exc:
        add("ps", False, f"{exc.criterion}: {exc.reason}")
        w = None
    if w is not None:
        try:
            st = data.steering
            add("steering", True, note=st.case)
        except SteeringNotFound as exc:
            add("steering", False, f"{exc.reason} {exc.diagnostics}")

    h0_perms = [H.element(i) for i in data.H0]
    is_sub = bool(data.H0) and all(H.mul(a, H.inv(b)) in data.H0 for a in data.H0 for b in data.H0)
    add("h0_subgroup", is_sub, "H0 is not closed under products and inverses")
    normal = all(H.index(g * h * g.inverse()) in data.H0 for g in H.group.generators for h in h0_perms)
    add("h0_normal", normal, "H0 is not normal in H")

    branch = data.branch
    add("branch", branch is not None,
        "neither H0 <= H' nor H' < H0 <= H^k H'",
        note=None if branch is None else f"branch {branch}")

    q_order = H.order // max(len(data.H0), 1)
    add("quotient_cardinality", q_order >= len(data.H0),
        f"|H/H0| = {q_order} < |H0| = {len(data.H0)}", required=False,
        note="advisory at finite scale; surjectivity of phi is checked directly")

    generated = H.closure(set(data.F) | data.H0)
    add("quotient_generation", len(generated) == H.order,
        f"<F> H0 has order {len(generated)}, H has order {H.order}",
        note="stands in for an infinite minimal generating set of H/H0")

    redundant = [p for p in range(len(data.F))
                 if data.F[p] in H.closure([f for q, f in enumerate(data.F) if q != p] + sorted(data.H0))]
    add("quotient_irredundant", not redundant, f"F positions {redundant} are redundant modulo H0",
        required=False)

    if branch == "B":
        bad = [p for p in data.I2 if H.pow(data.F[p], data.k) != H.identity]
        add("order_k", not bad, f"f_i^k != e for I2 positions {bad}; "
            + _coset_order_diagnostic(data))

    phi_ok = (set(data.phi) == set(data.I2) and set(data.phi.values()) <= data.H0)
    add("phi_in_h0", phi_ok, "phi must map exactly I2 into H0")
    add("phi_surjective", set(data.phi.values()) >= data.H0,
        f"phi misses {len(data.H0 - set(data.phi.values()))} elements of H0")
    return report


def _coset_order_diagnostic(data: LConditionData) -> str:
    H = data.H
    missing = []
    for p in data.I2:
        coset = {H.mul(data.F[p], h0) for h0 in data.H0}
        if not any(H.pow(c, data.k) == H.identity for c in coset):
            missing.append(p)
    if missing:
        return f"cosets of F positions {missing} contain no element of order dividing k"
    return "every such coset has an element of order dividing k; choose those representatives"


def _require_valid(data: LConditionData):
    report = validate_lcondition_finite(data)
    if not report.passed:
        failed = [e.lemma_id for e in report.entries if e.required and not e.all_passed]
        raise InvalidData(f"instance fails: {failed}")


def q_element(data: LConditionData, p: int) -> WreathElement:
    entries = {0: data.F[p]}
    if p in data.phi:
        entries[data.n] = data.H.mul(entries.get(data.n, data.H.identity), data.phi[p])
    return WreathElement.at(data.degree, data.H, entries)


def build_S(data: LConditionData, validate: bool = True) -> list[WreathElement]:
    """``S_A`` (top-only) followed by ``S_K`` in F order, in proof coordinates."""
    if validate:
        _require_valid(data)
    A = data.proof_group
    s_a = minimal_generating_subset(A)
    if not is_minimal_generating_set(A, s_a):
        raise InvalidData("could not extract an irredundant generating set of A")
    if not data.F:
        log.warning("empty F: S consists of S_A only")
    return ([WreathElement.from_top(a, data.H) for a in s_a]
            + [q_element(data, p) for p in range(len(data.F))])


def word_element(data: LConditionData, word: Word) -> WreathElement:
    r = WreathElement.identity(data.degree, data.H)
    for p, s in word:
        q = q_element(data, p)
        r = r * (q if s == 1 else q.inverse())
    return r


def _expect(label: str, computed: WreathElement, expected: WreathElement) -> WreathElement:
    if computed != expected:
        raise ReplayMismatch(label, computed, expected)
    return computed


def replay_t(data: LConditionData, j: int, word: Word) -> WreathElement:
    """``b_j^-1 Q b_j Q^-1`` for Q the product of q's along ``word``.

    Closed form: g^-1 at coordinate 0, g at coordinate j.
    """
    if j == 0 or j not in data.x1:
        raise ValueError(f"j must be a nonzero point of X1 = {sorted(data.x1)}")
    H = data.H
    b = data.a1_moving(0, j)
    Q = word_element(data, word)
    t = Q.conj(b) * Q.inverse()
    g = H.evaluate(data.F, word)
    expected = WreathElement.at(data.degree, H, {0: H.inv(g), j: g})
    return _expect(f"t_{j}", t, expected)


def _u_closed_form(data: LConditionData, m: int, g: int) -> WreathElement:
    H = data.H
    if data.case == "case1":
        entries = {m: H.inv(g), data.n: g}
    else:
        entries = {m: g, data.n: H.inv(g)}
    return WreathElement.at(data.degree, H, entries)


def _u(data: LConditionData, m: int, word: Word) -> WreathElement:
    n = data.n
    d = data.steering.d
    H = data.H
    g = H.evaluate(data.F, word)
    if data.case == "case1":
        t1 = replay_t(data, 1, word)
        c = data.a2_moving(n, m)
        dc = WreathElement.from_top(d, data.H) * WreathElement.from_top(c, data.H)
        u = t1.conj(d) * t1.conj(dc).inverse()
    else:
        t = replay_t(data, n - m, word)
        u = t.conj(d)
    return _expect(f"u_{m}", u, _u_closed_form(data, m, g))


def replay_u(data: LConditionData, word: Word) -> tuple[WreathElement, WreathElement]:
    """``(u_{n-2}, u_{n-1})`` built through the steering element.

    Case1 (via d1 and c_m in A2 with c_m(n) = m) yields g^-1 at m and g
    at n; case2 (u_m = t_{n-m} conjugated by d2) yields g at m and g^-1 at n.
    """
    n = data.n
    return _u(data, n - 2, word), _u(data, n - 1, word)


def u_carrying(data: LConditionData, m: int, x: int) -> WreathElement:
    """The element of <S> with x^-1 at coordinate m and x at coordinate n."""
    target = x if data.case == "case1" else data.H.inv(x)
    try:
        word = data.words_F[target]
    except KeyError:
        raise NotExpressible(f"H element {x} is not in <F>") from None
    u = _u(data, m, word)
    expected = WreathElement.at(data.degree, data.H, {m: data.H.inv(x), data.n: x})
    return _expect(f"u_{m}[{x}]", u, expected)


def decompose_g_phi(data: LConditionData, h: int) -> tuple[int, int]:
    """Find ``h = g * phi(i)`` with g in <F> and i in I2; first i wins."""
    H = data.H
    for p in data.I2:
        g = H.mul(h, H.inv(data.phi[p]))
        if g in data.words_F:
            return g, p
    raise NotExpressible(f"H element {h} is not of the form g * phi(i)")


def replay_commutator(data: LConditionData, h1: int, h2: int) -> WreathElement:
    """``h1' h2' h1'^-1 h2'^-1`` with h1' = t1 q_{i1}, h2' = t2 q_{i2}^a.

    Closed form: identity everywhere except [h1, h2] at coordinate n.
    """
    H = data.H
    n = data.n
    g1, i1 = decompose_g_phi(data, h1)
    g2, i2 = decompose_g_phi(data, h2)
    a = data.a1_moving(0, 1)
    t1 = u_carrying(data, n - 2, g1)
    t2 = u_carrying(data, n - 1, g2)
    h1p = t1 * q_element(data, i1)
    h2p = t2 * q_element(data, i2).conj(a)
    c = h1p * h2p * h1p.inverse() * h2p.inverse()
    expected = WreathElement.at(data.degree, H, {n: H.commutator(h1, h2)})
    return _expect(f"[{h1},{h2}]", c, expected)


def derived_at_last(data: LConditionData, h: int) -> WreathElement:
    """(e, ..., e, h) for h in H', as a product of replayed commutators."""
    try:
        pairs = data.commutator_words[h]
    except KeyError:
        raise NotExpressible(f"H element {h} is not in H'") from None
    r = WreathElement.identity(data.degree, data.H)
    for x, y in pairs:
        r = r * replay_commutator(data, x, y)
    return _expect(f"H'[{h}]", r, WreathElement.at(data.degree, data.H, {data.n: h}))


def decompose_power(data: LConditionData, h: int) -> tuple[int, int, int]:
    """Find ``h = g1 * g2 * phi(i)`` with g1 in <F^I1>, g2 in <F^I2>, i in I2."""
    H = data.H
    for p in data.I2:
        rest = H.mul(h, H.inv(data.phi[p]))
        for g1 in data.words_I1:
            g2 = H.mul(H.inv(g1), rest)
            if g2 in data.words_I2:
                return g1, g2, p
    raise NotExpressible(f"H element {h} is not of the form g1 * g2 * phi(i)")


def replay_power_k(data: LConditionData, h: int) -> WreathElement:
    """``h'^k`` corrected by ``(e, ..., g2^k, e)``; closed form (e, ..., e, h^k).

    Here h' = t1 t2 q_i with t1 = a^-1 (g1, e, ..., e) a (a(0) = n) and
    t2 carrying g2^-1, g2 at coordinates n-1, n.  The correction is the
    H' element g2^k moved from coordinate n to n-1 by some a1 in A2.
    """
    if data.branch != "B":
        raise InvalidData("the k-th power replay needs an instance with H' < H0 <= H^k H'")
    H = data.H
    n = data.n
    g1, g2, i = decompose_power(data, h)
    a = data.a_moving(0, n)
    t1 = word_element(data, data.words_I1[g1]).conj(a)
    _expect("t1", t1, WreathElement.at(data.degree, H, {n: g1}))
    t2 = u_carrying(data, n - 1, g2)
    hp = t1 * t2 * q_element(data, i)
    h2 = H.pow(g2, data.k)
    if h2 not in data.derived:
        raise ReplayMismatch("g2^k in H'", h2, "an element of H'")
    # a1(n) = n-1 moves the last coordinate to n-1 under our conjugation rule
    a1 = data.a2_moving(n, n - 1)
    corr = derived_at_last(data, h2).conj(a1)
    result = hp ** data.k * corr
    expected = WreathElement.at(data.degree, H, {n: H.pow(h, data.k)})
    return _expect(f"power_{data.k}[{h}]", result, expected)


def full_order(data: LConditionData) -> int:
    return data.A.order * data.H.order ** data.degree


def random_word(rng: random.Random, n_letters: int, max_len: int = 6) -> list[tuple[int, int]]:
    if n_letters == 0:
        return []
    return [(rng.randrange(n_letters), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]


LEMMAS = ("t", "u", "comm", "power", "closure", "minimal")


def run_lemma_trials(data: LConditionData, lemma: str, trials: int, seed: int,
                     cap: int = 1_000_000) -> LemmaEntry:
    """Run ``trials`` seeded replays of one lemma; never raises on mismatch."""
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; expected one of {LEMMAS}")
    rng = random.Random(seed)
    _require_valid(data)
    H = data.H
    checked = 0
    # g2 is raised to the k-th power in the power replay
    note = "exponent of g2 taken as k" if lemma == "power" else None
    try:
        if lemma == "closure":
            got = closure_order(build_S(data, validate=False), cap)
            checked = 1
            if got != full_order(data):
                return LemmaEntry(lemma, 1, False, f"<S> has order {got}, expected {full_order(data)}")
        elif lemma == "minimal":
            checked = 1
            if not check_irredundant(build_S(data, validate=False), cap):
                return LemmaEntry(lemma, 1, False, "some element of S is redundant")
        else:
            x1_nonzero = sorted(data.x1 - {0})
            for _ in range(trials):
                if lemma == "t":
                    replay_t(data, rng.choice(x1_nonzero), random_word(rng, len(data.F)))
                elif lemma == "u":
                    replay_u(data, random_word(rng, len(data.F)))
                elif lemma == "comm":
                    replay_commutator(data, rng.randrange(H.order), rng.randrange(H.order))
                else:
                    replay_power_k(data, rng.randrange(H.order))
                checked += 1
    except (ReplayMismatch, NotExpressible) as exc:
        return LemmaEntry(lemma, checked + 1, False, str(exc), note=note)
    return LemmaEntry(lemma, checked, True, note=note)


def load_instance(data: dict) -> LConditionData:
    """Instance file: groups in group-file format, H elements as image arrays.

    Keys: ``A``, ``H`` (group objects), ``H0`` (list of elements, or
    ``"derived"`` / ``"power"``), ``k``, ``F`` (list of elements), optional
    ``I2`` (positions into F) and ``phi`` (list aligned with I2).
    """
    A = PermutationGroup.from_json(data["A"])
    Hp = PermutationGroup.from_json(data["H"])
    H = FiniteGroup(Hp)
    k = int(data.get("k", 2))
    h0 = data["H0"]
    if h0 == "derived":
        H0 = derived_or_power_subgroup(Hp, "derived")
    elif h0 == "power":
        H0 = derived_or_power_subgroup(Hp, "power", k)
    else:
        H0 = [Permutation(tuple(x)) for x in h0]
    F = [Permutation(tuple(x)) for x in data["F"]]
    I2 = data.get("I2")
    phi = data.get("phi")
    if phi is not None:
        if I2 is None:
            I2 = list(range(len(F)))
        phi = {p: Permutation(tuple(v)) for p, v in zip(I2, phi)}
    return LConditionData.from_perms(A, H, H0, k, F, I2, phi)


def dump_instance(data: LConditionData) -> dict:
    H = data.H
    return {
        "A": data.A.to_json(),
        "H": H.group.to_json(),
        "H0": [list(H.element(i).images) for i in sorted(data.H0)],
        "k": data.k,
        "F": [list(H.element(i).images) for i in data.F],
        "I2": list(data.I2),
        "phi": [list(H.element(data.phi[p]).images) for p in data.I2],
    }
