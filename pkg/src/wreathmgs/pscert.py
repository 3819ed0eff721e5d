"""Deciding condition PS on a finite permutation group.

A witness names disjoint point sets X1, X2 whose pointwise stabilizers of
the complements act transitively on them.  The subgroups A1, A2 are always
taken to be those full pointwise stabilizers: any subgroup acting
transitively on X1 and trivially off it sits inside the stabilizer, so
nothing is lost.

``find_steering`` locates the auxiliary element (d1 or d2) that the
generation argument conjugates by, together with a relabeling of the
points that puts X1 first, X2 last and the steering images where the
argument wants them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import DegreeTooLarge, NotSatisfied, SteeringNotFound
from .perm import Permutation, PermutationGroup, pointwise_stabilizer

DEFAULT_SEARCH_DEGREE = 12

CRITERIA = (
    "transitive",
    "sizes",
    "a1_transitive",
    "a2_transitive",
    "a_special",
)


@dataclass(frozen=True)
class PSWitness:
    x1: frozenset[int]
    x2: frozenset[int]
    a1_order: int
    a2_order: int
    a_special: Permutation | None
    labeling: Permutation

    def to_json(self) -> dict:
        return {
            "x1": sorted(self.x1),
            "x2": sorted(self.x2),
            "labeling": list(self.labeling.images),
            "a_special": list(self.a_special.images) if self.a_special is not None else None,
            "a1_order": self.a1_order,
            "a2_order": self.a2_order,
        }

    @classmethod
    def from_json(cls, data: dict) -> PSWitness:
        a = data.get("a_special")
        return cls(frozenset(data["x1"]), frozenset(data["x2"]), data.get("a1_order", 0),
                   data.get("a2_order", 0), Permutation(tuple(a)) if a is not None else None,
                   Permutation(tuple(data["labeling"])))


@dataclass(frozen=True)
class SteeringElement:
    """The steering element in proof coordinates.

    ``labeling`` sends an original point to its proof label, under which
    X1 is ``{0, ..., |X1|-1}`` and X2 is ``{n-|X2|+1, ..., n}``.  ``d`` is
    expressed in proof labels.  For case2, ``targets`` are the original
    X2 points hit by the first three X1 labels, so ``d`` maps labels
    0, 1, 2 to n, n-1, n-2.
    """

    case: str
    d: Permutation
    labeling: Permutation
    targets: tuple[int, ...] = field(default=())


def segment_labeling(degree: int, x1, x2, x1_order=None, x2_order=None) -> Permutation:
    """Relabel points so X1 is an initial and X2 a final segment.

    ``x1_order`` lists X1 points in label order (label 0 first);
    ``x2_order`` lists X2 points from label n downwards.
    """
    x1_order = list(x1_order) if x1_order is not None else sorted(x1)
    x2_order = list(x2_order) if x2_order is not None else sorted(x2, reverse=True)
    middle = [x for x in range(degree) if x not in x1 and x not in x2]
    images = [0] * degree
    for label, x in enumerate(x1_order + middle + x2_order[::-1]):
        images[x] = label
    return Permutation(tuple(images))


class _Stabilizers:
    """Pointwise stabilizer data keyed by the fixed point set."""

    def __init__(self, group: PermutationGroup):
        self.group = group
        self.table = np.array([g.images for g in group.elements], dtype=np.int16)
        self._cache: dict[frozenset, np.ndarray] = {}

    def mask(self, fixed: frozenset[int]) -> np.ndarray:
        mask = self._cache.get(fixed)
        if mask is None:
            idx = sorted(fixed)
            mask = np.all(self.table[:, idx] == np.array(idx, dtype=np.int16), axis=1)
            self._cache[fixed] = mask
        return mask

    def transitive_on(self, block: frozenset[int]) -> tuple[bool, int]:
        """Whether the stabilizer of the complement is transitive on ``block``."""
        complement = frozenset(range(self.group.degree)) - block
        mask = self.mask(complement)
        orbit = set(self.table[mask, min(block)].tolist())
        return orbit == set(block), int(mask.sum())


def _find_a_special(group: PermutationGroup, x1, x2) -> Permutation | None:
    for a in group.elements:
        image = a.image_of_set(x1)
        if image & x2 and not image <= x2:
            return a
    return None


def find_ps_witness(group: PermutationGroup, max_degree: int = DEFAULT_SEARCH_DEGREE) -> PSWitness:
    """Search for a PS witness; raise ``NotSatisfied`` if none exists.

    Candidates are point assignments to (neither, X1, X2) enumerated
    lexicographically with point 0 most significant; the first valid one
    wins.  On failure the reported criterion is the deepest check reached
    by any candidate.
    """
    n = group.degree
    if n > max_degree:
        raise DegreeTooLarge(f"degree {n} exceeds PS search bound {max_degree}")
    if not group.is_transitive():
        raise NotSatisfied("transitive", "group is not transitive on its points")
    if n < 5:
        raise NotSatisfied("sizes", "no disjoint subsets of required sizes (|X1| >= 2, |X2| >= 3)")

    stab = _Stabilizers(group)
    memo: dict[frozenset, tuple[bool, int]] = {}

    def check(block):
        if block not in memo:
            memo[block] = stab.transitive_on(block)
        return memo[block]

    deepest = 2
    for assignment in product(range(3), repeat=n):
        x1 = frozenset(i for i, c in enumerate(assignment) if c == 1)
        x2 = frozenset(i for i, c in enumerate(assignment) if c == 2)
        if len(x1) < 2 or len(x2) < 3:
            continue
        ok1, order1 = check(x1)
        if not ok1:
            continue
        deepest = max(deepest, 3)
        ok2, order2 = check(x2)
        if not ok2:
            continue
        deepest = max(deepest, 4)
        a = None
        if len(x1) == 2:
            a = _find_a_special(group, x1, x2)
            if a is None:
                continue
        return PSWitness(x1, x2, order1, order2, a, segment_labeling(n, x1, x2))

    reasons = {
        2: "no pointwise stabilizer of a complement acts transitively on a candidate X1",
        3: "no candidate X2 admits a transitive pointwise stabilizer alongside a valid X1",
        4: "|X1| = 2 for every remaining candidate and no element moves X1 partly into X2",
    }
    raise NotSatisfied(CRITERIA[deepest], reasons[deepest])


@dataclass
class PSReport:
    checks: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failed(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]


def verify_ps_witness(group: PermutationGroup, w: PSWitness) -> PSReport:
    """Recheck every PS requirement for ``w`` from scratch."""
    n = group.degree
    checks = []

    def add(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    everything = frozenset(range(n))
    add("transitive", group.is_transitive())
    add("subsets_in_range", w.x1 <= everything and w.x2 <= everything)
    add("disjoint", not (w.x1 & w.x2), f"X1 & X2 = {sorted(w.x1 & w.x2)}")
    add("x1_size", len(w.x1) >= 2, f"|X1| = {len(w.x1)}")
    add("x2_size", len(w.x2) >= 3, f"|X2| = {len(w.x2)}")
    for name, block, claimed in (("a1", w.x1, w.a1_order), ("a2", w.x2, w.a2_order)):
        if not block or not block <= everything:
            add(f"{name}_transitive", False, "empty or out-of-range block")
            continue
        stab = pointwise_stabilizer(group.elements, everything - block)
        images = {g(min(block)) for g in stab}
        add(f"{name}_transitive", images == set(block), f"orbit {sorted(images)}")
        add(f"{name}_order", claimed == len(stab), f"claimed {claimed}, actual {len(stab)}")
    if len(w.x1) == 2:
        a = w.a_special
        if a is None:
            add("a_special", False, "missing although |X1| = 2")
        else:
            image = a.image_of_set(w.x1)
            add("a_special", a in group and bool(image & w.x2) and not image <= w.x2,
                f"a(X1) = {sorted(image)}")
    else:
        add("a_special", w.a_special is None, "present although |X1| > 2")
    lab = w.labeling
    add("labeling",
        lab.degree == n
        and {lab(x) for x in w.x1} == set(range(len(w.x1)))
        and {lab(x) for x in w.x2} == set(range(n - len(w.x2), n)))
    return PSReport(checks)


def _canonical_order(group: PermutationGroup) -> list[Permutation]:
    return sorted(group.elements, key=lambda g: (g.moved_points(), g.images))


def find_steering(group: PermutationGroup, w: PSWitness) -> SteeringElement:
    """Find d1 (case1) or d2 (case2) plus the relabeling it needs.

    Case1 is tried first: an element sending X1 partly, but not wholly,
    into X2.  If one exists that already has d(0) outside X2 and d(1) = n
    in the witness labeling, the labeling is kept; otherwise X1 and X2 are
    reordered to make it so.  Case2 looks for an element sending three
    distinct X1 points into X2 and orders the labels so they land on
    n, n-1, n-2.  Elements are scanned by number of moved points, then
    image table.
    """
    n = group.degree
    last = n - 1
    x1, x2 = w.x1, w.x2
    lab = w.labeling
    lab_inv = lab.inverse()
    ordered = _canonical_order(group)

    crossing = []
    for g in ordered:
        image = g.image_of_set(x1)
        if image & x2 and not image <= x2:
            crossing.append(g)

    if crossing:
        for g in crossing:
            d = lab * g * lab_inv
            if d(0) not in {lab(x) for x in x2} and d(1) == last:
                return SteeringElement("case1", d, lab)
        g = crossing[0]
        outside = min(x for x in x1 if g(x) not in x2)
        inside = min(x for x in x1 if g(x) in x2)
        x1_order = [outside, inside] + sorted(x1 - {outside, inside})
        x2_order = [g(inside)] + sorted(x2 - {g(inside)}, reverse=True)
        relabel = segment_labeling(n, x1, x2, x1_order, x2_order)
        d = relabel * g * relabel.inverse()
        return SteeringElement("case1", d, relabel)

    if len(x1) >= 3:
        for g in ordered:
            hits = [x for x in sorted(x1) if g(x) in x2]
            if len(hits) < 3:
                continue
            triple = tuple(hits[:3])
            targets = tuple(g(x) for x in triple)
            x1_order = list(triple) + sorted(x1 - set(triple))
            x2_order = list(targets) + sorted(x2 - set(targets), reverse=True)
            relabel = segment_labeling(n, x1, x2, x1_order, x2_order)
            d = relabel * g * relabel.inverse()
            return SteeringElement("case2", d, relabel, targets)

    raise SteeringNotFound(
        "no element of the group moves X1 into X2 as the generation argument requires",
        {"x1": sorted(x1), "x2": sorted(x2), "group_order": group.order,
         "crossing_elements": len(crossing)},
    )
