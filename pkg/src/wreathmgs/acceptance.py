"""The acceptance battery: nine exit criteria, each a deterministic function
of a seed.  Used by ``wreathmgs suite`` and by the pytest gate.

Results never contain timings so that reports are byte-identical for a
given seed; the pytest gate times each criterion separately.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import automaton as am
from .construct import (
    LConditionData,
    build_S,
    random_word,
    replay_commutator,
    replay_power_k,
    replay_t,
    replay_u,
    validate_lcondition_finite,
)
from .errors import NotSatisfied
from .perm import (
    Permutation,
    alternating,
    cyclic,
    derived_or_power_subgroup,
    dihedral,
    direct_product,
    symmetric,
    wreath_action,
)
from .portrait import decompose_level_k, pi_sign, random_portrait, square_obstruction
from .pscert import find_ps_witness, verify_ps_witness
from .wreath import FiniteGroup, check_irredundant, closure_order


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title}"


# -- shared instances -------------------------------------------------------

def ps_positive_groups() -> dict:
    c2, c3, s3 = cyclic(2), cyclic(3), symmetric(3)
    return {
        "S5": symmetric(5),
        "S6": symmetric(6),
        "S7": symmetric(7),
        "C2wrC3": wreath_action(c2, c3),
        "S3wrC3": wreath_action(s3, c3),
        "C2wrC2wrC2": wreath_action(wreath_action(c2, c2), c2),
    }


def ps_negative_groups() -> dict:
    return {
        "S4": (symmetric(4), "sizes"),
        "A5": (alternating(5), "a1_transitive"),
        "C5": (cyclic(5), "a1_transitive"),
        "D5": (dihedral(5), "a1_transitive"),
    }


def s3_instance(rng: random.Random | None = None) -> LConditionData:
    """A = S5, H = S3, H0 = A3 = H'; F = the three transpositions (shuffled
    by ``rng``), phi a bijection onto A3."""
    S3 = symmetric(3)
    H0 = derived_or_power_subgroup(S3, "derived")
    F = [p for p in S3.elements if p.order() == 2]
    targets = list(H0)
    if rng is not None:
        rng.shuffle(F)
        rng.shuffle(targets)
    return LConditionData.from_perms(symmetric(5), S3, H0, 2, F, phi=dict(enumerate(targets)))


def branch_b_instance() -> LConditionData:
    """A = S5, H = C2 x C4 (points 0,1 | 2..5), k = 2, H0 = H^2 = {e, (0,2)}.

    F = (1,0), (1,2), (0,1): the first two have order 2 and form I2, the
    third is the C4 generator and forms I1.
    """
    H = direct_product(cyclic(2), cyclic(4))
    e = H.identity()
    a = Permutation.from_cycles(6, (0, 1))
    r = Permutation.from_cycles(6, (2, 3, 4, 5))
    F = [a, a * r * r, r]
    H0 = derived_or_power_subgroup(H, "power", 2)
    return LConditionData.from_perms(symmetric(5), H, H0, 2, F, I2=[0, 1], phi={0: e, 1: r * r})


def c2_instance(A=None) -> LConditionData:
    C2 = cyclic(2)
    return LConditionData.from_perms(A or symmetric(5), C2, [C2.identity()], 2, [C2.generators[0]])


def odometer_f():
    return am.MealyAutomorphism.from_table(2, {"f": ((1, 0), ("f", "f"))}, "f")


def theta_machines(seed: int) -> dict:
    rng = random.Random(seed)
    machines = {"odometer": am.odometer(), "f=(f,f)s": odometer_f()}
    for i in range(5):
        machines[f"m0[{i}]"] = am.m0_generator(i)
    for j in range(50):
        machines[f"random[{j}]"] = am.minimize(am.random_machine(rng, 4))
    return machines


# -- criteria ---------------------------------------------------------------

def criterion_1(seed: int = 0) -> CriterionResult:
    details = {}
    ok = True
    for name, G in ps_positive_groups().items():
        try:
            w = find_ps_witness(G)
            verified = verify_ps_witness(G, w).passed
            details[name] = {"x1": sorted(w.x1), "x2": sorted(w.x2), "verified": verified}
            ok &= verified
        except NotSatisfied as exc:
            details[name] = {"error": str(exc)}
            ok = False
    return CriterionResult(1, "PS witnesses for S5-S7 and the wreath actions", ok, details)


def criterion_2(seed: int = 0) -> CriterionResult:
    details = {}
    ok = True
    for name, (G, expected) in ps_negative_groups().items():
        try:
            find_ps_witness(G)
            details[name] = "unexpected witness"
            ok = False
        except NotSatisfied as exc:
            details[name] = exc.criterion
            ok &= exc.criterion == expected
    return CriterionResult(2, "PS fails on S4, A5, C5, D5 at the right criterion", ok, details)


def criterion_3(seed: int = 0, instances: int = 100, power_trials: int = 50) -> CriterionResult:
    rng = random.Random(seed)
    counts = {"t": 0, "u": 0, "comm": 0, "power": 0}
    failure = None
    try:
        for _ in range(instances):
            data = s3_instance(rng)
            H = data.H
            j = rng.choice(sorted(data.x1 - {0}))
            replay_t(data, j, random_word(rng, len(data.F)))
            counts["t"] += 1
            replay_u(data, random_word(rng, len(data.F)))
            counts["u"] += 1
            replay_commutator(data, rng.randrange(H.order), rng.randrange(H.order))
            counts["comm"] += 1
        data = branch_b_instance()
        if not validate_lcondition_finite(data).passed or data.branch != "B":
            raise AssertionError("branch-B instance did not validate")
        for _ in range(power_trials):
            replay_power_k(data, rng.randrange(data.H.order))
            counts["power"] += 1
    except AssertionError as exc:
        failure = str(exc)
    ok = failure is None and counts == {"t": instances, "u": instances, "comm": instances,
                                        "power": power_trials}
    return CriterionResult(3, "lemma replays match their closed forms exactly", ok,
                           {"checked": counts, "failure": failure})


def criterion_4(seed: int = 0) -> CriterionResult:
    data = c2_instance()
    S = build_S(data)
    order = closure_order(S)
    irredundant = check_irredundant(S)
    ok = order == 3840 and irredundant
    return CriterionResult(4, "<S> = S5 wr C2 (order 3840) with S irredundant", ok,
                           {"order": order, "generators": len(S), "irredundant": irredundant})


def criterion_5(seed: int = 0, trials: int = 1000, depth: int = 6) -> CriterionResult:
    shape = (2,) * depth
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2**63 - 1, size=(trials, 2))
    squares_even = True
    homomorphism = True
    for s1, s2 in seeds:
        g = random_portrait(shape, int(s1))
        h = random_portrait(shape, int(s2))
        gg = g * g
        squares_even &= all(pi_sign(gg, n) == 1 for n in range(depth - 1))
        gh = g * h
        homomorphism &= all(pi_sign(gh, n) == pi_sign(g, n) * pi_sign(h, n) for n in range(depth))
    m0 = {i: square_obstruction(am.to_portrait(am.m0_generator(i), depth)) for i in range(4)}
    m0_ok = all(m0[i] == i + 1 for i in range(4))
    return CriterionResult(5, "squares have even parity; M0 generators are not squares",
                           squares_even and homomorphism and m0_ok,
                           {"squares_even": squares_even, "homomorphism": homomorphism,
                            "m0_obstruction_levels": m0})


def criterion_6(seed: int = 0, N: int = 8) -> CriterionResult:
    mismatches = []
    expected = {"odometer": [1] * (N + 1), "f=(f,f)s": [2**n for n in range(N + 1)]}
    for i in range(5):
        expected[f"m0[{i}]"] = [1 if n <= i + 1 else 0 for n in range(N + 1)]
    machines = theta_machines(seed)
    for name, g in machines.items():
        dp = list(am.theta_profile(g, N).counts)
        brute = am.brute_force_theta(g, N)
        if dp != brute or (name in expected and dp != expected[name]):
            mismatches.append(name)
    return CriterionResult(6, "Theta by occupancy counting equals brute-force sections",
                           not mismatches, {"machines": len(machines), "mismatches": mismatches})


def criterion_7(seed: int = 0) -> CriterionResult:
    disagreements = []
    for name, g in theta_machines(seed).items():
        if am.classify_activity(g) != am.empirical_activity(g):
            disagreements.append(name)
    named_ok = (
        am.classify_activity(am.odometer()) == am.Activity("bounded", 0)
        and am.classify_activity(odometer_f()).kind == "exponential"
    )
    finitary_ok = True
    for i in range(5):
        g = am.m0_generator(i)
        depth = am.is_finitary(g)
        theta = am.theta_profile(g, 20).counts
        finitary_ok &= (am.classify_activity(g) == am.Activity("bounded", 0)
                        and depth == i + 2 and all(t == 0 for t in theta[depth:]))
    ok = not disagreements and named_ok and finitary_ok
    return CriterionResult(7, "cycle-based growth class agrees with sampled Theta", ok,
                           {"disagreements": disagreements, "named": named_ok, "finitary": finitary_ok})


def criterion_8(seed: int = 0, trials: int = 500, portrait_trials: int = 1000) -> CriterionResult:
    rng = random.Random(seed)
    words10 = am.all_words(2, 10)
    failures = {}

    def fail(key):
        failures[key] = failures.get(key, 0) + 1

    for _ in range(trials):
        g = am.random_machine(rng, rng.randint(1, 4))
        h = am.random_machine(rng, rng.randint(1, 4))
        k = am.random_machine(rng, rng.randint(1, 4))
        mg, mh, mk = am.minimize(g), am.minimize(h), am.minimize(k)
        if am.minimize(mg) != mg or not np.array_equal(am.act_many(mg, words10), am.act_many(g, words10)):
            fail("minimize")
        gh = mg * mh
        if not np.array_equal(am.act_many(gh, words10), am.act_many(mg, am.act_many(mh, words10))):
            fail("act_homomorphism")
        if (gh * mk) != (mg * (mh * mk)) or not (mg * mg.inverse()).is_trivial():
            fail("group_laws")
        v = tuple(rng.randrange(2) for _ in range(rng.randint(0, 5)))
        if am.section(gh, v) != am.section(mg, mh.act(v)) * am.section(mh, v):
            fail("section_of_product")

    prng = np.random.default_rng(seed)
    shape = (2,) * 6
    for t in range(portrait_trials):
        s = prng.integers(0, 2**63 - 1, size=3)
        g, h, k = (random_portrait(shape, int(x)) for x in s)
        if t < trials and ((g * h) * k != g * (h * k) or not (g * g.inverse()).is_identity()):
            fail("portrait_group_laws")
        level = t % 3 + 1
        top, rest = decompose_level_k(g, level)
        if (top * rest != g or not all((rest.perms[n] == np.arange(2)).all() for n in range(level))
                or not all((top.perms[n] == np.arange(2)).all() for n in range(level, 6))):
            fail("decompose_round_trip")
    return CriterionResult(8, "algebra axioms for machines and portraits", not failures,
                           {"failures": failures, "machine_trials": trials,
                            "portrait_trials": portrait_trials})


def criterion_9(seed: int = 0, top: int = 4) -> CriterionResult:
    gens = [am.m0_generator(i) for i in range(top + 1)]
    order_two = all(not g.is_trivial() and (g * g).is_trivial() for g in gens)
    commute = all(gens[i] * gens[j] == gens[j] * gens[i]
                  for i in range(len(gens)) for j in range(i + 1, len(gens)))
    return CriterionResult(9, "M0 generators have order 2 and commute", order_two and commute,
                           {"order_two": order_two, "commute": commute})


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9)


def run_suite(seed: int = 0) -> list[CriterionResult]:
    return [c(seed) for c in CRITERIA]
