import random

import pytest

from wreathmgs.acceptance import branch_b_instance, c2_instance, s3_instance
from wreathmgs.construct import (
    LConditionData,
    build_S,
    dump_instance,
    load_instance,
    random_word,
    replay_commutator,
    replay_power_k,
    replay_t,
    replay_u,
    run_lemma_trials,
    validate_lcondition_finite,
)
from wreathmgs.errors import InvalidData
from wreathmgs.perm import Permutation, cyclic, derived_or_power_subgroup, symmetric
from wreathmgs.wreath import WreathElement, check_irredundant, closure_order


@pytest.fixture(scope="module")
def s3():
    return s3_instance()


@pytest.fixture(scope="module")
def c2():
    return c2_instance()


def test_c2_instance_validates(c2):
    report = validate_lcondition_finite(c2)
    assert report.passed
    assert c2.branch == "A"


def test_s3_branch_a_with_single_transposition():
    S3 = symmetric(3)
    H0 = derived_or_power_subgroup(S3, "derived")
    data = LConditionData.from_perms(symmetric(5), S3, H0, 2, [Permutation.from_cycles(3, (0, 1))])
    assert data.branch == "A"
    report = validate_lcondition_finite(data)
    assert report.entry("branch").all_passed
    # one F element cannot map onto the three elements of A3
    assert not report.entry("phi_surjective").all_passed


def test_c4_branch_b_fails_order_k():
    C4 = cyclic(4)
    r = C4.generators[0]
    data = LConditionData.from_perms(symmetric(5), C4, [r ** 0, r ** 2], 2, [r])
    report = validate_lcondition_finite(data)
    assert data.branch == "B"
    assert not report.passed
    assert not report.entry("order_k").all_passed


def test_build_S_c2(c2):
    S = build_S(c2)
    H = c2.H
    assert S[-1] == WreathElement.at(5, H, {0: c2.F[0]})
    assert closure_order(S) == 3840
    assert check_irredundant(S)
    assert closure_order(S[:-1]) == 120


def test_build_S_s3_tails(s3):
    S = build_S(s3)
    q = S[-3:]
    for p, x in enumerate(q):
        assert x.top.is_identity()
        assert x.tail[0] == s3.F[p] and x.tail[4] == s3.phi[p]
        assert set(x.tail[1:4]) == {s3.H.identity}


def test_invalid_instance_rejected():
    C4 = cyclic(4)
    r = C4.generators[0]
    data = LConditionData.from_perms(symmetric(5), C4, [r ** 0, r ** 2], 2, [r])
    with pytest.raises(InvalidData):
        build_S(data)


def test_replay_t_examples(s3):
    H = s3.H
    assert replay_t(s3, 1, []).is_identity()
    f0 = s3.F[0]
    assert replay_t(s3, 1, [(0, 1)]) == WreathElement.at(5, H, {0: H.inv(f0), 1: f0})


def test_replay_u_empty_word(s3):
    u2, u1 = replay_u(s3, [])
    assert u2.is_identity() and u1.is_identity()


def test_commutator_examples(s3):
    H = s3.H
    a = H.index(Permutation.from_cycles(3, (0, 1)))
    b = H.index(Permutation.from_cycles(3, (1, 2)))
    assert replay_commutator(s3, a, a).is_identity()
    expected = H.index(Permutation.from_cycles(3, (0, 1)) * Permutation.from_cycles(3, (1, 2))
                       * Permutation.from_cycles(3, (0, 1)) * Permutation.from_cycles(3, (1, 2)))
    assert replay_commutator(s3, a, b) == WreathElement.at(5, H, {4: expected})


def test_random_replays(s3):
    rng = random.Random(3)
    for _ in range(100):
        replay_t(s3, rng.choice([1]), random_word(rng, 3))
        replay_u(s3, random_word(rng, 3))
        replay_commutator(s3, rng.randrange(6), rng.randrange(6))


def test_power_replay():
    data = branch_b_instance()
    assert data.branch == "B" and validate_lcondition_finite(data).passed
    H = data.H
    assert replay_power_k(data, H.identity).is_identity()
    r = H.index(Permutation.from_cycles(6, (2, 3, 4, 5)))
    assert replay_power_k(data, r) == WreathElement.at(5, H, {4: H.pow(r, 2)})
    for h in range(H.order):
        replay_power_k(data, h)


def test_power_replay_needs_branch_b(s3):
    with pytest.raises(InvalidData):
        replay_power_k(s3, 0)


@pytest.mark.parametrize("lemma", ["t", "u", "comm"])
def test_run_lemma_trials(s3, lemma):
    entry = run_lemma_trials(s3, lemma, 20, seed=1)
    assert entry.all_passed and entry.instances_checked == 20


@pytest.mark.parametrize("lemma", ["closure", "minimal"])
def test_run_lemma_trials_generation(c2, lemma):
    assert run_lemma_trials(c2, lemma, 1, seed=1).all_passed


def test_power_trials_note():
    entry = run_lemma_trials(branch_b_instance(), "power", 10, seed=2)
    assert entry.all_passed and entry.note


def test_instance_round_trip(s3):
    data = load_instance(dump_instance(s3))
    assert data.F == s3.F and data.phi == s3.phi and data.H0 == s3.H0


def test_instance_keywords():
    S3 = symmetric(3)
    raw = {"A": symmetric(5).to_json(), "H": S3.to_json(), "H0": "derived", "k": 2,
           "F": [[1, 0, 2]]}
    data = load_instance(raw)
    assert len(data.H0) == 3
