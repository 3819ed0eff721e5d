import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wreathmgs import automaton as am
from wreathmgs.acceptance import odometer_f
from wreathmgs.errors import AlphabetMismatch, LetterOutOfRange

seeds = st.integers(0, 2**32)


def test_identity_and_odometer_action():
    e = am.MealyAutomorphism.identity(2)
    assert e.act((1, 0, 1)) == (1, 0, 1)
    a = am.odometer()
    assert a.act((0, 0, 0)) == (1, 0, 0)
    assert a.act((1, 1, 1)) == (0, 0, 0)
    assert a.act((1, 1, 0, 1)) == (0, 0, 1, 1)


def test_letter_out_of_range():
    with pytest.raises(LetterOutOfRange):
        am.odometer().act((0, 2))


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        am.odometer() * am.MealyAutomorphism.identity(3)


def test_product_with_inverse_is_trivial():
    a = am.odometer()
    r = am.minimize(am.mealy_product(a, am.mealy_inverse(a)))
    assert r.n_states == 1 and r.is_trivial()


def test_theta_examples():
    assert list(am.theta_profile(am.MealyAutomorphism.identity(2), 5).counts) == [0] * 6
    assert list(am.theta_profile(am.odometer(), 20).counts) == [1] * 21
    assert list(am.theta_profile(odometer_f(), 10).counts) == [2**n for n in range(11)]


def test_classification_examples():
    assert am.classify_activity(am.odometer()) == am.Activity("bounded", 0)
    assert am.classify_activity(odometer_f()).kind == "exponential"
    assert am.classify_activity(am.m0_generator(2)) == am.Activity("bounded", 0)


def test_polynomial_degree():
    # b = (b, a) with a the odometer: two chained cycles, linear growth
    b = am.MealyAutomorphism.from_table(2, {
        "b": ((0, 1), ("b", "a")),
        "a": ((1, 0), ("e", "a")),
        "e": ((0, 1), ("e", "e")),
    }, "b")
    assert am.classify_activity(b) == am.Activity.of_degree(1)
    assert am.empirical_activity(b) == am.Activity.of_degree(1)
    assert list(am.theta_profile(b, 6).counts) == [1, 2, 3, 4, 5, 6, 7]


def test_finitary_depths():
    assert am.is_finitary(am.root_transposition()) == 1
    assert am.is_finitary(am.odometer()) is None
    for i in range(5):
        assert am.is_finitary(am.m0_generator(i)) == i + 2


def test_m0_structure():
    for i in range(5):
        g = am.m0_generator(i)
        assert not g.is_trivial() and (g * g).is_trivial()
    assert am.section(am.m0_generator(2), (0, 0, 1)) == am.root_transposition()


def test_json_round_trip():
    g = am.odometer() * am.m0_generator(1)
    assert am.MealyAutomorphism.from_json(g.to_json()) == g


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_minimize_preserves_action(seed):
    rng = random.Random(seed)
    g = am.random_machine(rng, rng.randint(1, 5), q=rng.choice((2, 3)))
    m = am.minimize(g)
    assert am.minimize(m) == m
    assert am.equivalent_on_words(g, m, 6)


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_product_and_inverse(seed):
    rng = random.Random(seed)
    g, h = (am.minimize(am.random_machine(rng, rng.randint(1, 4))) for _ in range(2))
    words = am.all_words(2, 8)
    np.testing.assert_array_equal(am.act_many(g * h, words), am.act_many(g, am.act_many(h, words)))
    np.testing.assert_array_equal(am.act_many(g.inverse(), am.act_many(g, words)), words)
    v = tuple(rng.randrange(2) for _ in range(4))
    assert am.section(g * h, v) == am.section(g, h.act(v)) * am.section(h, v)


@given(seeds)
@settings(max_examples=100, deadline=None)
def test_theta_matches_brute_force(seed):
    g = am.minimize(am.random_machine(random.Random(seed), 4))
    assert list(am.theta_profile(g, 7).counts) == am.brute_force_theta(g, 7)


@given(seeds)
@settings(max_examples=200, deadline=None)
def test_classification_matches_sampling(seed):
    g = am.minimize(am.random_machine(random.Random(seed), 5))
    assert am.classify_activity(g) == am.empirical_activity(g)


def test_portrait_conversion():
    p = am.to_portrait(am.odometer(), 3)
    for v, level in (((), 0), ((1,), 1), ((1, 1), 2)):
        assert p.perm_at(v) == (1, 0)
    assert p.perm_at((0,)) == (0, 1) and p.perm_at((1, 0)) == (0, 1)
