import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wreathmgs import automaton as am
from wreathmgs.errors import LetterOutOfRange, ShapeMismatch
from wreathmgs.portrait import (
    Portrait,
    decompose_level_k,
    p_inverse,
    pi_sign,
    random_portrait,
    square_obstruction,
)

seeds = st.integers(0, 2**63 - 1)
BIN6 = (2,) * 6


def test_identity():
    e = Portrait.identity(BIN6)
    assert all(pi_sign(e, n) == 1 for n in range(6))
    assert square_obstruction(e) is None
    assert e.act((1, 0, 1)) == (1, 0, 1)


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_inverse(seed):
    g = random_portrait(BIN6, seed)
    assert (g * p_inverse(g)).is_identity()


@given(seeds, seeds)
@settings(max_examples=50, deadline=None)
def test_action_homomorphism(s1, s2):
    shape = (3, 2, 4)
    g, h = random_portrait(shape, s1), random_portrait(shape, s2)
    for w in np.ndindex(*shape):
        assert (g * h).act(w) == g.act(h.act(w))


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_squares_even(seed):
    g = random_portrait(BIN6, seed)
    assert all(pi_sign(g * g, n) == 1 for n in range(5))


@given(seeds, st.integers(0, 6))
@settings(max_examples=50, deadline=None)
def test_decompose(seed, k):
    g = random_portrait(BIN6, seed)
    top, rest = decompose_level_k(g, k)
    assert top * rest == g
    assert all(rest.perm_at(v) == (0, 1) for n in range(k) for v in np.ndindex(*(2,) * n))


def test_decompose_finitary():
    g = am.to_portrait(am.m0_generator(0), 6)
    top, rest = decompose_level_k(g, 2)
    assert rest.is_identity() and top == g


def test_m0_parity():
    for i in range(4):
        g = am.to_portrait(am.m0_generator(i), 6)
        assert [pi_sign(g, n) for n in range(6)] == [-1 if n == i + 1 else 1 for n in range(6)]
        assert square_obstruction(g) == i + 1


def test_odometer_not_square():
    assert square_obstruction(am.to_portrait(am.odometer(), 6)) == 0


def test_random_portrait_seeded():
    assert random_portrait(BIN6, 5) == random_portrait(BIN6, 5)
    root = random_portrait((2,), 9).perm_at(())
    assert root in ((0, 1), (1, 0))


def test_json_round_trip():
    g = random_portrait((3, 2, 4), 11)
    assert Portrait.from_json(g.to_json()) == g
    assert Portrait.from_json({"alphabet_sizes": [2, 2], "depth": 2, "perms": {"1": [1, 0]}}).act((1, 0)) == (1, 1)


def test_errors():
    with pytest.raises(ShapeMismatch):
        random_portrait((2, 2), 1) * random_portrait((2, 3), 1)
    with pytest.raises(LetterOutOfRange):
        Portrait.identity((2, 2)).act((0, 2))
    with pytest.raises(ValueError):
        Portrait((2,), (np.array([[0, 0]]),))
