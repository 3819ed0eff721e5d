import random

import pytest
from hypothesis import given, settings, strategies as st

from wreathmgs.errors import DegreeMismatch, GroupMismatch
from wreathmgs.perm import Permutation, cyclic, symmetric
from wreathmgs.wreath import (
    FiniteGroup,
    WreathElement,
    check_irredundant,
    closure_order,
    wr_conjugate,
    wr_inverse,
)

S3 = FiniteGroup(symmetric(3), "S3")
C2 = FiniteGroup(cyclic(2), "C2")


def rand_elem(rng, degree=5, H=S3):
    images = list(range(degree))
    rng.shuffle(images)
    return WreathElement(Permutation(tuple(images)), tuple(rng.randrange(H.order) for _ in range(degree)), H)


def test_conjugation_moves_first_to_last():
    a = Permutation.from_cycles(5, (0, 4))
    g = 3
    e = S3.identity
    assert wr_conjugate((g, e, e, e, e), a) == (e, e, e, e, g)
    x = WreathElement.at(5, S3, {0: g})
    assert x.conj(a) == WreathElement.at(5, S3, {4: g})


def test_conjugation_identity_and_swap():
    tail = (1, 2, 0, 0, 0)
    assert wr_conjugate(tail, Permutation.identity(5)) == tail
    assert wr_conjugate(tail, Permutation.from_cycles(5, (0, 1))) == (2, 1, 0, 0, 0)


@given(st.integers(0, 2**32))
@settings(max_examples=100)
def test_group_axioms(seed):
    rng = random.Random(seed)
    g, h, k = (rand_elem(rng) for _ in range(3))
    assert (g * h) * k == g * (h * k)
    assert (g * wr_inverse(g)).is_identity()
    assert (wr_inverse(g) * g).is_identity()
    assert g * WreathElement.identity(5, S3) == g


@given(st.integers(0, 2**32))
@settings(max_examples=50)
def test_conjugation_is_automorphism(seed):
    rng = random.Random(seed)
    g, h = rand_elem(rng), rand_elem(rng)
    a = rand_elem(rng).top
    assert (g * h).conj(a) == g.conj(a) * h.conj(a)


def test_commutator_with_top_element():
    # b^-1 q b q^-1 with b = (0 1), q = (f, e, e, e, phi)
    f = S3.index(Permutation.from_cycles(3, (0, 1)))
    phi = S3.index(Permutation.from_cycles(3, (0, 1, 2)))
    q = WreathElement.at(5, S3, {0: f, 4: phi})
    b = Permutation.from_cycles(5, (0, 1))
    t = q.conj(b) * q.inverse()
    assert t == WreathElement.at(5, S3, {0: S3.inv(f), 1: f})


def test_mismatches():
    with pytest.raises(GroupMismatch):
        WreathElement.identity(5, S3) * WreathElement.identity(5, C2)
    with pytest.raises(DegreeMismatch):
        WreathElement.identity(5, S3) * WreathElement.identity(4, S3)


def test_closure_orders():
    e = WreathElement.identity(5, C2)
    assert closure_order([e]) == 1
    tops = [WreathElement.from_top(p, C2) for p in symmetric(5).generators]
    assert closure_order(tops) == 120
    assert check_irredundant(tops)
    assert not check_irredundant(tops + tops[:1])


def test_redundant_power_in_odd_cyclic_tail():
    C3 = FiniteGroup(cyclic(3))
    r = C3.index(cyclic(3).generators[0])
    g = WreathElement.at(2, C3, {0: r})
    assert not check_irredundant([g, g * g])


def test_json_round_trip():
    g = rand_elem(random.Random(1))
    assert WreathElement.from_json(g.to_json("S3.json"), S3) == g


def test_finite_group_words():
    gens = [S3.index(p) for p in symmetric(3).generators]
    words = S3.words(gens)
    assert len(words) == 6
    assert all(S3.evaluate(gens, w) == h for h, w in words.items())
