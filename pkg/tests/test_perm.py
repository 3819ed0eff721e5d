import pytest
from hypothesis import given, strategies as st

from wreathmgs.errors import NotInvariant
from wreathmgs.perm import (
    Permutation,
    PermutationGroup,
    alternating,
    build_standard_group,
    cyclic,
    derived_or_power_subgroup,
    direct_product,
    is_minimal_generating_set,
    minimal_generating_subset,
    generates,
    orbit_transitivity,
    pointwise_stabilizer,
    symmetric,
    wreath_action,
)

perms5 = st.permutations(range(5)).map(lambda x: Permutation(tuple(x)))


def P(*cycles, n=5):
    return Permutation.from_cycles(n, *cycles)


def test_product_convention():
    assert P((0, 1)) * P((0, 1)) == Permutation.identity(5)
    # right factor first: 0 -> 0 -> 1, 1 -> 2 -> 2, 2 -> 1 -> 0
    assert P((0, 1), n=3) * P((1, 2), n=3) == Permutation((1, 2, 0))


def test_inverse_and_sign():
    c = Permutation((1, 2, 0))
    assert c.inverse() == Permutation((2, 0, 1))
    assert P((0, 1)).inverse() == P((0, 1))
    assert Permutation.identity(4).sign() == 1
    assert P((0, 1)).sign() == -1
    assert P((0, 1, 2, 3, 4)).sign() == 1


def test_invalid_images():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@given(perms5, perms5, perms5)
def test_group_laws(p, q, r):
    e = Permutation.identity(5)
    assert (p * q) * r == p * (q * r)
    assert p * e == p == e * p
    assert (p * p.inverse()).is_identity()
    assert (p * q).sign() == p.sign() * q.sign()
    assert (p * q)(3) == p(q(3))


def test_enumeration_orders():
    assert PermutationGroup.from_images([(1, 0, 2), (1, 2, 0)]).order == 6
    assert symmetric(5).order == 120
    w = wreath_action(wreath_action(cyclic(2), cyclic(2)), cyclic(2))
    assert (w.degree, w.order) == (8, 128)
    c2c3 = wreath_action(cyclic(2), cyclic(3))
    assert (c2c3.degree, c2c3.order) == (6, 18)


def test_orbits():
    assert symmetric(5).is_transitive()
    g = PermutationGroup.from_images([(1, 0, 2)])
    orbits, transitive = orbit_transitivity(g, {0, 1, 2})
    assert sorted(map(sorted, orbits)) == [[0, 1], [2]] and not transitive
    assert orbit_transitivity(g, {0, 1})[1]
    with pytest.raises(NotInvariant):
        orbit_transitivity(g, {0, 2})
    assert orbit_transitivity(PermutationGroup.from_images([(0,)]), {0})[1]


def test_pointwise_stabilizer():
    stab = pointwise_stabilizer(symmetric(5).elements, {2, 3, 4})
    assert sorted(stab) == sorted([Permutation.identity(5), P((0, 1))])
    assert pointwise_stabilizer(alternating(5).elements, {2, 3, 4}) == [Permutation.identity(5)]
    assert len(pointwise_stabilizer(symmetric(4).elements, set())) == 24


def test_minimal_generating_sets():
    S5 = symmetric(5)
    assert is_minimal_generating_set(S5, [P((0, 1)), P((0, 1, 2, 3, 4))])
    assert not is_minimal_generating_set(symmetric(3), list(symmetric(3).elements))
    C4 = cyclic(4)
    r = C4.generators[0]
    assert not is_minimal_generating_set(C4, [r, r * r])
    sub = minimal_generating_subset(S5)
    assert generates(S5, sub) and is_minimal_generating_set(S5, sub)


def test_derived_and_power():
    d = derived_or_power_subgroup(symmetric(3), "derived")
    assert len(d) == 3 and all(p.order() in (1, 3) for p in d)
    c222 = direct_product(cyclic(2), cyclic(2), cyclic(2))
    assert derived_or_power_subgroup(c222, "derived") == [Permutation.identity(6)]
    r = cyclic(4).generators[0]
    assert sorted(derived_or_power_subgroup(cyclic(4), "power", 2)) == sorted([r ** 0, r ** 2])


def test_build_standard_group():
    assert build_standard_group("symmetric", 5).order == 120
    assert build_standard_group("alternating", 5).order == 60
    assert build_standard_group("dihedral", 5).order == 10


def test_json_round_trip():
    g = wreath_action(cyclic(2), cyclic(3))
    h = PermutationGroup.from_json(g.to_json())
    assert h.degree == g.degree and h.elements == g.elements
