import pytest
from hypothesis import given, strategies as st

import oracles
from sepnoether import grp
from sepnoether.ffield import PrimeField

F = PrimeField(17)
I4 = 4  # square root of -1 mod 17


def q8():
    return grp.generate([[[0, I4], [I4, 0]], [[I4, 0], [0, 17 - I4]]], F, names=["b", "a"])


def diag_group(orders, p=17):
    fld = PrimeField(p)
    from sepnoether.ffield import element_of_order
    n = len(orders)
    gens = []
    for k, o in enumerate(orders):
        z = int(element_of_order(fld, o))
        gens.append([[z if (i == j == k) else int(i == j) for j in range(n)] for i in range(n)])
    return grp.generate(gens, fld)


def test_q8_basics():
    G = q8()
    assert G.order == 8
    assert sorted(G.element_order(i) for i in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert G.word_of(G.identity) in ("", "e", "1")
    assert len(oracles.closure(G.generators, 17)) == 8


def test_multiplication_table_is_a_group():
    G = q8()
    e = G.identity
    for i in range(G.order):
        assert G.mul(i, G.inv(i)) == e
        for j in range(G.order):
            for k in range(G.order):
                assert G.mul(G.mul(i, j), k) == G.mul(i, G.mul(j, k))


def test_modular_characteristic():
    with pytest.raises(grp.ModularCharacteristic):
        grp.generate([[[1, 1], [0, 1]]], PrimeField(3))


def test_closure_cap():
    with pytest.raises(grp.ClosureCapExceeded):
        grp.generate([[[3, 0], [0, 1]]], F, cap=4)


def test_singular_generator():
    with pytest.raises(grp.NotInvertible):
        grp.generate([[[1, 1], [1, 1]]], F)


def test_direct_sum_requires_same_generator_count():
    with pytest.raises(grp.GeneratorCountMismatch):
        grp.direct_sum([[[[1]]], [[[1]], [[1]]]])


@given(st.tuples(st.integers(0, 16), st.integers(0, 16)))
def test_orbit_stabilizer(v):
    G = q8()
    orb = grp.orbit(G, v)
    assert orb == oracles.brute_orbit(G.elements, v, 17)
    assert len(orb) * len(grp.stabilizer(G, v)) == G.order


@given(st.tuples(st.integers(0, 16), st.integers(0, 16)), st.integers(0, 7))
def test_same_orbit_finds_the_element(v, g):
    G = q8()
    w = grp.mat_vec(G.elements[g], v, 17)
    ok, h = grp.same_orbit(G, v, w)
    assert ok and grp.mat_vec(G.elements[h], v, 17) == w


def test_characters_multiplicative_and_count():
    G = q8()
    chars = grp.characters(G)
    assert len(chars) == 4  # |G/G'| for Q8
    for chi in chars:
        assert grp.is_multiplicative(G, chi)
    for a in chars:
        for b in chars:
            assert (a * b) in chars
        assert a.inverse() in chars


@pytest.mark.parametrize("orders", [(2,), (4, 2), (2, 2, 2), (4, 4), (2, 2, 4), (2, 2, 2, 2)])
def test_mu_matches_exhaustive_search(orders):
    G = diag_group(orders)
    want = oracles.brute_mu(list(range(G.order)), G.mul, G.identity)
    assert grp.mu(G) == want
    assert grp.mu(G, prune=False) == want


def test_mu_q8():
    G = q8()
    assert grp.mu(G) == oracles.brute_mu(list(range(8)), G.mul, G.identity)


def test_normal_subgroups_and_center():
    G = q8()
    assert grp.center(G).order == 2
    assert all(grp.is_normal(G, h) for h in grp.subgroup_lattice(G))
    assert len(grp.subgroup_lattice(G)) == 6


def test_quotient_by_center():
    G = q8()
    Z = grp.center(G)
    # Q8 -> C2 x C2 with b -> diag(-1, 1), a -> diag(1, -1) kills the center
    imgs = G.images([[[16, 0], [0, 1]], [[1, 0], [0, 16]]])
    assert grp.kernel(imgs) == Z
    Q = grp.quotient_rep(G, imgs, Z)
    assert Q.order == 4
    with pytest.raises(grp.GroupError):
        grp.quotient_rep(G, G.elements, Z)


def test_automorphism_counts():
    # |Aut(Q8)| = 24, |Aut(C2^3)| = |GL(3,2)| = 168
    assert len(grp.automorphisms(q8())) == 24
    assert len(grp.automorphisms(diag_group((2, 2, 2)))) == 168


def test_automorphisms_preserve_products():
    G = q8()
    for a in grp.automorphisms(G):
        for i in range(8):
            for j in range(8):
                assert a[G.mul(i, j)] == G.mul(a[i], a[j])


def test_images_checks_homomorphism():
    G = q8()
    with pytest.raises(grp.NotAHomomorphism):
        # b a b^-1 = a^-1 fails: b -> diag(-1, 1), a -> swap
        G.images([[[16, 0], [0, 1]], [[0, 1], [1, 0]]])
