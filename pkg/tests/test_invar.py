import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sepnoether import catalog, grp, invar, linalg
from sepnoether.groebner import buchberger
from sepnoether.invar import Block, ModuleSpec, make_block
from sepnoether.mpoly import LEX, Polynomial, format_polynomial, monomials_of_degree, parse_polynomial


@pytest.fixture(scope="module")
def dic8():
    return catalog.build("dic:8")


@pytest.fixture(scope="module")
def w1(dic8):
    return dic8.module("W1")


def fixed_by_substitution(f, module, weight=None):
    """f(M_g x) = chi(g) f(x) for every generator, checked by direct substitution."""
    for k, g in enumerate(module.group.gen_index):
        M = module.element_matrices[g]
        imgs = invar._linear_images(M, module)
        c = 1 if weight is None else weight(g)
        if f.substitute(imgs) != f.scale(c):
            return False
    return True


def test_dic8_generators(w1):
    gs = invar.minimal_generators(w1)
    assert gs.degrees == [4, 4, 6]
    assert gs.beta == 6
    for f in gs.polynomials():
        assert fixed_by_substitution(f, w1)


def test_dic8_hilbert_ideal_lex(w1):
    gs = invar.minimal_generators(w1)
    I = invar.hilbert_ideal(w1, gs)
    I.order = LEX
    gb = buchberger(I)
    assert {format_polynomial(g, LEX) for g in gb.elements} == {"x1^2*x2^2", "x1^4 + x2^4", "x2^6", "x1*x2^5"}


def test_reynolds_value(w1):
    # the 8 matrices send x1^4 to x1^4 or x2^4, four times each, so R(x1^4) = (x1^4 + x2^4)/2
    f = parse_polynomial("x1^4", w1.ctx, w1.field)
    assert invar.reynolds(f, w1) == parse_polynomial("9*x1^4 + 9*x2^4", w1.ctx, w1.field)


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(0, 16), max_size=5))
def test_reynolds_idempotent_and_invariant(w1, terms):
    f = Polynomial(w1.ctx, w1.field, terms)
    r = invar.reynolds(f, w1)
    assert invar.reynolds(r, w1) == r
    assert fixed_by_substitution(r, w1)
    for g in range(w1.order):
        assert invar.act(g, r, w1) == r


MODULE_CASES = [("dic:8", "W1"), ("dic:12", "W1"), ("(16,12)", "W1+W2"), ("a4", "W"), ("(16,3)", "W1+U(1,1,i)"),
                ("(16,4)", "W2")]


@pytest.mark.parametrize("key,sel", MODULE_CASES)
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_kernel_basis_matches_reynolds_rank(key, sel, d):
    """Two routes to dim K[V]^G_d: nullspace of the stacked action vs rank of Reynolds images."""
    b = catalog.build(key)
    m = b.module(sel)
    basis = invar.invariant_basis(m, d)
    mons = monomials_of_degree(m.ctx, d)
    rows = [invar.reynolds(Polynomial.monomial(m.ctx, m.field, e), m).to_vector(mons) for e in mons]
    assert basis.dim == linalg.rank(np.array(rows, dtype=np.int64), m.field.p)
    for f in basis.basis:
        assert fixed_by_substitution(f, m)


def test_relative_invariants(dic8):
    m = dic8.module("W1")
    for chi_block in dic8.irreducibles[1:]:
        chi = next(c for c in grp.characters(dic8.group)
                   if tuple(c.gen_values) == tuple(M[0][0] for M in chi_block.matrices))
        for d in (2, 3, 4):
            for f in invar.invariant_basis(m, d, weight=chi).basis:
                assert fixed_by_substitution(f, m, chi)


def test_character_lines_fast_path_agrees_with_kernel_route():
    b = catalog.build("(16,10)")
    blocks = [bl for bl in b.irreducibles if not all(M[0][0] == 1 for M in bl.matrices)][:4]
    fast = ModuleSpec(b.group, blocks)
    slow = ModuleSpec(b.group, [Block(bl.name, bl.matrices, "W", bl.label) for bl in blocks])
    gf, gsl = invar.minimal_generators(fast), invar.minimal_generators(slow)
    assert gf.degrees == gsl.degrees
    assert sorted(md for _, md in gf.generators) == sorted(md for _, md in gsl.generators)


def test_generators_span_every_degree(w1):
    """Products of generators span the invariants in each degree up to 12."""
    gens = invar.minimal_generators(w1).polynomials()
    for d in range(1, 13):
        mons = monomials_of_degree(w1.ctx, d)
        prods = []

        def rec(start, cur, deg):
            if deg == d:
                prods.append(cur.to_vector(mons))
                return
            for i in range(start, len(gens)):
                if deg + gens[i].degree() <= d:
                    rec(i, cur * gens[i], deg + gens[i].degree())

        rec(0, Polynomial.constant(w1.ctx, w1.field, 1), 0)
        span = linalg.rank(np.array(prods, dtype=np.int64), 17) if prods else 0
        assert span == invar.invariant_basis(w1, d).dim


def test_central_sign(w1, dic8):
    z = invar.central_sign(w1)
    assert z is not None and dic8.group.element_order(z) == 2
    assert invar.central_sign(dic8.module("W1+U(1,-1)")) is None


def test_irreducibility(dic8):
    W1 = dic8.block("W1")
    assert invar.is_irreducible(W1, 17)
    sum_block = make_block("s", [grp.block_diag([M, M]) for M in W1.matrices], 17)
    assert not invar.is_irreducible(sum_block, 17)
    assert invar.intertwiner_dim(W1, W1, 17) == 1
    assert invar.intertwiner_dim(W1, dic8.block("U(1,-1)"), 17) == 0


def test_twist_by_automorphism_gives_isomorphic_block(dic8):
    W1 = dic8.block("W1")
    for a in grp.automorphisms(dic8.group)[:6]:
        t = invar.twisted(W1, dic8.group, a)
        assert invar.intertwiner_dim(W1, t, 17) == 1


def test_module_rejects_non_homomorphism(dic8):
    bad = make_block("y", [[[16, 0], [0, 1]], [[0, 1], [1, 0]]], 17)
    with pytest.raises(grp.NotAHomomorphism):
        ModuleSpec(dic8.group, [bad])


def test_beta_of_sum_families_parity(dic8):
    rows = invar.beta_of_sum_families([dic8.module("W1"), dic8.module("W1+U(-1,1)")])
    assert rows[0].parity_even and rows[0].beta == 6
    assert not rows[1].parity_even


def test_c4c4_w1_generators():
    b = catalog.build("(16,4)")
    m = b.module("W1")
    gs = invar.minimal_generators(m)
    assert gs.degrees == [2, 4]
    assert {format_polynomial(f) for f in gs.polynomials()} == {"x1*x2", "x1^4 + x2^4"}


def test_sign_line_and_trivial_conventions():
    b = catalog.build("c2")
    gs = invar.minimal_generators(b.modules["sign"])
    assert [format_polynomial(f) for f in gs.polynomials()] == ["x^2"]
    assert gs.beta == 2
    assert invar.minimal_generators(b.module("U(1)")).beta == 1
    assert invar.minimal_generators(ModuleSpec(b.group, [])).beta == 0


def test_hilbert_ideal_of_trivial_group():
    from sepnoether.ffield import PrimeField
    G = grp.generate([[[1]]], PrimeField(7))
    m = ModuleSpec(G, [make_block("x", [[[1]]], 7, role="R")])
    I = invar.hilbert_ideal(m, invar.minimal_generators(m))
    assert [format_polynomial(f) for f in I.generators] == ["x"]


def test_sum_family_values():
    b = catalog.build("(16,12)")
    us = [u.label for u in b.irreducibles[2:]]
    for w in ("W1", "W2"):
        for u in us:
            assert invar.minimal_generators(b.module(f"{w}+{u}")).beta == 6
    c = catalog.build("(16,4)")
    row = invar.beta_of_sum_families([c.module("W1+W2")])[0]
    assert row.beta <= 6 and row.parity_even and all(d % 2 == 0 for d in row.degrees)


@pytest.mark.parametrize("key,sel", [
    ("dic:8", "W1"), ("dic:12", "witness"), ("(16,4)", "W1+W2"), ("(12,3)", "natural"),
    ("(16,13)", "W1+sign"), ("(16,12)", "W1+W2+U(1,1,-1)"), ("d2nxc2:8", "witness"),
])
def test_early_stop_matches_full_scan(key, sel):
    m = catalog.build(key).module(sel)
    fast = invar.minimal_generators(m)
    full = invar.minimal_generators(m, early_stop=False)
    assert [md for _, md in fast.generators] == [md for _, md in full.generators]
    assert fast.polynomials() == full.polynomials()


def test_secondary_bound_dic8(w1):
    # primaries x1^2*x2^2 and x1^4 + x2^4 give 3 + 3
    assert invar.minimal_generators(w1).secondary_bound == (6,)
    assert invar.minimal_generators(w1, early_stop=False).secondary_bound is None


def test_nullcone_check():
    b = catalog.build("dic:8")
    m = b.module("W1")
    x1, x2 = (Polynomial.var(m.ctx, m.field, i) for i in range(2))
    assert invar._is_nullcone_zero([x1 * x2, x1 ** 4 + x2 ** 4], [0, 1])
    assert not invar._is_nullcone_zero([x1 * x2, x1 ** 4], [0, 1])
