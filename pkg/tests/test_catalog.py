import pytest

from sepnoether import catalog, grp, invar, septool

TABLE = {"(8,5)": (4, 4), "(9,2)": (5, 4), "(16,2)": (7, 6), "(16,10)": (6, 6), "(16,14)": (5, 5),
         "(12,3)": (6, 6), "(16,3)": (6, 6), "(16,4)": (7, 6), "(16,12)": (7, 6), "(16,13)": (7, 7)}


def test_expected_table():
    got = {k: (b, s) for k, b, s, _ in catalog.expected_table()}
    assert got == TABLE


@pytest.mark.parametrize("alias,key", [("a4", "(12,3)"), ("pauli", "(16,13)"), ("Q8", "dic:8"), ("dic8", "dic:8"),
                                       ("m16", "ic2:m:16"), ("SD16", "ic2:sd:16"), ("d16", "ic2:d:16")])
def test_aliases(alias, key):
    assert catalog.get(alias).key == key


@pytest.mark.parametrize("bad", ["dic:7", "ic2:m:12", "ic2:q:16", "d2nxc2:10", "d2nxc2:6"])
def test_bad_parameters(bad):
    with pytest.raises((catalog.BadParameter, catalog.UnknownEntry)):
        catalog.get(bad)


def test_unknown_entry():
    with pytest.raises(catalog.UnknownEntry):
        catalog.get("(16,7)")


def test_family_values():
    for m in (2, 3, 4, 5):
        e = catalog.get(f"dic:{4 * m}")
        assert (e.beta, e.betasep) == (2 * m + 2, 2 * m + 2)
    for kind in ("m", "sd", "d"):
        assert catalog.get(f"ic2:{kind}:16").betasep == 9
    for n in (4, 6, 8):
        assert catalog.get(f"d2nxc2:{2 * n}").betasep == n + 2


@pytest.mark.parametrize("key", ["c2", "dic:8", "dic:12", "(12,3)", "(16,3)", "(16,4)", "(16,12)", "(16,13)",
                                 "(8,5)", "(9,2)", "(16,2)", "(16,10)", "(16,14)", "ic2:m:16", "ic2:d:16",
                                 "ic2:sd:16", "d2nxc2:8"])
def test_irreducible_lists_verify(key):
    b = catalog.build(key)
    assert b.group.order == b.entry.order
    info = septool.verify_irreducibles(b.group, b.irreducibles)
    assert info["sum_dim_squared"] == b.entry.order
    assert max(x.size for x in b.irreducibles) == b.entry.maxdim


@pytest.mark.parametrize("key", ["dic:8", "dic:12", "dic:16", "(12,3)", "(16,3)", "(16,4)", "(16,12)", "(16,13)",
                                 "ic2:m:16", "ic2:sd:16", "ic2:d:16", "d2nxc2:8"])
def test_witness_claims(key):
    b = catalog.build(key)
    for wp in b.witnesses:
        assert septool.verify_witness(wp).degree == wp.claimed == b.entry.betasep


def test_default_primes():
    assert catalog.get("a4").default_prime() == 37
    assert catalog.get("dic:12").default_prime() == 13
    assert catalog.get("d2nxc2:12").default_prime() == 73
    for e in catalog.entries():
        p = e.default_prime()
        assert (p - 1) % e.order == 0 and p > (e.maxdim - 1) * e.order


def test_root_unavailable():
    with pytest.raises(catalog.RootUnavailable):
        catalog.build("dic:8", 13)


def test_module_selector():
    b = catalog.build("(16,12)")
    m = b.module("W1+W2+U(1,1,-1)")
    assert m.describe() == "W1+W2+U(1,1,-1)"
    assert m.dim == 5
    with pytest.raises(catalog.UnknownEntry):
        b.module("W7")


def test_automorphisms_permute_irreducibles():
    b = catalog.build("(16,4)")
    autos = catalog.automorphisms(b)
    perms = septool.irreducible_permutations(b.group, b.irreducibles, autos)
    n = len(b.irreducibles)
    for pm in perms:
        assert sorted(pm) == list(range(n))
        # dimensions are preserved
        assert all(b.irreducibles[i].size == b.irreducibles[pm[i]].size for i in range(n))


def test_automorphism_transport_preserves_beta():
    """beta of a module equals beta of its twist by any automorphism."""
    b = catalog.build("(16,4)")
    autos = catalog.automorphisms(b)
    m = b.module("W1+U(1,i)")
    base = invar.minimal_generators(m).degrees
    for a in autos[:: max(1, len(autos) // 4)]:
        tw = invar.ModuleSpec(b.group, [invar.twisted(x, b.group, a) for x in m.blocks])
        assert invar.minimal_generators(tw).degrees == base


def test_c4c4_relations():
    b = catalog.build("(16,4)")
    p = b.field.p
    for blk in b.irreducibles:
        a, bb = blk.matrices
        a4 = grp.mat_mul(grp.mat_mul(a, a, p), grp.mat_mul(a, a, p), p)
        b4 = grp.mat_mul(grp.mat_mul(bb, bb, p), grp.mat_mul(bb, bb, p), p)
        one = grp.identity_matrix(blk.size)
        assert a4 == one and b4 == one
        lhs = grp.mat_mul(grp.mat_mul(bb, a, p), grp.mat_inv(bb, p), p)
        assert lhs == grp.mat_mul(grp.mat_mul(a, a, p), a, p)


@pytest.mark.parametrize("key", ["dic:8", "(12,3)", "(16,3)", "(16,4)", "(16,12)", "(16,13)", "(8,5)", "(16,2)"])
def test_character_count_matches_catalogue(key):
    b = catalog.build(key)
    assert len(grp.characters(b.group)) == sum(1 for x in b.irreducibles if x.size == 1)


def test_build_at_other_primes():
    b = catalog.build("(16,12)", 97)
    assert [x.size for x in b.irreducibles] == [2, 2] + [1] * 8
    d = catalog.build("dic:12", 13)
    assert d.group.order == 12 and d.field.p == 13
