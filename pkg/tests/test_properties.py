"""Cross-cutting properties: field independence, dual routes, monotonicity."""

import pytest
from hypothesis import given, strategies as st

from sepnoether import catalog, grp, invar, septool


def group_betasep(key, p):
    b = catalog.build(key, p)
    return septool.betasep_group(key, b.group, b.irreducibles, b.witnesses)


@pytest.mark.parametrize("key,p1,p2", [("c2", 3, 5), ("dic:8", 17, 41), ("dic:12", 13, 37), ("(8,5)", 17, 41),
                                       ("(9,2)", 19, 37), ("ic2:m:16", 17, 97)])
def test_field_independence_of_betasep(key, p1, p2):
    a, b = group_betasep(key, p1), group_betasep(key, p2)
    assert (a.value, a.lower_bound, a.mu) == (b.value, b.lower_bound, b.mu)


@pytest.mark.parametrize("key,sel,p1,p2", [("dic:8", "W1", 17, 41), ("(16,4)", "W1+W2+U(1,i)", 17, 97),
                                           ("(16,12)", "W1+W2+U(1,1,-1)", 17, 113), ("a4", "W", 37, 73)])
def test_field_independence_of_beta(key, sel, p1, p2):
    d1 = invar.minimal_generators(catalog.build(key, p1).module(sel)).degrees
    d2 = invar.minimal_generators(catalog.build(key, p2).module(sel)).degrees
    assert d1 == d2


@pytest.mark.parametrize("key", ["dic:8", "dic:12", "ic2:sd:16", "d2nxc2:8", "(16,3)"])
def test_witness_and_radical_agree_on_witness_modules(key):
    """Lower bound from a separated pair equals the exact radical value on the same module."""
    b = catalog.build(key)
    wp = b.witnesses[0]
    lo = septool.verify_witness(wp).degree
    hi = septool.betasep_via_radical(wp.module)
    assert hi.exact and lo == hi.value


@pytest.mark.parametrize("key,sel", [("dic:8", "W1"), ("(16,4)", "W1"), ("(16,4)", "W2"), ("a4", "W")])
def test_betasep_at_most_beta(key, sel):
    m = catalog.build(key).module(sel)
    gs = invar.minimal_generators(m)
    assert septool.betasep_via_radical(m, gs).value <= gs.beta <= m.order


@given(st.sampled_from(["U(1,-1)", "U(-1,1)", "U(-1,-1)"]))
def test_betasep_monotone_under_summands(extra):
    b = catalog.build("dic:8")
    small = septool.betasep_via_radical(b.module("W1")).value
    big = septool.betasep_via_radical(b.module("W1+" + extra)).value
    assert small <= big


def test_character_multiplicativity_all_table_groups():
    for e in catalog.table_entries():
        b = e.build()
        for chi in grp.characters(b.group):
            assert grp.is_multiplicative(b.group, chi)


def test_orbit_stabilizer_on_table_modules():
    for key, v in [("a4", (1, 2, 3, 4)), ("(16,3)", (1, 0, 1, 1)), ("pauli", (1, 2, 1))]:
        b = catalog.build(key)
        rep = b.modules["witness"].rep
        assert len(grp.orbit(rep, v)) * len(grp.stabilizer(rep, v)) == rep.order
