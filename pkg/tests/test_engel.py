import random

import pytest

from engelgroups.engel import (commutator_chain, commutator_with, engel_sets, engel_subgroup,
                               engel_subgroup_aut, engel_verdict, is_left_engel)
from engelgroups.errors import CapExceeded, NotMember, NotNormalized, NotSubgroup
from engelgroups.group import coset_action
from engelgroups.harness.recipes import (alternating_group, cyclic_group, dihedral_group, direct_product,
                                         symmetric_group)
from engelgroups.perm import commutator, iterated_commutator
from engelgroups.series import fitting, is_subnormal, normal_closure

from conftest import P, SMALL_GROUPS, closure_elements, gens


def engel_subgroup_oracle(G, g, n):
    """<[x, g, ..., g] : x in G> straight from the definition."""
    C = {tuple(iterated_commutator(x, g, n)) for x in G.elements()}
    return closure_elements(C, G.degree)


@pytest.mark.parametrize("element,n,order", [("(1 2 3)", 2, 1), ("(1 2)", 3, 3), ("(1 2)", 1, 3),
                                             ("(1 2 3)", 1, 3)])
def test_engel_subgroup_sym3(element, n, order):
    assert engel_subgroup(symmetric_group(3), P(element, 3), n).order == order


def test_central_element_gives_trivial_subgroup():
    G = dihedral_group(4)
    z = P("(1 3)(2 4)", 4)
    assert engel_subgroup(G, z, 1).order == 1


@pytest.mark.parametrize("name", ["sym4", "alt4", "d8", "sl23", "sym5"])
def test_engel_subgroup_against_definition(name):
    G = SMALL_GROUPS[name]()
    for g in G.class_representatives():
        for n in (1, 2, 3):
            E = engel_subgroup(G, g, n)
            assert {tuple(x) for x in E.elements()} == engel_subgroup_oracle(G, g, n)


def test_engel_sets_shrink_to_definition():
    G = symmetric_group(4)
    g = P("(1 2 3 4)", 4)
    sets = engel_sets(G, g, 4)
    for k, C in enumerate(sets, start=1):
        assert C == frozenset(tuple(iterated_commutator(x, g, k)) for x in G.elements())


def test_engel_subgroup_errors():
    G = alternating_group(4)
    with pytest.raises(NotMember):
        engel_subgroup(G, P("(1 2)", 4), 1)
    with pytest.raises(ValueError):
        engel_subgroup(G, P("(1 2 3)", 4), 0)
    with pytest.raises(CapExceeded):
        engel_subgroup(G, P("(1 2 3)", 4), 41)


def test_verdict_examples():
    G = symmetric_group(3)
    trace = engel_verdict(G, P("(1 2 3)", 3))
    assert trace.is_engel and trace.engel_n == 2
    trace = engel_verdict(G, P("(1 2)", 3))
    assert not trace.is_engel
    cycle = trace.sets[trace.cycle_start - 1:trace.cycle_start - 1 + trace.cycle_length]
    assert any(tuple(P("(1 2 3)", 3)) in C for C in cycle)
    assert trace.to_dict()["verdict"] == "not_engel"


def test_nilpotent_group_is_engel():
    G = dihedral_group(8)
    assert all(is_left_engel(G, g) for g in G.elements())
    # class 3 bounds the Engel degree
    assert max(engel_verdict(G, g).engel_n for g in G.elements()) <= 3


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_baer(name):
    G = SMALL_GROUPS[name]()
    F = fitting(G)
    for g in G.class_representatives():
        assert is_left_engel(G, g) == F.contains(g)


@pytest.mark.parametrize("name", ["sym4", "sym5", "gl23"])
def test_centralizer_normalizes_engel_subgroup(name):
    G = SMALL_GROUPS[name]()
    for g in G.class_representatives():
        cent = [x for x in G.elements() if x * g == g * x]
        for n in (1, 2):
            E = engel_subgroup(G, g, n)
            assert all(E.conjugate(c) == E for c in cent)


@pytest.mark.parametrize("build,normal", [
    (lambda: symmetric_group(4), ["(1 2)(3 4)", "(1 3)(2 4)"]),
    (lambda: direct_product([symmetric_group(4), symmetric_group(3)]), ["(5 6 7)"]),
    (lambda: symmetric_group(5), ["(1 2 3)"]),
])
def test_engel_subgroup_commutes_with_quotients(build, normal):
    G = build()
    N = normal_closure(G, gens(normal, G.degree))
    image, hom = coset_action(G, N)
    for g in G.class_representatives():
        for n in (1, 2):
            assert hom.image_group(engel_subgroup(G, g, n)) == engel_subgroup(image, hom(g), n)


def test_commutator_chain_examples():
    chain = commutator_chain(symmetric_group(3), P("(1 2)", 3))
    assert chain.orders() == [6, 3]
    chain = commutator_chain(dihedral_group(4), P("(1 3)(2 4)", 4))
    assert chain.stable.order == 1
    chain = commutator_chain(symmetric_group(5), P("(1 2)", 5))
    assert chain.stable == alternating_group(5)


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_commutator_chain_properties(name):
    G = SMALL_GROUPS[name]()
    for g in G.class_representatives():
        chain = commutator_chain(G, g)
        H = chain.stable
        assert commutator_with(H, g) == H
        assert all(is_subnormal(G, T) for T in chain.terms)
        if H.order == 1:
            assert is_left_engel(G, g)


def test_commutator_with_matches_definition():
    G = symmetric_group(4)
    g = P("(1 2 3 4)", 4)
    ref = closure_elements([commutator(x, g) for x in G.elements()], 4)
    assert {tuple(x) for x in commutator_with(G, g).elements()} == ref


def test_aut_examples():
    D14 = dihedral_group(7)
    C7 = gens(["(1 2 3 4 5 6 7)"], 7)
    a = P("(2 7)(3 6)(4 5)", 7)
    for n in (1, 2, 3, 4):
        assert engel_subgroup_aut(D14, C7, a, n) == C7
    assert engel_subgroup_aut(C7, C7, C7.generators[0], 2).order == 1
    A = direct_product([alternating_group(5), alternating_group(5)])
    swap = P("(1 6)(2 7)(3 8)(4 9)(5 10)", 10)
    ambient = A.extended([swap])
    assert engel_subgroup_aut(ambient, A, swap, 2) == A


def test_aut_matches_inner_case():
    G = symmetric_group(4)
    for g in G.class_representatives():
        assert engel_subgroup_aut(G, G, g, 2) == engel_subgroup(G, g, 2)


def test_aut_errors():
    S5 = symmetric_group(5)
    with pytest.raises(NotNormalized):
        engel_subgroup_aut(S5, gens(["(1 2 3)"], 5), P("(3 4)", 5), 1)
    with pytest.raises(NotSubgroup):
        engel_subgroup_aut(alternating_group(5), gens(["(1 2)"], 5), P("(1 2 3)", 5), 1)
    with pytest.raises(NotMember):
        engel_subgroup_aut(alternating_group(5), alternating_group(5), P("(1 2)", 5), 1)
    with pytest.raises(CapExceeded):
        engel_subgroup_aut(S5, S5, P("(1 2)", 5), 1, cap=100)


def test_random_elements_verdict_matches_fitting():
    G = direct_product([symmetric_group(4), cyclic_group(3)])
    F = fitting(G)
    rng = random.Random(5)
    for _ in range(20):
        g = G.random_element(rng)
        assert engel_verdict(G, g, with_orders=False).is_engel == F.contains(g)
