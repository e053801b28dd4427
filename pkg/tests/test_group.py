import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from engelgroups.config import use_caps
from engelgroups.errors import CapExceeded, DegreeMismatch, IndexCapExceeded, NotSubgroup
from engelgroups.group import (Group, Homomorphism, core, coset_action, double_coset_representatives,
                               intersection, join, right_cosets)
from engelgroups.harness.recipes import alternating_group, dihedral_group, psl2, symmetric_group
from engelgroups.perm import Permutation, _mul

from conftest import P, closure_elements, gens


@pytest.mark.parametrize("texts,degree,order", [
    ([], 3, 1),
    (["(1 2)", "(1 2 3)"], 3, 6),
    (["(1 2 3 4 5)", "(1 2 3)"], 5, 60),
    (["(1 2 3 4)", "(1 3)"], 4, 8),
    (["(1 2)(3 4)", "(1 3)(2 4)"], 4, 4),
])
def test_order_examples(texts, degree, order):
    assert gens(texts, degree).order == order


@pytest.mark.parametrize("texts,degree,element,expected", [
    (["(1 2)", "(1 2 3)"], 3, "(1 2)", True),
    (["(1 2 3 4 5)", "(1 2 3)"], 5, "(1 2)", False),
    (["(1 2 3 4)"], 4, "(1 3)(2 4)", True),
    (["(1 2 3 4)"], 4, "(1 3)", False),
])
def test_contains_examples(texts, degree, element, expected):
    assert gens(texts, degree).contains(P(element, degree)) is expected


def test_order_matches_exhaustive_closure(small_group):
    els = closure_elements(small_group.generators, small_group.degree)
    assert small_group.order == len(els)
    assert {tuple(x) for x in small_group.elements()} == els


def test_contains_agrees_with_enumeration(small_group):
    els = closure_elements(small_group.generators, small_group.degree)
    assert all(small_group.contains(x) for x in els)
    rng = random.Random(1)
    d = small_group.degree
    for _ in range(100):
        x = list(range(d))
        rng.shuffle(x)
        assert small_group.contains(x) == (tuple(x) in els)


@pytest.mark.parametrize("build", [lambda: symmetric_group(6), lambda: psl2(11), lambda: psl2(13),
                                   lambda: dihedral_group(9), lambda: psl2(7, True)])
def test_order_matches_sympy(build):
    G = build()
    ref = PermutationGroup([SymPerm(list(g)) for g in G.generators])
    assert G.order == ref.order()


def test_elements_cap():
    with pytest.raises(CapExceeded):
        alternating_group(5).elements(cap=10)
    assert len(symmetric_group(3).elements(cap=10)) == 6
    assert len(alternating_group(4).elements(cap=100)) == 12


def test_equality_is_mutual_membership():
    A = gens(["(1 2)", "(1 2 3)"], 3)
    B = gens(["(1 3)", "(2 3)"], 3)
    assert A == B
    assert hash(A) == hash(B)
    assert gens(["(1 2 3)"], 3) != A
    assert gens(["(1 2 3)"], 3) < A


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        Group([P("(1 2)", 2), P("(1 2)", 3)])


def test_conjugacy_classes_partition():
    G = symmetric_group(5)
    classes = G.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 10, 15, 20, 20, 24, 30]
    assert sum(len(c) for c in classes) == G.order


def test_join_and_intersection():
    A = gens(["(1 2 3)"], 4)
    B = gens(["(1 2)(3 4)", "(1 3)(2 4)"], 4)
    assert join(A, B).order == 12
    assert intersection(symmetric_group(4), alternating_group(4)).order == 12
    assert intersection(A, B).order == 1


def test_stabilizer_and_orbits():
    G = symmetric_group(5)
    assert G.stabilizer(0).order == 24
    assert gens(["(1 2)", "(3 4 5)"], 6).orbits() == [(0, 1), (2, 3, 4), (5,)]


@pytest.mark.parametrize("G,N,image_order,points", [
    (symmetric_group(3), alternating_group(3), 2, 2),
    (symmetric_group(4), gens(["(1 2)(3 4)", "(1 3)(2 4)"], 4), 6, 6),
    (alternating_group(5), alternating_group(5), 1, 1),
])
def test_coset_action_examples(G, N, image_order, points):
    image, hom = coset_action(G, N)
    assert image.order == image_order
    assert image.degree == points
    assert hom.kernel() == N


def test_coset_action_nonnormal_kernel_is_core():
    G = symmetric_group(4)
    H = G.stabilizer(0)
    image, hom = coset_action(G, H)
    assert image.degree == 4
    assert hom.kernel() == core(G, H)
    assert core(G, H).order == 1


def test_coset_action_is_homomorphism():
    G = symmetric_group(4)
    N = gens(["(1 2)(3 4)", "(1 3)(2 4)"], 4)
    image, hom = coset_action(G, N)
    rng = random.Random(3)
    for _ in range(100):
        x, y = G.random_element(rng), G.random_element(rng)
        assert hom(x * y) == hom(x) * hom(y)
    assert image.order * N.order == G.order


def test_coset_action_errors():
    with pytest.raises(NotSubgroup):
        coset_action(alternating_group(4), gens(["(1 2)"], 4))
    with pytest.raises(IndexCapExceeded):
        coset_action(symmetric_group(6), Group.trivial(6), cap=100)


def test_right_cosets_partition():
    G = symmetric_group(4)
    H = gens(["(1 2 3)"], 4)
    reps, where, _ = right_cosets(G, H)
    assert len(reps) == 8
    cosets = {frozenset(tuple(_mul(h, r)) for h in H.elements()) for r in reps}
    assert len(cosets) == 8 and sum(len(c) for c in cosets) == 24


def test_double_cosets():
    G = symmetric_group(5)
    H = G.stabilizer(0)
    # Sym(5) is 2-transitive: Sym(4) \ Sym(5) / Sym(4) has two double cosets
    assert len(double_coset_representatives(G, H, H)) == 2
    T = Group.trivial(5)
    assert len(double_coset_representatives(G, H, T)) == 5


def test_graph_homomorphism():
    S4 = symmetric_group(4)
    C2 = gens(["(1 2)"], 2)
    sign = Homomorphism(S4, C2, [P("(1 2)", 2) if g.sign() < 0 else Permutation.identity(2)
                                 for g in S4.generators])
    assert sign.is_homomorphism()
    assert sign.kernel() == alternating_group(4)
    assert sign(P("(1 2 3)", 4)).is_identity()
    # a 4-cycle and a transposition cannot map to different elements of C2
    G = gens(["(1 2 3 4)", "(1 2)"], 4)
    bad = Homomorphism(G, C2, [P("(1 2)", 2), Permutation.identity(2)])
    assert not bad.is_homomorphism()


def test_use_caps_overrides_default():
    with use_caps(group_order=10):
        with pytest.raises(CapExceeded):
            alternating_group(5).elements()
    assert len(alternating_group(5).elements()) == 60


@settings(max_examples=60, deadline=None)
@given(st.lists(st.permutations(list(range(6))), min_size=1, max_size=3))
def test_random_generated_groups(perms):
    G = Group(perms, 6)
    els = closure_elements(G.generators, 6)
    assert G.order == len(els)
    x = G.random_element(random.Random(len(els)))
    assert tuple(x) in els
