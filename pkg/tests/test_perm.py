import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SymPerm

from engelgroups.errors import DegreeMismatch, InvalidPermutation, ParseError
from engelgroups.perm import (Permutation, commutator, compose, conjugate, format_cycles, inverse,
                              iterated_commutator, parse_cycles)

from conftest import P


def perms(degree):
    return st.permutations(list(range(degree))).map(Permutation)


@pytest.mark.parametrize("text,degree,images", [
    ("()", 3, (0, 1, 2)),
    ("(1 2 3)", 3, (1, 2, 0)),
    ("(1 2)(3 4)", 5, (1, 0, 3, 2, 4)),
    ("(1 3)", None, (2, 1, 0)),
])
def test_parse(text, degree, images):
    assert tuple(parse_cycles(text, degree)) == images


@pytest.mark.parametrize("text", ["(1 2", "(1 2 1)", "(0 1)", "(1 a)", "1 2)"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_cycles(text, 5)


def test_parse_error_offset():
    with pytest.raises(ParseError) as info:
        parse_cycles("(1 2)(3 4", 5)
    assert info.value.offset is not None


def test_point_beyond_degree():
    with pytest.raises(ParseError):
        parse_cycles("(1 7)", 5)


def test_invalid_images():
    with pytest.raises(InvalidPermutation):
        Permutation([0, 0, 1])


def test_identity_prints_empty_cycle():
    assert str(Permutation.identity(4)) == "()"
    assert format_cycles(P("(2 3)(1 4 5)", 5)) == "(1 4 5)(2 3)"


def test_product_applies_left_factor_first():
    p, q = P("(1 2)", 3), P("(2 3)", 3)
    # 1 -> 2 under p, then 2 -> 3 under q
    assert (p * q).image(0) == 2
    assert p * q == compose(p, q)


def test_commutator_example():
    assert commutator(P("(1 2 3)", 3), P("(1 2)", 3)) == P("(1 2 3)", 3)


def test_conjugate_example():
    assert conjugate(P("(1 2)", 3), P("(1 2 3)", 3)) == P("(2 3)", 3)


def test_commutator_with_identity():
    p = P("(1 2 3 4)", 4)
    assert commutator(p, Permutation.identity(4)).is_identity()


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(P("(1 2)", 2), P("(1 2)", 3))


def test_iterated_commutator():
    x, g = P("(1 2 3)", 3), P("(1 2)", 3)
    assert iterated_commutator(x, g, 0) == x
    assert iterated_commutator(x, g, 2) == commutator(commutator(x, g), g)


@pytest.mark.parametrize("text,order,sign", [("()", 1, 1), ("(1 2)", 2, -1), ("(1 2 3)(4 5)", 6, -1),
                                             ("(1 2 3 4)(5 6)", 4, 1)])
def test_order_and_sign(text, order, sign):
    p = P(text, 6)
    assert p.order() == order
    assert p.sign() == sign


@settings(max_examples=200)
@given(perms(6), perms(6))
def test_product_matches_sympy(p, q):
    # sympy also composes left to right: (p*q)(i) = q(p(i))
    assert list(p * q) == (SymPerm(list(p)) * SymPerm(list(q))).array_form


@settings(max_examples=200)
@given(perms(6), perms(6), perms(6))
def test_group_axioms(p, q, r):
    e = Permutation.identity(6)
    assert (p * q) * r == p * (q * r)
    assert p * e == p == e * p
    assert p * inverse(p) == e
    assert conjugate(p, q) == inverse(q) * p * q
    assert commutator(p, q) == inverse(p) * conjugate(p, q)


@settings(max_examples=200)
@given(perms(5), perms(5))
def test_commutator_trivial_iff_commute(p, q):
    assert commutator(p, q).is_identity() == (p * q == q * p)


@settings(max_examples=200)
@given(perms(7))
def test_cycle_round_trip(p):
    assert parse_cycles(format_cycles(p), 7) == p
    assert p.order() == SymPerm(list(p)).order()


@settings(max_examples=100)
@given(perms(6), perms(6))
def test_sign_is_multiplicative(p, q):
    assert (p * q).sign() == p.sign() * q.sign()
