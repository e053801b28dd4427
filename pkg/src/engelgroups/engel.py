"""Engel sets, the subgroups E_n(g) and commutator chains.

For a fixed ``g`` the map ``c -> [c, g]`` sends C_k to C_{k+1}, where
C_1 = {[x, g] : x in G}.  Everything is driven by iterating that map on
frozensets of plain tuples.  Since [x, g] = x^-1 x^g and C_k consists of
elements [y, g], the sets only ever shrink, but the verdict below relies on
generic cycle detection rather than on that.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .config import current_caps
from .errors import CapExceeded, NotMember, NotNormalized, NotSubgroup
from .group import Group
from .perm import Permutation, _comm, format_cycles
from .series import _closure, is_subnormal


def _step(C: frozenset, g: tuple) -> frozenset:
    return frozenset(_comm(c, g) for c in C)


def _first_set(elements, g: tuple) -> frozenset:
    return frozenset(_comm(x, g) for x in elements)


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    cap = current_caps().engel_n
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the Engel cap {cap}")


def _generate(C: frozenset, degree: int, stop_order: int | None) -> Group:
    return Group.generate(sorted(C), degree, stop_order=stop_order)


def engel_sets(G: Group, g: Sequence[int], n: int) -> list[frozenset]:
    """[C_1, ..., C_n] for ``g`` in ``G``."""
    g = tuple(g)
    if not G.contains(g):
        raise NotMember("g is not an element of G")
    _check_n(n)
    sets = [_first_set(G.elements(), g)]
    while len(sets) < n:
        sets.append(_step(sets[-1], g))
    return sets


def engel_subgroup(G: Group, g: Sequence[int], n: int) -> Group:
    """E_n(g) = <[x, g, ..., g] : x in G> with ``g`` repeated ``n`` times."""
    g = tuple(g)
    if not G.contains(g):
        raise NotMember("g is not an element of G")
    _check_n(n)
    C = _first_set(G.elements(), g)
    for _ in range(n - 1):
        nxt = _step(C, g)
        if nxt == C:
            break
        C = nxt
    return _generate(C, G.degree, G.order)


@dataclasses.dataclass
class EngelTrace:
    """The C-sets of ``g`` up to the first repetition.

    ``sets[k - 1]`` is C_k.  The sequence is eventually periodic with the
    cycle C_{cycle_start} .. C_{cycle_start + cycle_length - 1}; ``g`` is a
    left Engel element iff that cycle is {1}, and then ``engel_n`` is the
    least n with C_n = {1}.
    """

    element: Permutation
    sets: list[frozenset]
    orders: list[int]
    cycle_start: int
    cycle_length: int
    engel_n: int | None

    @property
    def is_engel(self) -> bool:
        return self.engel_n is not None

    @property
    def verdict(self) -> str:
        return "engel" if self.is_engel else "not_engel"

    def set_sizes(self) -> list[int]:
        return [len(C) for C in self.sets]

    def to_dict(self) -> dict:
        return {"element": format_cycles(self.element), "verdict": self.verdict,
                "engel_n": self.engel_n, "cycle_start": self.cycle_start,
                "cycle_length": self.cycle_length, "set_sizes": self.set_sizes(),
                "subgroup_orders": self.orders}


def engel_verdict(G: Group, g: Sequence[int], with_orders: bool = True) -> EngelTrace:
    g = tuple(g)
    if not G.contains(g):
        raise NotMember("g is not an element of G")
    identity = tuple(range(G.degree))
    C = _first_set(G.elements(), g)
    seen: dict[frozenset, int] = {}
    sets: list[frozenset] = []
    while C not in seen:
        seen[C] = len(sets) + 1
        sets.append(C)
        C = _step(C, g)
    start = seen[C]
    length = len(sets) + 1 - start
    engel_n = None
    if length == 1 and sets[start - 1] == frozenset([identity]):
        engel_n = start
    orders = []
    if with_orders:
        orders = [_generate(D, G.degree, G.order).order for D in sets]
    return EngelTrace(Permutation._raw(g), sets, orders, start, length, engel_n)


def is_left_engel(G: Group, g: Sequence[int]) -> bool:
    return engel_verdict(G, g, with_orders=False).is_engel


@dataclasses.dataclass
class CommutatorChain:
    """H_0 = G, H_{i+1} = [H_i, g] until the chain stabilises."""

    terms: list[Group]

    @property
    def stable(self) -> Group:
        return self.terms[-1]

    def orders(self) -> list[int]:
        return [H.order for H in self.terms]


def commutator_with(H: Group, g: Sequence[int]) -> Group:
    """[H, g] = <[h, g] : h in H>, for ``g`` normalising ``H``.

    From [ab, g] = [a, g]^b [b, g] this is the normal closure in ``H`` of the
    commutators with the generators of ``H``.
    """
    g = tuple(g)
    return _closure(H, [_comm(h, g) for h in H.generators])


def commutator_chain(G: Group, g: Sequence[int], check_subnormal: bool = True) -> CommutatorChain:
    g = tuple(g)
    if not G.contains(g):
        raise NotMember("g is not an element of G")
    terms = [G]
    while True:
        nxt = commutator_with(terms[-1], g)
        if nxt.order == terms[-1].order:
            break
        terms.append(nxt)
    if check_subnormal:
        for H in terms:
            if not is_subnormal(G, H):
                raise AssertionError("commutator chain term is not subnormal")
    return CommutatorChain(terms)


def engel_subgroup_aut(ambient: Group, G: Group, a: Sequence[int], n: int,
                       cap: int | None = None) -> Group:
    """E_n(a) for an element ``a`` of ``ambient`` that normalises ``G``.

    The commutators [x, a, ..., a] with x in G all lie in G.  Elements of G
    are streamed, never stored, so the cap here is the structural one; the
    generated subgroup is returned as soon as it fills G.
    """
    a = tuple(a)
    if not G.is_subgroup_of(ambient):
        raise NotSubgroup("G is not a subgroup of the ambient group")
    if not ambient.contains(a):
        raise NotMember("a is not an element of the ambient group")
    if not all(G.contains(Permutation._raw(_comm(x, a))) for x in G.generators):
        raise NotNormalized("a does not normalise G")
    _check_n(n)
    if cap is None:
        cap = current_caps().structural_order
    if G.order > cap:
        raise CapExceeded(f"group of order {G.order} exceeds cap {cap}")
    H = Group.trivial(G.degree)
    for x in G.iter_elements():
        c = x
        for _ in range(n):
            c = _comm(c, a)
        if not H.contains(c):
            H = H.extended([c])
            if H.order == G.order:
                break
    return H
