"""Direct powers of simple groups with a factor-permuting automorphism.

A :class:`TwistedPower` realises S = S_1 x ... x S_r together with an
automorphism phi inside one permutation group: copy i of the base group acts
on the i-th block of points, and phi shifts block i to block i+1, applying a
fixed "twist" permutation when it wraps around from the last block to the
first.  Thus phi^r acts on every block as the twist, and the automorphisms
used here are always conjugations inside that realised group.

The rest of the module is built on top: d-subgroups and the diagonal,
phi-invariant overgroups of the diagonal, the conjugator searches for the
intersection of a conjugate of H with a cyclic group, orbit purity on the
simple factors of the nonsoluble sections, and the prime-exponent order.
"""

from __future__ import annotations

import dataclasses
import random
from itertools import combinations
from typing import Iterable, Sequence

from sympy import divisors, factorint

from .config import current_caps
from .engel import engel_subgroup_aut
from .errors import CapExceeded, NotSubgroup, TwistNotNormalizing
from .group import Group, double_coset_representatives, join
from .perm import Permutation, _comm, _conj, _inv, _mul, _order, _pow, format_cycles
from .series import SectionDecomposition, nonsoluble_series


def _check_structural(G: Group) -> None:
    cap = current_caps().structural_order
    if G.order > cap:
        raise CapExceeded(f"group of order {G.order} exceeds structural cap {cap}")


# twisted powers ---------------------------------------------------------------

@dataclasses.dataclass
class TwistedPower:
    base: Group
    r: int
    twist: Permutation
    realized: Group
    S: Group
    factors: list[Group]
    phi: Permutation
    aux_points: int

    @property
    def block_degree(self) -> int:
        return self.base.degree

    @property
    def trivial_twist(self) -> bool:
        return self.twist.is_identity()

    @property
    def phi_order(self) -> int:
        return _order(self.phi)

    def embed(self, x: Sequence[int], i: int) -> Permutation:
        """The element ``x`` of the base group acting on block ``i`` (0-based)."""
        return _embed(x, i, self.block_degree, self.realized.degree)

    def phi_power(self, k: int) -> Permutation:
        return Permutation._raw(_pow(self.phi, k))

    def block_stabilizer_order(self) -> int:
        """Order of the stabilizer of S_1 in <phi>, i.e. of <phi^r>."""
        return self.phi_order // self.r

    def validate(self) -> None:
        d = self.block_degree
        assert self.S.order == self.base.order ** self.r
        assert self.S.is_normal_in(self.realized)
        assert self.realized.order == self.S.order * self.phi_order
        phi = tuple(self.phi)
        for i, T in enumerate(self.factors):
            assert T.conjugate(phi) == self.factors[(i + 1) % self.r]
        phir = _pow(phi, self.r)
        for i in range(self.r):
            for q in range(d):
                assert phir[i * d + q] == i * d + self.twist[q]

    def to_dict(self) -> dict:
        return {"r": self.r, "twist": format_cycles(self.twist), "phi": format_cycles(self.phi),
                "phi_order": self.phi_order, "S_order": self.S.order,
                "degree": self.realized.degree, "aux_points": self.aux_points}


def _embed(x: Sequence[int], i: int, d: int, degree: int) -> Permutation:
    img = list(range(degree))
    off = i * d
    for q in range(d):
        img[off + q] = off + x[q]
    return Permutation._raw(img)


def build_twisted_power(base: Group, r: int, twist: Sequence[int] | None = None,
                        ambient: Group | None = None) -> TwistedPower:
    """S = base^r with phi rotating the copies and twisting on wrap-around.

    If some power of phi would land inside S (an inner twist), an extra cycle
    of length |phi| on auxiliary points is appended to phi, so that S and
    <phi> always intersect trivially while the conjugation action on S is
    unchanged.
    """
    if r < 1:
        raise ValueError("r must be positive")
    d = base.degree
    twist = tuple(range(d)) if twist is None else tuple(twist)
    if len(twist) != d:
        raise TwistNotNormalizing(f"twist has degree {len(twist)}, base has degree {d}")
    if ambient is not None and not (base.is_subgroup_of(ambient) and ambient.contains(twist)):
        raise TwistNotNormalizing("base and twist must lie in the ambient group")
    if not all(base.contains(_conj(x, twist)) for x in base.generators):
        raise TwistNotNormalizing("twist does not normalise the base group")
    e = _order(twist)
    inner = any(base.contains(_pow(twist, j)) for j in range(1, e))
    phi_order = r * e
    aux = phi_order if inner else 0
    degree = r * d + aux
    phi = list(range(degree))
    for i in range(r):
        for q in range(d):
            phi[i * d + q] = (i + 1) * d + q if i < r - 1 else twist[q]
    for k in range(aux):
        phi[r * d + k] = r * d + (k + 1) % aux
    phi = Permutation._raw(phi)
    factors = [Group([_embed(x, i, d, degree) for x in base.generators], degree) for i in range(r)]
    S = Group([g for T in factors for g in T.generators], degree)
    realized = S.extended([phi])
    T = TwistedPower(base, r, Permutation._raw(twist), realized, S, factors, phi, aux)
    if realized.order != S.order * phi_order:
        raise AssertionError("S and <phi> do not intersect trivially")
    return T


# d-subgroups ----------------------------------------------------------------

@dataclasses.dataclass
class DSubgroup:
    indices: tuple[int, ...]  # 1-based, increasing
    group: Group

    def to_dict(self) -> dict:
        return {"indices": list(self.indices), "order": self.group.order}


def d_subgroup(T: TwistedPower, I: Iterable[int]) -> DSubgroup:
    """Elements with coordinate a at i_1, a^(phi^(i_s - i_1)) at i_s, 1 elsewhere."""
    if not T.trivial_twist:
        raise ValueError("d-subgroups are defined for an untwisted power")
    idx = tuple(sorted(set(I)))
    if not idx or idx[0] < 1 or idx[-1] > T.r:
        raise ValueError(f"index set must be a nonempty subset of 1..{T.r}")
    gens = []
    first = idx[0] - 1
    for x in T.base.generators:
        a = tuple(T.embed(x, first))
        g = tuple(range(T.realized.degree))
        for i in idx:
            g = _mul(g, _conj(a, _pow(T.phi, i - 1 - first)))
        gens.append(g)
    return DSubgroup(idx, Group(gens, T.realized.degree))


def diagonal(T: TwistedPower) -> Group:
    return d_subgroup(T, range(1, T.r + 1)).group


def all_d_subgroups(T: TwistedPower) -> list[DSubgroup]:
    return [d_subgroup(T, I) for k in range(1, T.r + 1) for I in combinations(range(1, T.r + 1), k)]


def normalizer_in(S: Group, K: Group) -> Group:
    """N_S(K) by scanning the elements of S."""
    _check_structural(S)
    return Group.generate((x for x in S.iter_elements()
                           if all(K.contains(_conj(k, x)) for k in K.generators)), S.degree)


def centralizer_in(S: Group, K: Group) -> Group:
    _check_structural(S)
    gens = [tuple(k) for k in K.generators]
    return Group.generate((x for x in S.iter_elements()
                           if all(_mul(x, k) == _mul(k, x) for k in gens)), S.degree)


def diagonal_overgroups(T: TwistedPower) -> list[Group]:
    """All phi-invariant subgroups H with D <= H <= S, sorted by order.

    Closure search: starting from D, every found H is extended by one
    representative of each (D, D)-double coset outside H, and the result is
    closed under phi.  Any phi-invariant overgroup K of D is reached, since
    an element of K outside the current H has its double-coset
    representative in K as well.
    """
    if not T.trivial_twist:
        raise ValueError("diagonal overgroups need an untwisted power")
    D = diagonal(T)
    S = T.S
    if T.r == 1:
        return [S]
    orbit_reps = double_coset_representatives(S, D, D)
    phi_pows = [_pow(T.phi, i) for i in range(1, T.phi_order)]
    found = [D]
    queue = [D]
    while queue:
        H = queue.pop(0)
        for x in orbit_reps:
            if H.contains(x):
                continue
            new = [x] + [_conj(x, p) for p in phi_pows]
            K = Group.generate(new, S.degree, start=H)
            if not any(K == F for F in found):
                found.append(K)
                queue.append(K)
    phi = tuple(T.phi)
    for H in found:
        assert D.is_subgroup_of(H) and H.is_subgroup_of(S)
        assert all(H.contains(_conj(h, phi)) for h in H.generators)
    return sorted(found, key=lambda H: H.order)


def factor_commutator_subgroup(T: TwistedPower, n: int) -> Group:
    """<[x, phi, ..., phi] (n times) : x in S_i, i = 1..r>."""
    base_elements = T.base.elements()
    phi = tuple(T.phi)
    H = Group.trivial(T.realized.degree)
    for i in range(T.r):
        for y in base_elements:
            c = tuple(T.embed(y, i))
            for _ in range(n):
                c = _comm(c, phi)
            if not H.contains(c):
                H = H.extended([c])
                if H.order == T.S.order:
                    return H
    return H


# the prime-exponent order -----------------------------------------------------

def _exponents(a: int) -> dict[int, int]:
    return factorint(a)


def lex_prec(a: int, b: int) -> str:
    """Compare exponent vectors (k_2, k_3, k_5, ...) lexicographically."""
    if a < 1 or b < 1:
        raise ValueError("arguments must be positive integers")
    ea, eb = _exponents(a), _exponents(b)
    for p in sorted(set(ea) | set(eb)):
        ka, kb = ea.get(p, 0), eb.get(p, 0)
        if ka != kb:
            return "less" if ka < kb else "greater"
    return "equal"


# orbit purity -------------------------------------------------------------------

@dataclasses.dataclass
class OrbitClassification:
    level: int
    orbit: tuple[int, ...]   # indices into the section's simple factors
    r: int                   # orbit length
    t: int                   # order of the automorphism induced on the orbit product
    pure: bool

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _permutation_orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        orb = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            orb.append(j)
            seen.add(j)
            j = perm[j]
        out.append(tuple(orb))
    return out


def classify_orbits(G: Group, g: Sequence[int],
                    sections: list[SectionDecomposition] | None = None) -> list[OrbitClassification]:
    """Orbits of <g> on the simple factors of every section, with purity.

    t is the least k (necessarily a divisor of |g|) such that g^k centralises
    every factor of the orbit modulo R_{i-1}.
    """
    g = tuple(g)
    if not G.contains(g):
        raise NotSubgroup("g is not an element of G")
    if sections is None:
        sections = nonsoluble_series(G)[1]
    out = []
    for sec in sections:
        R = sec.lower
        perm = sec.factor_action(g)
        for orb in _permutation_orbits(perm):
            gens = [w for j in orb for w in sec.simple_factors[j].generators if not R.contains(w)]
            t = next(k for k in divisors(_order(g))
                     if all(R.contains(_comm(w, _pow(g, k))) for w in gens))
            out.append(OrbitClassification(sec.level, orb, len(orb), t, t == len(orb)))
    return out


# conjugator searches ------------------------------------------------------------

def _cyclic_subgroup_reps(g: tuple) -> list[tuple]:
    """g^d for every proper divisor d of |g|: one generator per nontrivial subgroup."""
    o = _order(g)
    return [_pow(g, d) for d in divisors(o) if d < o]


def intersection_with_cyclic_ok(H: Group, x: Sequence[int], g: Sequence[int], allowed: Group) -> bool:
    """H^x ∩ <g> <= allowed."""
    xi = _inv(tuple(x))
    for c in _cyclic_subgroup_reps(tuple(g)):
        if allowed.contains(c):
            continue
        # c in H^x iff c^(x^-1) in H
        if H.contains(_conj(c, xi)):
            return False
    return True


def search_conjugator(ambient: Group, S: Group, H: Group, g: Sequence[int],
                      allowed: Group | None = None) -> Permutation | None:
    """First x in S (chain order) with H^x ∩ <g> <= allowed, or None."""
    g = tuple(g)
    if not H.is_subgroup_of(ambient):
        raise NotSubgroup("H is not a subgroup of the ambient group")
    if not S.is_normal_in(ambient):
        raise NotSubgroup("S must be a normal subgroup of the ambient group")
    if not ambient.contains(g):
        raise NotSubgroup("g is not in the ambient group")
    cyc = Group([g], ambient.degree)
    if allowed is None:
        allowed = Group.trivial(ambient.degree)
    elif not allowed.is_subgroup_of(cyc):
        raise NotSubgroup("allowed must be a subgroup of <g>")
    _check_structural(S)
    for x in S.iter_elements():
        if intersection_with_cyclic_ok(H, x, g, allowed):
            return Permutation._raw(x)
    return None


def conjugator_test_subgroups(ambient: Group, S: Group, g: Sequence[int],
                              limit: int | None = None) -> list[tuple[str, Group]]:
    """A deterministic battery of subgroups H of the ambient group with S not in H.

    Point stabilizers, cyclic subgroups of class representatives, and those
    joined with <g>.
    """
    g = tuple(g)
    out: list[tuple[str, Group]] = []

    def add(label, H):
        if not S.is_subgroup_of(H) and not any(H == K for _, K in out):
            out.append((label, H))

    for orb in ambient.orbits():
        add(f"stabilizer of {orb[0] + 1}", ambient.stabilizer(orb[0]))
    for y in ambient.class_representatives():
        add(f"<{format_cycles(y)}>", Group([y], ambient.degree))
        add(f"<{format_cycles(y)}, g>", Group([y, g], ambient.degree))
    if limit is not None:
        out = out[:limit]
    return out


def covering_centralizer(G: Group, R: Group, g: Sequence[int]) -> Group:
    """<g_0> = C_<g>(G/R): the powers of g acting trivially on G/R."""
    g = tuple(g)
    o = _order(g)
    for d in divisors(o):
        gd = _pow(g, d)
        if all(R.contains(_comm(x, gd)) for x in G.generators):
            return Group([gd], G.degree)
    return Group.trivial(G.degree)


def no_proper_covering_subgroup(G: Group, R: Group) -> bool:
    """True if no proper 2-generated subgroup H of G has HR = G.

    When G/R is 2-generated (true for almost simple groups and for products
    of simple groups permuted transitively), any proper covering subgroup
    contains a proper 2-generated one, so the test is sufficient for minimality.
    """
    if G.order > current_caps().subgroup_enum:
        raise CapExceeded("covering-subgroup test is capped by the subgroup enumeration cap")
    elements = G.elements()
    for a in G.class_representatives():
        for b in elements:
            H = Group([a, b], G.degree)
            if H.order < G.order and join(H, R).order == G.order:
                return False
    return True


# E_S,n(phi) probe -----------------------------------------------------------------

@dataclasses.dataclass
class Question1Record:
    n: int
    order: int
    equals_S: bool


@dataclasses.dataclass
class Question1Report:
    r: int
    twist: str
    phi_order: int
    S_order: int
    records: list[Question1Record]

    @property
    def regular(self) -> bool:
        """phi has order r, so the factors are permuted regularly."""
        return self.phi_order == self.r

    @property
    def all_equal(self) -> bool:
        return all(rec.equals_S for rec in self.records)

    def to_dict(self) -> dict:
        return {"r": self.r, "twist": self.twist, "phi_order": self.phi_order,
                "S_order": self.S_order, "regular": self.regular, "all_equal": self.all_equal,
                "records": [dataclasses.asdict(rec) for rec in self.records]}


def question1_probe(T: TwistedPower, n_max: int) -> Question1Report:
    records = []
    for n in range(1, n_max + 1):
        E = engel_subgroup_aut(T.realized, T.S, T.phi, n)
        records.append(Question1Record(n, E.order, E.order == T.S.order))
    return Question1Report(T.r, format_cycles(T.twist), T.phi_order, T.S.order, records)


def sample_elements(G: Group, count: int, seed: int = 0) -> list[Permutation]:
    rng = random.Random(seed)
    return [G.random_element(rng) for _ in range(count)]
