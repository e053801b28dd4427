"""Characteristic subgroups and the three length series.

Quotients are handled through full preimages: a subgroup of ``G/N`` is
represented by the subgroup of ``G`` that contains ``N`` and maps onto it,
and every ``*_mod(G, N, ...)`` function below returns such a preimage.  Since
every routine needed here (normal closure, p-elements, centralizers of normal
sections, minimal normal subgroups) can be phrased in terms of membership in
``N``, nothing has to be materialised on coset points.  :func:`coset_action`
is still available and the test-suite uses it to cross-check these
functions.

The enumerative parts iterate over conjugacy-class representatives of ``G``,
so everything here is bounded by the group-order cap.
"""

from __future__ import annotations

import dataclasses
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import factorint

from .config import current_caps
from .errors import CapExceeded, NotSoluble, NotSubgroup
from .group import Group, join
from .perm import Permutation, _comm, _conj, _order, _pow, format_cycles


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def primes_of(n: int) -> list[int]:
    return [p for p, _ in _factor(n)]


def omega(g: Sequence[int]) -> int:
    """Number of prime factors of the order of ``g``, counted with multiplicity."""
    return sum(e for _, e in _factor(_order(g)))


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# normal closures ------------------------------------------------------------

def _closure(G: Group, gens: Iterable[Sequence[int]], N: Group | None = None) -> Group:
    """Normal closure in ``G`` of ``N`` together with ``gens`` (``N`` normal in G)."""
    H = N if N is not None else Group.trivial(G.degree)
    queue = []
    for x in gens:
        x = tuple(x)
        if not H.contains(x):
            H = H.extended([x])
            queue.append(x)
    for q in queue:
        for g in G.generators:
            c = _conj(q, g)
            if not H.contains(c):
                H = H.extended([c])
                queue.append(c)
    return H


def normal_closure(G: Group, S: Group) -> Group:
    if not S.is_subgroup_of(G):
        raise NotSubgroup("S is not a subgroup of G")
    return _closure(G, S.generators)


def _cached(G: Group, key, compute):
    cache = G._cache
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def _trivial(G: Group) -> Group:
    return _cached(G, "trivial", lambda: Group.trivial(G.degree))


def _reps(G: Group) -> list[Permutation]:
    return G.class_representatives()


# derived series and nilpotency -----------------------------------------------

def derived_subgroup_mod(G: Group, N: Group | None = None) -> Group:
    gens = G.generators
    comms = [_comm(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return _closure(G, comms, N)


def derived_subgroup(G: Group) -> Group:
    return _cached(G, "derived", lambda: derived_subgroup_mod(G))


def derived_series(G: Group) -> list[Group]:
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            return series
        series.append(D)


def derived_and_solubility(G: Group) -> tuple[list[Group], bool]:
    series = derived_series(G)
    return series, series[-1].order == 1


def is_soluble(G: Group) -> bool:
    return _cached(G, "soluble", lambda: derived_series(G)[-1].order == 1)


def commutator_subgroup(G: Group, A: Group, B: Group) -> Group:
    """``[A, B]`` for subgroups normalised by ``G`` (closure in ``G``)."""
    return _closure(G, [_comm(a, b) for a in A.generators for b in B.generators])


def lower_central_series(G: Group) -> list[Group]:
    series = [G]
    while True:
        nxt = commutator_subgroup(G, series[-1], G)
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)


def is_nilpotent(G: Group) -> bool:
    return lower_central_series(G)[-1].order == 1


def center(G: Group) -> Group:
    def compute():
        central = [c[0] for c in G.conjugacy_classes() if len(c) == 1]
        return Group.generate(central, G.degree)
    return _cached(G, "center", compute)


# Fitting subgroup and soluble radical --------------------------------------

def _p_element_mod(x: tuple, N: Group, p: int) -> bool:
    o = _order(x)
    pp = 1
    while o % p == 0:
        o //= p
        pp *= p
    return N.contains(_pow(x, pp))


def pcore_mod(G: Group, N: Group, p: int) -> Group:
    """Preimage of O_p(G/N): the normal closures of p-elements that are p-groups."""
    def compute():
        H = N
        for x in _reps(G):
            if H.contains(x) or not _p_element_mod(x, N, p):
                continue
            M = _closure(G, [x], N)
            if _is_power_of(M.order // N.order, p):
                H = join(H, M)
        return H
    return _cached(G, ("pcore", p, N), compute)


def fitting_mod(G: Group, N: Group) -> Group:
    """Preimage of F(G/N) for a normal subgroup ``N``."""
    def compute():
        H = N
        for p in primes_of(G.order // N.order):
            H = join(H, pcore_mod(G, N, p))
        return H
    return _cached(G, ("fit", N), compute)


def fitting(G: Group) -> Group:
    return fitting_mod(G, _trivial(G))


def radical_mod(G: Group, N: Group) -> Group:
    """Preimage of the soluble radical of G/N."""
    def compute():
        X = N
        while True:
            Y = fitting_mod(G, X)
            if Y.order == X.order:
                return X
            X = Y
    return _cached(G, ("rad", N), compute)


def soluble_radical(G: Group) -> Group:
    return radical_mod(G, _trivial(G))


def pcore(G: Group, p: int) -> Group:
    return pcore_mod(G, _trivial(G), p)


# socle and the generalized Fitting subgroup --------------------------------

def centralizer_mod(G: Group, X: Group, N: Group) -> Group:
    """Preimage of C_{G/N}(X/N) for ``X`` and ``N`` both normal in ``G``."""
    def compute():
        good = [x for x in _reps(G)
                if all(N.contains(_comm(x, y)) for y in X.generators)]
        return _closure(G, good, N)
    return _cached(G, ("cent", X, N), compute)


def _prime_order_mod(x: tuple, N: Group) -> bool:
    if N.contains(x):
        return False
    return any(N.contains(_pow(x, p)) for p in primes_of(_order(x)))


def minimal_normals_mod(G: Group, N: Group, within: Group | None = None) -> list[Group]:
    """Preimages of the minimal normal subgroups of G/N (inside ``within``/N if given).

    Every minimal normal subgroup is the normal closure of any of its
    elements of prime order, so the minimal ones among those closures are
    exactly the minimal normal subgroups.  Duplicates are merged keeping the
    first one found.
    """
    cands: list[Group] = []
    for x in _reps(G):
        if within is not None and not within.contains(x):
            continue
        if not _prime_order_mod(x, N):
            continue
        M = _closure(G, [x], N)
        if any(M == C for C in cands):
            continue
        cands.append(M)
    return [M for M in cands
            if not any(C.order < M.order and C.is_subgroup_of(M) for C in cands)]


def socle(G: Group) -> tuple[Group, list[Group]]:
    mins = minimal_normals_mod(G, _trivial(G))
    if not mins:
        return _trivial(G), []
    return join(*mins), mins


def generalized_fitting_mod(G: Group, N: Group) -> Group:
    """Preimage of F*(G/N).

    Uses F*(X)/F(X) = Soc(F(X) C_X(F(X)) / F(X)).  The minimal normal
    subgroups of that section are nonabelian, and for such a normal subgroup
    of ``X`` its socle is the product of the minimal normal subgroups of
    ``X`` it contains.
    """
    def compute():
        F = fitting_mod(G, N)
        C = centralizer_mod(G, F, N)
        X = join(F, C)
        if X.order == F.order:
            return F
        mins = minimal_normals_mod(G, F, within=X)
        return join(F, *mins) if mins else F
    return _cached(G, ("gfit", N), compute)


def generalized_fitting(G: Group) -> Group:
    return generalized_fitting_mod(G, _trivial(G))


# simplicity and subnormality ----------------------------------------------

def _simple_mod(H: Group, Z: Group) -> bool:
    """H/Z nonabelian simple (Z normal in H)."""
    if H.order == Z.order:
        return False
    if derived_subgroup_mod(H, Z).order != H.order:
        return False
    for x in _reps(H):
        if Z.contains(x):
            continue
        if _closure(H, [x], Z).order != H.order:
            return False
    return True


def classify_simplicity(H: Group) -> str:
    if H.order == 1:
        return "trivial"
    if H.is_abelian():
        return "abelian"
    if _simple_mod(H, _trivial(H)):
        return "nonabelian_simple"
    if derived_subgroup(H).order == H.order and _simple_mod(H, center(H)):
        return "quasisimple"
    return "other"


def subnormal_chain(G: Group, H: Group) -> list[Group]:
    """G = H_0 >= H_1 >= ... with H_{i+1} the normal closure of H in H_i."""
    if not H.is_subgroup_of(G):
        raise NotSubgroup("H is not a subgroup of G")
    chain = [G]
    while True:
        nxt = _closure(chain[-1], H.generators)
        if nxt.order == chain[-1].order:
            return chain
        chain.append(nxt)


def is_subnormal(G: Group, H: Group) -> bool:
    return subnormal_chain(G, H)[-1].order == H.order


# series ---------------------------------------------------------------------

@dataclasses.dataclass
class SeriesTerm:
    label: str
    group: Group

    @property
    def order(self) -> int:
        return self.group.order

    def to_dict(self) -> dict:
        return {"label": self.label, "order": self.order,
                "generators": [format_cycles(g) for g in self.group.generators]}


@dataclasses.dataclass
class SeriesReport:
    kind: str  # fitting | generalized_fitting | nonsoluble
    terms: list[SeriesTerm]
    height: int

    def term(self, label: str) -> Group:
        for t in self.terms:
            if t.label == label:
                return t.group
        raise KeyError(label)

    def orders(self) -> list[int]:
        return [t.order for t in self.terms]

    def validate(self, G: Group) -> None:
        for a, b in zip(self.terms, self.terms[1:]):
            assert a.group.is_subgroup_of(b.group), f"{a.label} not inside {b.label}"
        for t in self.terms:
            assert t.group.is_normal_in(G), f"{t.label} is not normal"
        assert self.terms[-1].order == G.order

    def to_dict(self) -> dict:
        return {"kind": self.kind, "height": self.height,
                "terms": [t.to_dict() for t in self.terms]}


def fitting_terms(G: Group) -> list[Group]:
    """F_0 = 1 < F_1 < ... until the series stops growing (at G iff G soluble)."""
    def compute():
        terms = [_trivial(G)]
        while True:
            nxt = fitting_mod(G, terms[-1])
            if nxt.order == terms[-1].order:
                return terms
            terms.append(nxt)
    return _cached(G, "fitting_terms", compute)


def fitting_term(G: Group, i: int) -> Group:
    terms = fitting_terms(G)
    return terms[min(i, len(terms) - 1)]


def fitting_series(G: Group) -> SeriesReport:
    terms = fitting_terms(G)
    if terms[-1].order != G.order:
        raise NotSoluble("the Fitting series of a nonsoluble group never reaches G")
    return SeriesReport("fitting", [SeriesTerm(f"F_{i}", T) for i, T in enumerate(terms)],
                        len(terms) - 1)


def fitting_height(G: Group) -> int:
    return fitting_series(G).height


def gfit_terms(G: Group) -> list[Group]:
    def compute():
        terms = [_trivial(G)]
        while terms[-1].order != G.order:
            terms.append(generalized_fitting_mod(G, terms[-1]))
        return terms
    return _cached(G, "gfit_terms", compute)


def gfit_term(G: Group, i: int) -> Group:
    terms = gfit_terms(G)
    return terms[min(i, len(terms) - 1)]


def generalized_fitting_series(G: Group) -> SeriesReport:
    terms = gfit_terms(G)
    return SeriesReport("generalized_fitting",
                        [SeriesTerm(f"F*_{i}", T) for i, T in enumerate(terms)], len(terms) - 1)


def generalized_fitting_height(G: Group) -> int:
    return len(gfit_terms(G)) - 1


@dataclasses.dataclass
class SectionDecomposition:
    """U_i = L_i / R_{i-1} split into its simple factors (as preimages in G)."""

    level: int
    lower: Group      # R_{i-1}
    upper: Group      # L_i
    top: Group        # R_i
    simple_factors: list[Group]
    kernel: Group     # K_i

    @property
    def kernel_order(self) -> int:
        return self.kernel.order

    def witnesses(self) -> list[tuple]:
        return [next(g for g in T.generators if not self.lower.contains(g))
                for T in self.simple_factors]

    def factor_action(self, g: Sequence[int]) -> tuple[int, ...]:
        """Permutation induced by conjugation by ``g`` on the factor indices."""
        g = tuple(g)
        out = []
        for w in self.witnesses():
            c = _conj(w, g)
            out.append(next(k for k, T in enumerate(self.simple_factors) if T.contains(c)))
        return tuple(out)

    def validate(self) -> None:
        R = self.lower
        for i, T in enumerate(self.simple_factors):
            assert _simple_mod(T, R), f"factor {i} is not nonabelian simple"
            for U in self.simple_factors[i + 1:]:
                assert all(R.contains(_comm(a, b)) for a in T.generators for b in U.generators)
        assert join(R, *self.simple_factors).order == self.upper.order
        assert self.upper.is_subgroup_of(self.kernel) and self.kernel.is_subgroup_of(self.top)

    def to_dict(self) -> dict:
        return {"level": self.level,
                "factor_orders": [T.order // self.lower.order for T in self.simple_factors],
                "kernel_order": self.kernel_order}


def _kernel_on_factors(G: Group, R: Group, factors: list[Group]) -> Group:
    good = [x for x in _reps(G)
            if all(T.contains(_conj(t, x)) for T in factors for t in T.generators)]
    return _closure(G, good, R)


def nonsoluble_data(G: Group) -> tuple[list[tuple[str, Group]], list[SectionDecomposition]]:
    def compute():
        R = radical_mod(G, _trivial(G))
        terms = [("L_0", _trivial(G)), ("R_0", R)]
        sections = []
        i = 0
        while R.order != G.order:
            i += 1
            L = generalized_fitting_mod(G, R)
            Rn = radical_mod(G, L)
            factors = minimal_normals_mod(L, R)
            # minimal normals of L/R are computed inside L; recover them as groups of G
            K = _kernel_on_factors(G, R, factors)
            sections.append(SectionDecomposition(i, R, L, Rn, factors, K))
            terms += [(f"L_{i}", L), (f"R_{i}", Rn)]
            R = Rn
        return terms, sections
    return _cached(G, "nonsoluble", compute)


def nonsoluble_series(G: Group) -> tuple[SeriesReport, list[SectionDecomposition]]:
    terms, sections = nonsoluble_data(G)
    report = SeriesReport("nonsoluble", [SeriesTerm(l, T) for l, T in terms], len(sections))
    return report, sections


def nonsoluble_length(G: Group) -> int:
    return len(nonsoluble_data(G)[1])


def radical_term(G: Group, i: int) -> Group:
    """R_i(G); equals G once i reaches the nonsoluble length."""
    terms, sections = nonsoluble_data(G)
    if i >= len(sections):
        return G
    return dict(terms)[f"R_{i}"]


def kernel_term(G: Group, i: int) -> Group | None:
    """K_i(G) for 1 <= i <= λ(G), else None."""
    sections = nonsoluble_data(G)[1]
    if 1 <= i <= len(sections):
        return sections[i - 1].kernel
    return None


# brute-force oracles ----------------------------------------------------------

def fitting_bruteforce(G: Group) -> Group:
    """F(G) as the subgroup generated by elements with nilpotent normal closure."""
    good = [x for x in _reps(G) if is_nilpotent(_closure(G, [x]))]
    return _closure(G, good)


def generalized_fitting_bruteforce(G: Group, cap: int | None = None) -> Group:
    """F(G) times every subnormal quasisimple subgroup, found by enumeration.

    Quasisimple groups are 2-generated, and the set of components is closed
    under conjugation, so pairs (class representative, arbitrary element)
    reach a conjugate of every component.
    """
    if cap is None:
        cap = current_caps().subgroup_enum
    if G.order > cap:
        raise CapExceeded(f"subgroup enumeration is capped at order {cap}")
    elements = G.elements()
    seen: list[Group] = []
    components: list[Group] = []
    for a in _reps(G):
        if a == G.identity:
            continue
        for b in elements:
            if _comm(a, b) == tuple(G.identity):
                continue
            H = Group([a, b], G.degree)
            if any(H == K for K in seen):
                continue
            seen.append(H)
            if classify_simplicity(H) in ("nonabelian_simple", "quasisimple") and is_subnormal(G, H):
                components.append(H)
    F = fitting_bruteforce(G)
    if not components:
        return F
    return join(F, _closure(G, [g for H in components for g in H.generators]))
