"""Machine checks of the membership bounds, structural facts and conjectures.

Every check returns a :class:`CheckReport`.  ``verdict`` is ``pass`` or
``fail`` for statements that are theorems, and ``report`` for the
conjectures and for open cases, where a violation is only flagged.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence

from sympy import divisors, primefactors

from ..engel import engel_subgroup, engel_subgroup_aut, engel_verdict, commutator_with
from ..errors import NotNormalized, NotSoluble, PremiseFailed
from ..group import Group, intersection, join
from ..perm import Permutation, _conj, _order, _pow, format_cycles
from ..products import (TwistedPower, all_d_subgroups, centralizer_in,
                        conjugator_test_subgroups, covering_centralizer, diagonal,
                        diagonal_overgroups, factor_commutator_subgroup,
                        no_proper_covering_subgroup, normalizer_in, question1_probe,
                        sample_elements, search_conjugator)
from ..series import (fitting, fitting_bruteforce, fitting_term, fitting_terms,
                      generalized_fitting, generalized_fitting_bruteforce,
                      generalized_fitting_height, gfit_term, gfit_terms, is_soluble,
                      kernel_term, nonsoluble_data, nonsoluble_length, omega,
                      radical_term, soluble_radical)

FLAG = "POTENTIAL COUNTEREXAMPLE"


@dataclasses.dataclass
class CheckReport:
    check: str
    group: str
    element: str | None = None
    params: dict = dataclasses.field(default_factory=dict)
    verdict: str = "pass"  # pass | fail | report | error
    witness: dict = dataclasses.field(default_factory=dict)
    replay: dict | None = None

    @property
    def passed(self) -> bool:
        return self.verdict in ("pass", "report")

    @property
    def flagged(self) -> bool:
        return bool(self.witness.get("violation"))

    def to_dict(self) -> dict:
        out = {"check": self.check, "group": self.group, "element": self.element,
               "params": self.params, "verdict": self.verdict, "witness": self.witness}
        if self.replay is not None:
            out["replay"] = self.replay
        return out


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _elt(g) -> str:
    return format_cycles(g)


# Engel subgroups with memoisation -------------------------------------------------

def engel_subgroup_cached(G: Group, g: Sequence[int], n: int) -> Group:
    key = ("engel_subgroup", tuple(g), n)
    if key not in G._cache:
        G._cache[key] = engel_subgroup(G, g, n)
    return G._cache[key]


def _cyclic_meets_trivially(g: tuple, K: Group) -> bool:
    """<g> ∩ K = 1, tested on the subgroups of prime order of <g>."""
    o = _order(g)
    return all(not K.contains(_pow(g, o // p)) for p in primefactors(o))


# element checks -----------------------------------------------------------------

def check_baer(G: Group, g: Sequence[int], group_name: str = "") -> CheckReport:
    """Left-Engel (by C-set cycle detection) iff in the Fitting subgroup."""
    g = tuple(g)
    trace = engel_verdict(G, g, with_orders=False)
    in_f = fitting(G).contains(g)
    return CheckReport("baer", group_name, _elt(g), {}, _verdict(trace.is_engel == in_f),
                       {"engel_n": trace.engel_n, "cycle_start": trace.cycle_start,
                        "cycle_length": trace.cycle_length, "in_fitting": in_f,
                        "fitting_order": fitting(G).order})


def check_theorem1(G: Group, g: Sequence[int], n_range: Iterable[int] = (1, 2, 3),
                   group_name: str = "") -> CheckReport:
    """Soluble G: g lies in F_{k+1}(G) where k is the Fitting height of E_n(g)."""
    g = tuple(g)
    if not is_soluble(G):
        raise NotSoluble("the Fitting-height bound needs a soluble group")
    rows = []
    for n in n_range:
        E = engel_subgroup_cached(G, g, n)
        k = len(fitting_terms(E)) - 1
        member = fitting_term(G, k + 1).contains(g)
        rows.append({"n": n, "k": k, "j": k + 1, "E_order": E.order, "member": member})
    return CheckReport("theorem1", group_name, _elt(g), {"n": list(n_range)},
                       _verdict(all(r["member"] for r in rows)), {"rows": rows})


def theorem3_bound(k: int, m: int) -> int:
    return (k + 1) * m * (m + 1) // 2


def theorem2_bound(k: int, m: int) -> int:
    return ((k + 1) * m * (m + 1) + 2) * (k + 3) // 2


def check_theorem3(G: Group, g: Sequence[int], n_range: Iterable[int] = (1, 2, 3),
                   group_name: str = "") -> CheckReport:
    """g lies in R_j(G), j = (k+1)m(m+1)/2, k the nonsoluble length of E_n(g), m = Ω(|g|)."""
    g = tuple(g)
    m = omega(g)
    rows = []
    for n in n_range:
        E = engel_subgroup_cached(G, g, n)
        k = nonsoluble_length(E)
        j = theorem3_bound(k, m)
        member = radical_term(G, j).contains(g)
        rows.append({"n": n, "k": k, "m": m, "j": j, "E_order": E.order, "member": member})
    return CheckReport("theorem3", group_name, _elt(g), {"n": list(n_range)},
                       _verdict(all(r["member"] for r in rows)), {"rows": rows})


def check_theorem2(G: Group, g: Sequence[int], n_range: Iterable[int] = (1, 2, 3),
                   group_name: str = "") -> CheckReport:
    """g lies in F*_j(G), j = ((k+1)m(m+1)+2)(k+3)/2, k the generalized Fitting height of E_n(g)."""
    g = tuple(g)
    m = omega(g)
    rows = []
    for n in n_range:
        E = engel_subgroup_cached(G, g, n)
        k = generalized_fitting_height(E)
        j = theorem2_bound(k, m)
        member = gfit_term(G, j).contains(g)
        rows.append({"n": n, "k": k, "m": m, "j": j, "E_order": E.order, "member": member})
    return CheckReport("theorem2", group_name, _elt(g), {"n": list(n_range)},
                       _verdict(all(r["member"] for r in rows)), {"rows": rows})


def check_conjectures(G: Group, g: Sequence[int], n_range: Iterable[int] = (1, 2, 3),
                      group_name: str = "") -> CheckReport:
    """Report-only: g in F*_{k+1}(G) with k = h*(E_n(g)); g in R_k(G) with k = λ(E_n(g))."""
    g = tuple(g)
    rows = []
    for n in n_range:
        E = engel_subgroup_cached(G, g, n)
        ks = generalized_fitting_height(E)
        kl = nonsoluble_length(E)
        rows.append({"n": n, "h_star": ks, "gfit_member": gfit_term(G, ks + 1).contains(g),
                     "lambda": kl, "radical_member": radical_term(G, kl).contains(g)})
    violation = not all(r["gfit_member"] and r["radical_member"] for r in rows)
    witness = {"rows": rows, "violation": violation}
    if violation:
        witness["flag"] = FLAG
    return CheckReport("conjectures", group_name, _elt(g), {"n": list(n_range)}, "report", witness)


def check_pr2(G: Group, g: Sequence[int], n: int = 1, s_range: Iterable[int] = (1, 2, 3),
              group_name: str = "") -> CheckReport:
    """If <g> ∩ K_{ms} = 1 then E_n(g) has nonsoluble length at least s."""
    g = tuple(g)
    m = omega(g)
    lam = nonsoluble_length(G)
    rows = []
    ok = True
    for s in s_range:
        idx = m * s
        if m == 0 or idx > lam:
            rows.append({"s": s, "index": idx, "premise": None, "vacuous": True})
            continue
        premise = _cyclic_meets_trivially(g, kernel_term(G, idx))
        row = {"s": s, "index": idx, "premise": premise, "vacuous": not premise}
        if premise:
            k = nonsoluble_length(engel_subgroup_cached(G, g, n))
            row["lambda_E"] = k
            row["holds"] = k >= s
            ok = ok and k >= s
        rows.append(row)
    return CheckReport("pr2", group_name, _elt(g), {"n": n, "s": list(s_range), "m": m},
                       _verdict(ok), {"rows": rows, "lambda_G": lam})


# automorphism checks ---------------------------------------------------------------

def check_prop_sol(ambient: Group, G: Group, alpha: Sequence[int],
                   n_range: Iterable[int] = (1, 2, 3, 4), group_name: str = "") -> CheckReport:
    """Soluble G with [G, alpha] = G: every E_{G,n}(alpha) is G."""
    alpha = tuple(alpha)
    if not is_soluble(G):
        raise PremiseFailed("G is not soluble")
    if not all(G.contains(_conj(x, alpha)) for x in G.generators):
        raise NotNormalized("alpha does not normalise G")
    if commutator_with(G, alpha).order != G.order:
        raise PremiseFailed("[G, alpha] is a proper subgroup of G")
    rows = []
    for n in n_range:
        E = engel_subgroup_aut(ambient, G, alpha, n)
        rows.append({"n": n, "order": E.order, "equal": E.order == G.order})
    return CheckReport("prop_sol", group_name, _elt(alpha), {"n": list(n_range)},
                       _verdict(all(r["equal"] for r in rows)), {"rows": rows, "G_order": G.order})


def _action_order(V: Group, alpha: tuple) -> int:
    for d in divisors(_order(alpha)):
        ad = _pow(alpha, d)
        if all(_conj(v, ad) == tuple(v) for v in V.generators):
            return d
    return _order(alpha)


def find_regular_vector(V: Group, alpha: Sequence[int]) -> Permutation | None:
    """v in V whose stabiliser in the automorphism group <alpha> is trivial.

    V must be an elementary abelian q-group normalised by alpha; only the
    automorphism of V induced by alpha matters, so its order is taken modulo
    the centraliser of V.
    """
    alpha = tuple(alpha)
    if not V.is_abelian():
        raise ValueError("V must be abelian")
    orders = {_order(v) for v in V.generators}
    if len(orders) > 1 or any(len(primefactors(o)) != 1 or primefactors(o)[0] != o for o in orders):
        raise ValueError("V must be elementary abelian")
    if not all(V.contains(_conj(v, alpha)) for v in V.generators):
        raise NotNormalized("alpha does not normalise V")
    e = _action_order(V, alpha)
    if V.order == 1:
        return V.identity
    tests = [_pow(alpha, e // p) for p in primefactors(e)]
    for v in V.elements():
        if e == 1:
            if v != V.identity:
                return v
            continue
        if all(_conj(v, t) != tuple(v) for t in tests):
            return v
    return None


def check_regular_vector(V: Group, alpha: Sequence[int], group_name: str = "") -> CheckReport:
    alpha = tuple(alpha)
    v = find_regular_vector(V, alpha)
    return CheckReport("regular_vector", group_name, _elt(alpha), {}, _verdict(v is not None),
                       {"vector": None if v is None else _elt(v), "V_order": V.order,
                        "action_order": _action_order(V, alpha)})


# series identities and oracles ----------------------------------------------------

def series_normal_subgroups(G: Group) -> list[tuple[str, Group]]:
    """Distinct terms of the three computed series of G (plus 1 and G)."""
    out: list[tuple[str, Group]] = []

    def add(label, N):
        if not any(N == M for _, M in out):
            out.append((label, N))

    for i, N in enumerate(fitting_terms(G)):
        add(f"F_{i}", N)
    for i, N in enumerate(gfit_terms(G)):
        add(f"F*_{i}", N)
    for label, N in nonsoluble_data(G)[0]:
        add(label, N)
    add("G", G)
    return out


def check_radical_identities(G: Group, group_name: str = "") -> CheckReport:
    """F_i(N) = N ∩ F_i(G), F*_i(N) = N ∩ F*_i(G), R_i(N) = N ∩ R_i(G) for series terms N."""
    failures = []
    pairs = 0
    top = max(len(fitting_terms(G)), len(gfit_terms(G)), nonsoluble_length(G) + 1) + 1
    for label, N in series_normal_subgroups(G):
        assert N.is_normal_in(G)
        for i in range(top):
            for name, fn in (("F", fitting_term), ("F*", gfit_term), ("R", radical_term)):
                pairs += 1
                lhs = fn(N, i)
                rhs = intersection(N, fn(G, i))
                if lhs != rhs:
                    failures.append({"N": label, "series": name, "i": i,
                                     "lhs_order": lhs.order, "rhs_order": rhs.order})
    return CheckReport("radical_identities", group_name, None, {"i_max": top - 1},
                       _verdict(not failures), {"comparisons": pairs, "failures": failures})


def check_gfit_oracle(G: Group, group_name: str = "") -> CheckReport:
    """Computed F(G) and F*(G) against the enumeration oracles."""
    f, fb = fitting(G), fitting_bruteforce(G)
    gs, gb = generalized_fitting(G), generalized_fitting_bruteforce(G)
    return CheckReport("gfit_oracle", group_name, None, {}, _verdict(f == fb and gs == gb),
                       {"fitting": f.order, "fitting_oracle": fb.order,
                        "gfit": gs.order, "gfit_oracle": gb.order})


# products of simple groups -------------------------------------------------------

def _is_prime(n: int) -> bool:
    return n > 1 and primefactors(n) == [n]


def _is_prime_power(n: int) -> bool:
    return n == 1 or len(primefactors(n)) == 1


def check_d_normalizer(T: TwistedPower, group_name: str = "") -> CheckReport:
    """Every d(I)-subgroup K has C_S(K) = prod_{i not in I} S_i and N_S(K) = K x C_S(K)."""
    rows = []
    ok = True
    for K in all_d_subgroups(T):
        others = [T.factors[i - 1] for i in range(1, T.r + 1) if i not in K.indices]
        expected_c = join(*others) if others else Group.trivial(T.S.degree)
        C = centralizer_in(T.S, K.group)
        N = normalizer_in(T.S, K.group)
        good = (C == expected_c and N.order == K.group.order * C.order
                and join(K.group, C) == N)
        ok = ok and good
        rows.append({"I": list(K.indices), "K": K.group.order, "C": C.order, "N": N.order, "ok": good})
    return CheckReport("d_normalizer", group_name, None, {"r": T.r}, _verdict(ok), {"rows": rows})


def check_d_conjugates(T: TwistedPower, samples: int = 40, seed: int = 0,
                       group_name: str = "") -> CheckReport:
    """If K and K^x are both d-subgroups (x in S) then x normalises K."""
    ds = all_d_subgroups(T)
    tested = premise_true = 0
    bad = []
    for K in ds:
        others = [g for i, F in enumerate(T.factors) if i + 1 not in K.indices for g in F.generators]
        N = Group(list(K.group.generators) + others, T.S.degree)
        xs = sample_elements(N, samples // 2, seed) + sample_elements(T.S, samples - samples // 2, seed + 1)
        for x in xs:
            tested += 1
            Kx = K.group.conjugate(x)
            if any(Kx == L.group for L in ds):
                premise_true += 1
                if not all(K.group.contains(_conj(k, x)) for k in K.group.generators):
                    bad.append({"I": list(K.indices), "x": _elt(x)})
    return CheckReport("d_conjugates", group_name, None, {"samples": samples, "seed": seed},
                       _verdict(not bad), {"tested": tested, "premise_true": premise_true, "bad": bad})


def check_diagonal_overgroups(T: TwistedPower, group_name: str = "") -> CheckReport:
    """For prime r the phi-invariant overgroups of the diagonal are exactly D and S."""
    if not (T.trivial_twist and _is_prime(T.r)):
        raise PremiseFailed("needs an untwisted power with prime r")
    found = diagonal_overgroups(T)
    D = diagonal(T)
    ok = len(found) == 2 and found[0] == D and found[1] == T.S
    return CheckReport("diagonal_overgroups", group_name, None, {"r": T.r}, _verdict(ok),
                       {"orders": [H.order for H in found]})


def check_factor_commutators(T: TwistedPower, n_range: Iterable[int] = (1, 2, 3),
                             group_name: str = "") -> CheckReport:
    """For prime r, n-fold commutators with phi of elements of the factors generate S."""
    if not (T.trivial_twist and _is_prime(T.r)):
        raise PremiseFailed("needs an untwisted power with prime r")
    rows = [{"n": n, "order": factor_commutator_subgroup(T, n).order} for n in n_range]
    return CheckReport("factor_commutators", group_name, None, {"n": list(n_range)},
                       _verdict(all(r["order"] == T.S.order for r in rows)),
                       {"rows": rows, "S_order": T.S.order})


def check_question1(T: TwistedPower, n_max: int = 3, group_name: str = "") -> CheckReport:
    """E_{S,n}(phi) = S; asserted when phi permutes the factors regularly, else recorded."""
    rep = question1_probe(T, n_max)
    witness = rep.to_dict()
    if rep.regular:
        verdict = _verdict(rep.all_equal)
    else:
        verdict = "report"
        witness["violation"] = not rep.all_equal
        if not rep.all_equal:
            witness["flag"] = FLAG
    return CheckReport("question1", group_name, _elt(T.phi), {"n_max": n_max}, verdict, witness)


def _conjugator_rows(ambient, S, g, allowed, battery):
    rows = []
    for label, H in battery:
        x = search_conjugator(ambient, S, H, g, allowed)
        rows.append({"H": label, "H_order": H.order, "x": None if x is None else _elt(x)})
    return rows


def check_conjugator_regular(T: TwistedPower, group_name: str = "", limit: int | None = None) -> CheckReport:
    """phi-orbits on the factors all of length |phi|: every H without S has a good conjugate."""
    if T.phi_order != T.r:
        raise PremiseFailed("phi does not permute the factors regularly")
    rows = _conjugator_rows(T.realized, T.S, T.phi, None,
                            conjugator_test_subgroups(T.realized, T.S, T.phi, limit))
    return CheckReport("conjugator_regular", group_name, _elt(T.phi), {},
                       _verdict(all(r["x"] is not None for r in rows)), {"rows": rows})


def check_conjugator_prime_power(T: TwistedPower, group_name: str = "",
                                 limit: int | None = None) -> CheckReport:
    """Stabiliser of S_1 in <phi> a p-group: every H without S has a good conjugate."""
    if not _is_prime_power(T.block_stabilizer_order()):
        raise PremiseFailed("the stabiliser of a factor in <phi> is not of prime-power order")
    rows = _conjugator_rows(T.realized, T.S, T.phi, None,
                            conjugator_test_subgroups(T.realized, T.S, T.phi, limit))
    return CheckReport("conjugator_prime_power", group_name, _elt(T.phi),
                       {"stabilizer_order": T.block_stabilizer_order()},
                       _verdict(all(r["x"] is not None for r in rows)), {"rows": rows})


def check_conjugator_counterexample(ambient: Group, S: Group, g: Sequence[int], point: int,
                                    group_name: str = "") -> CheckReport:
    """Exhaustive search that must find no x in S with H^x ∩ <g> = 1 (H a point stabiliser)."""
    g = tuple(g)
    H = ambient.stabilizer(point - 1)
    x = search_conjugator(ambient, S, H, g)
    return CheckReport("conjugator_counterexample", group_name, _elt(g), {"point": point},
                       _verdict(x is None),
                       {"scanned": S.order, "witness": None if x is None else _elt(x),
                        "H_order": H.order})


def covering_conditions(ambient: Group, G: Group, g: Sequence[int]) -> dict:
    """Evaluate the four hypotheses of the covering conjugator statement."""
    g = tuple(g)
    R = soluble_radical(G)
    g0 = covering_centralizer(G, R, g)
    cyc = Group([g], G.degree)
    cond2 = intersection(G, cyc).is_subgroup_of(g0)
    terms, sections = nonsoluble_data(G)
    cond3 = False
    cond4 = False
    r = t = None
    if len(sections) >= 1 and sections[0].upper == G:
        sec = sections[0]
        perm = sec.factor_action(g)
        seen = {0}
        j = perm[0]
        while j != 0:
            seen.add(j)
            j = perm[j]
        r = len(sec.simple_factors)
        cond3 = len(seen) == r
        t = _order(g) // g0.order
        cond4 = cond3 and _is_prime_power(t // r)
    cond1 = no_proper_covering_subgroup(G, R) if cond3 else False
    return {"R_order": R.order, "g0": _elt(g0.generators[0]) if g0.generators else "()",
            "minimal_cover": cond1, "meets_in_g0": cond2, "transitive_simple": cond3,
            "prime_power_stabilizer": cond4, "r": r, "t": t}


def check_conjugator_covering(ambient: Group, G: Group, g: Sequence[int], group_name: str = "",
                              limit: int | None = None) -> CheckReport:
    """Under the four covering hypotheses every H with G not in H has z in G with H^z ∩ <g> <= <g_0>."""
    g = tuple(g)
    cond = covering_conditions(ambient, G, g)
    if not all(cond[k] for k in ("minimal_cover", "meets_in_g0", "transitive_simple",
                                  "prime_power_stabilizer")):
        raise PremiseFailed(f"covering hypotheses fail: {cond}")
    R = soluble_radical(G)
    g0 = covering_centralizer(G, R, g)
    rows = _conjugator_rows(ambient, G, g, g0, conjugator_test_subgroups(ambient, G, g, limit))
    return CheckReport("conjugator_covering", group_name, _elt(g), {},
                       _verdict(all(r["x"] is not None for r in rows)),
                       {"conditions": cond, "rows": rows})
