"""Permutation groups backed by a deterministic stabilizer chain.

A :class:`Group` is built once from generators by a deterministic
Schreier-Sims run and never changes afterwards.  Base points are the first
points moved by the generators (an explicit prefix may be forced, which is
how kernels and point stabilizers are read off).  Derived data such as the
element list or the conjugacy classes are computed lazily and cached on the
instance, so a Group can be shared freely.

Equality is mutual membership of generators over the same degree; the chain
is an implementation detail and never compared.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Iterator, Sequence

from .config import current_caps
from .errors import CapExceeded, DegreeMismatch, IndexCapExceeded, NotSubgroup
from .perm import Permutation, _conj, _first_moved, _inv, _mul, _order


class _Level:
    __slots__ = ("base", "gens", "orbit", "inv")

    def __init__(self, base: int, gens: list[tuple]):
        self.base = base
        self.gens = gens
        self.orbit: dict[int, tuple] = {}
        self.inv: dict[int, tuple] = {}

    def rebuild(self, identity: tuple) -> None:
        b = self.base
        orbit = {b: identity}
        queue = [b]
        for beta in queue:
            u = orbit[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in orbit:
                    orbit[gamma] = _mul(u, s)
                    queue.append(gamma)
        self.orbit = orbit
        self.inv = {beta: _inv(u) for beta, u in orbit.items()}


def _sift(levels: list[_Level], g: tuple, start: int = 0) -> tuple[tuple, int]:
    for i in range(start, len(levels)):
        lev = levels[i]
        beta = g[lev.base]
        if beta == lev.base:
            continue
        inv = lev.inv.get(beta)
        if inv is None:
            return g, i
        g = _mul(g, inv)
    return g, len(levels)


def _schreier_sims(degree: int, gens: Sequence[tuple], prefix: Sequence[int] = ()) -> list[_Level]:
    identity = tuple(range(degree))
    strong: list[tuple] = []
    seen = set()
    for g in gens:
        if g != identity and g not in seen:
            seen.add(g)
            strong.append(g)
    base = list(prefix)
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
    levels = []
    for i, b in enumerate(base):
        fixed = base[:i]
        levels.append(_Level(b, [s for s in strong if all(s[c] == c for c in fixed)]))
    for lev in levels:
        lev.rebuild(identity)

    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        restart = False
        for beta, u in list(lev.orbit.items()):
            for s in lev.gens:
                h = _mul(_mul(u, s), lev.inv[s[beta]])
                if h == identity:
                    continue
                res, j = _sift(levels, h, i + 1)
                if j == len(levels) and res == identity:
                    continue
                if j == len(levels):
                    levels.append(_Level(_first_moved(res), []))
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(res)
                    levels[l].rebuild(identity)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return levels


class Group:
    """A finitely generated permutation group with a verified stabilizer chain."""

    def __init__(self, generators: Iterable[Sequence[int]] = (), degree: int | None = None, *,
                 _levels: list[_Level] | None = None, _prefix: Sequence[int] = ()):
        gens = [tuple(g) for g in generators]
        if degree is None:
            if not gens:
                raise DegreeMismatch("degree is required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatch(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.identity = Permutation.identity(degree)
        ident = tuple(range(degree))
        self.generators: tuple[Permutation, ...] = tuple(
            g if isinstance(g, Permutation) else Permutation(g) for g in gens if g != ident)
        if _levels is None:
            _levels = _schreier_sims(degree, self.generators, _prefix)
        self._levels = _levels
        order = 1
        for lev in _levels:
            order *= len(lev.orbit)
        self.order = order
        self._cache: dict = {}

    # construction helpers -------------------------------------------------

    @classmethod
    def trivial(cls, degree: int) -> "Group":
        return cls((), degree)

    @classmethod
    def generate(cls, elements: Iterable[Sequence[int]], degree: int, *,
                 start: "Group | None" = None, stop_order: int | None = None) -> "Group":
        """Subgroup generated by ``elements``, keeping only needed generators.

        Elements already in the running subgroup are skipped.  If
        ``stop_order`` is given the scan stops once that order is reached.
        """
        group = start if start is not None else cls.trivial(degree)
        for x in elements:
            if stop_order is not None and group.order >= stop_order:
                break
            if not group.contains(x):
                group = group.extended([x])
        return group

    @classmethod
    def _regular(cls, generators: Sequence[Sequence[int]], degree: int) -> "Group":
        """Transitive group known to act regularly; the chain is one orbit."""
        gens = [tuple(g) for g in generators]
        ident = tuple(range(degree))
        lev = _Level(0, [g for g in gens if g != ident])
        lev.rebuild(ident)
        if len(lev.orbit) != degree:
            raise ValueError("regular construction needs a transitive group")
        levels = [lev] if degree > 1 else []
        return cls(gens, degree, _levels=levels)

    def extended(self, extra: Iterable[Sequence[int]]) -> "Group":
        extra = [tuple(x) for x in extra]
        return Group(list(self.generators) + extra, self.degree)

    # basic queries ----------------------------------------------------------

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lev.base for lev in self._levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        out, seen = [], set()
        for lev in self._levels:
            for g in lev.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(Permutation._raw(g))
        return tuple(out)

    def basic_orbits(self) -> list[tuple[int, ...]]:
        return [tuple(lev.orbit) for lev in self._levels]

    def is_trivial(self) -> bool:
        return self.order == 1

    def __len__(self) -> int:
        return self.order

    def sift(self, p: Sequence[int]) -> tuple[Permutation, int]:
        res, level = _sift(self._levels, tuple(p))
        return Permutation._raw(res), level

    def contains(self, p: Sequence[int]) -> bool:
        if len(p) != self.degree:
            raise DegreeMismatch(f"degree {len(p)} element tested against degree {self.degree} group")
        elems = self._cache.get("element_set")
        if elems is not None:
            return tuple(p) in elems
        res, level = _sift(self._levels, tuple(p))
        return level == len(self._levels) and all(i == j for i, j in enumerate(res))

    __contains__ = contains

    def is_subgroup_of(self, other: "Group") -> bool:
        if self.degree != other.degree or other.order % self.order:
            return False
        return all(other.contains(g) for g in self.generators)

    def __le__(self, other: "Group") -> bool:
        return self.is_subgroup_of(other)

    def __lt__(self, other: "Group") -> bool:
        return self.order < other.order and self.is_subgroup_of(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and self.is_subgroup_of(other))

    def __hash__(self) -> int:
        return hash((self.degree, self.order))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"<Group degree={self.degree} order={self.order} gens=[{gens}]>"

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(_mul(a, b) == _mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def normalizes(self, other: "Group") -> bool:
        """True if every generator of ``self`` normalizes ``other``."""
        return all(other.contains(_conj(h, g)) for g in self.generators for h in other.generators)

    def is_normal_in(self, ambient: "Group") -> bool:
        return self.is_subgroup_of(ambient) and ambient.normalizes(self)

    def conjugate(self, x: Sequence[int]) -> "Group":
        """``self ^ x``."""
        x = tuple(x)
        return Group([_conj(g, x) for g in self.generators], self.degree)

    # enumeration --------------------------------------------------------

    def _check_cap(self, cap: int | None) -> None:
        if cap is None:
            cap = current_caps().group_order
        if self.order > cap:
            raise CapExceeded(f"group of order {self.order} exceeds enumeration cap {cap}")

    def iter_elements(self) -> Iterator[tuple]:
        """Every element exactly once, as plain tuples, in chain order."""
        cached = self._cache.get("elements")
        if cached is not None:
            yield from cached
            return
        levels = self._levels
        ident = tuple(range(self.degree))

        def rec(i: int, acc: tuple):
            if i < 0:
                yield acc
                return
            for u in levels[i].orbit.values():
                yield from rec(i - 1, _mul(acc, u))

        yield from rec(len(levels) - 1, ident)

    def elements(self, cap: int | None = None) -> list[Permutation]:
        self._check_cap(cap)
        cached = self._cache.get("elements")
        if cached is None:
            cur = [tuple(range(self.degree))]
            for lev in reversed(self._levels):
                us = list(lev.orbit.values())
                cur = [_mul(x, u) for x in cur for u in us]
            cached = [Permutation._raw(x) for x in cur]
            self._cache["elements"] = cached
            self._cache["element_set"] = frozenset(cached)
        return cached

    def random_element(self, rng: random.Random) -> Permutation:
        g = tuple(range(self.degree))
        for lev in reversed(self._levels):
            g = _mul(g, rng.choice(list(lev.orbit.values())))
        return Permutation._raw(g)

    def conjugacy_classes(self, cap: int | None = None) -> list[list[Permutation]]:
        """Classes sorted by (element order, smallest element); each class sorted."""
        cached = self._cache.get("classes")
        if cached is not None:
            return cached
        elements = self.elements(cap)
        gens = self.generators
        seen: set = set()
        classes = []
        for x in elements:
            if x in seen:
                continue
            cls = [x]
            seen.add(x)
            for y in cls:
                for g in gens:
                    z = _conj(y, g)
                    if z not in seen:
                        seen.add(z)
                        cls.append(Permutation._raw(z))
            cls.sort()
            classes.append(cls)
        classes.sort(key=lambda c: (_order(c[0]), c[0]))
        self._cache["classes"] = classes
        return classes

    def class_representatives(self, cap: int | None = None) -> list[Permutation]:
        return [c[0] for c in self.conjugacy_classes(cap)]

    # stabilizers and cosets ---------------------------------------------

    def stabilizer(self, point: int) -> "Group":
        """Point stabilizer, read off a chain whose base starts at ``point``."""
        levels = _schreier_sims(self.degree, self.generators, (point,))
        gens = levels[1].gens if len(levels) > 1 else []
        if len(levels) > 1:
            return Group(gens, self.degree, _levels=[_copy_level(lev) for lev in levels[1:]])
        return Group.trivial(self.degree)

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for p in range(self.degree):
            if seen[p]:
                continue
            orb = [p]
            seen[p] = True
            for q in orb:
                for g in self.generators:
                    r = g[q]
                    if not seen[r]:
                        seen[r] = True
                        orb.append(r)
            out.append(tuple(sorted(orb)))
        return out

    def canonical_coset_rep(self, y: Sequence[int]) -> Permutation:
        """The chain-lexicographically least element of the right coset ``self * y``.

        For ``z = n * y`` we have ``z[b] = y[n[b]]``; choosing, level by level,
        the orbit point that minimises ``y`` at the base point gives the unique
        element of the coset whose base images are lexicographically least.
        """
        y = tuple(y)
        for lev in self._levels:
            best = min(lev.orbit, key=y.__getitem__)
            if best != lev.base:
                y = _mul(lev.orbit[best], y)
        return Permutation._raw(y)


def _copy_level(lev: _Level) -> _Level:
    new = _Level(lev.base, list(lev.gens))
    new.orbit = lev.orbit
    new.inv = lev.inv
    return new


# module-level API ---------------------------------------------------------

def group_from_generators(gens: Iterable[Sequence[int]], degree: int | None = None) -> Group:
    return Group(gens, degree)


def contains(G: Group, p: Sequence[int]) -> bool:
    return G.contains(p)


def elements(G: Group, cap: int | None = None) -> list[Permutation]:
    return G.elements(cap)


def join(*groups: Group) -> Group:
    """Subgroup generated by the union of the given subgroups."""
    degree = groups[0].degree
    best = max(groups, key=lambda H: H.order)
    extra = [g for H in groups if H is not best for g in H.generators if not best.contains(g)]
    if not extra:
        return best
    return Group.generate(extra, degree, start=best)


def intersection(A: Group, B: Group, cap: int | None = None) -> Group:
    """A ∩ B by filtering the elements of the smaller group."""
    if A.order > B.order:
        A, B = B, A
    if A.is_subgroup_of(B):
        return A
    return Group.generate((x for x in A.elements(cap) if B.contains(x)), A.degree)


class Homomorphism:
    """A map defined by generator images.

    ``evaluate`` may supply a direct way to compute images (coset actions do);
    otherwise images are read off the graph group ``{(x, f(x))}`` on the
    disjoint union of the two point sets.
    """

    def __init__(self, source: Group, target: Group, generator_images: Sequence[Sequence[int]], *,
                 evaluate: Callable[[Sequence[int]], Permutation] | None = None,
                 kernel: Group | None = None):
        if len(generator_images) != len(source.generators):
            raise ValueError("need one image per source generator")
        self.source = source
        self.target = target
        self.generator_images = tuple(Permutation(g) for g in generator_images)
        self._evaluate = evaluate
        self._kernel = kernel
        self._graph_levels: list[_Level] | None = None
        self.coset_representatives: list[Permutation] | None = None

    def _graph(self) -> list[_Level]:
        if self._graph_levels is None:
            ds = self.source.degree
            gens = [tuple(g) + tuple(ds + i for i in h)
                    for g, h in zip(self.source.generators, self.generator_images)]
            self._graph_levels = _schreier_sims(ds + self.target.degree, gens, range(ds))
        return self._graph_levels

    def is_homomorphism(self) -> bool:
        """The graph group has the order of the source iff the map is well defined."""
        order = 1
        for lev in self._graph():
            order *= len(lev.orbit)
        return order == self.source.order

    def __call__(self, x: Sequence[int]) -> Permutation:
        return self.image(x)

    def image(self, x: Sequence[int]) -> Permutation:
        if self._evaluate is not None:
            return self._evaluate(x)
        ds, dt = self.source.degree, self.target.degree
        res, _ = _sift(self._graph(), tuple(x) + tuple(range(ds, ds + dt)))
        if any(res[i] != i for i in range(ds)):
            raise NotSubgroup("element is not in the source group")
        residue = tuple(res[ds + i] - ds for i in range(dt))
        return Permutation._raw(_inv(residue))

    def image_group(self, H: Group | None = None) -> Group:
        if H is None:
            return self.target
        return Group([self.image(h) for h in H.generators], self.target.degree)

    def kernel(self) -> Group:
        if self._kernel is None:
            ds, dt = self.source.degree, self.target.degree
            gens = [tuple(g) + tuple(ds + i for i in h)
                    for g, h in zip(self.source.generators, self.generator_images)]
            levels = _schreier_sims(ds + dt, gens, range(ds, ds + dt))
            kgens = []
            for lev in levels:
                if lev.base < ds:
                    kgens.extend(lev.gens)
                    break
            self._kernel = Group([g[:ds] for g in kgens], ds)
        return self._kernel


def core(G: Group, N: Group, cap: int | None = None) -> Group:
    """Largest normal subgroup of ``G`` contained in ``N``."""
    C = N
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            conj = C.conjugate(g)
            if conj != C:
                C = intersection(C, conj, cap)
                changed = True
    return C


def right_cosets(G: Group, N: Group, cap: int | None = None,
                 acting: Sequence[Sequence[int]] | None = None):
    """Enumerate the right cosets of ``N`` in ``G``.

    Returns ``(reps, where, images)``: canonical representatives in
    breadth-first order from ``N`` itself, the map from canonical
    representative to coset number, and for every element of ``acting``
    (default: the generators of G) its permutation of the cosets.
    """
    if not N.is_subgroup_of(G):
        raise NotSubgroup("N is not a subgroup of G")
    index = G.order // N.order
    if cap is None:
        cap = current_caps().index
    if index > cap:
        raise IndexCapExceeded(f"index {index} exceeds coset cap {cap}")
    ident = tuple(range(G.degree))
    reps = [tuple(N.canonical_coset_rep(ident))]
    where = {reps[0]: 0}
    gens = [tuple(g) for g in G.generators]
    for y in reps:
        for s in gens:
            z = tuple(N.canonical_coset_rep(_mul(y, s)))
            if z not in where:
                where[z] = len(reps)
                reps.append(z)
    if len(reps) != index:
        raise AssertionError("coset enumeration disagrees with the chain order")
    acting = gens if acting is None else [tuple(a) for a in acting]
    images = [tuple(where[tuple(N.canonical_coset_rep(_mul(y, a)))] for y in reps) for a in acting]
    return reps, where, images


def double_coset_representatives(G: Group, H: Group, K: Group, cap: int | None = None) -> list[Permutation]:
    """One element of each double coset H x K, taken from the orbit-least right coset of H."""
    reps, _, images = right_cosets(G, H, cap, acting=K.generators)
    seen = [False] * len(reps)
    out = []
    for i in range(len(reps)):
        if seen[i]:
            continue
        seen[i] = True
        orbit = [i]
        for j in orbit:
            for img in images:
                k = img[j]
                if not seen[k]:
                    seen[k] = True
                    orbit.append(k)
        out.append(Permutation._raw(reps[i]))
    return out


def coset_action(G: Group, N: Group, cap: int | None = None) -> tuple[Group, Homomorphism]:
    """Action of ``G`` on the right cosets of ``N``.

    Cosets are numbered in breadth-first order from ``N`` itself (point 0).
    The kernel is the core of ``N``; for normal ``N`` it is ``N`` and the
    image acts regularly with order ``|G:N|``.
    """
    reps, where, images = right_cosets(G, N, cap)
    index = len(reps)

    def evaluate(x: Sequence[int]) -> Permutation:
        x = tuple(x)
        return Permutation._raw(tuple(where[tuple(N.canonical_coset_rep(_mul(y, x)))] for y in reps))

    normal = G.normalizes(N)
    if normal:
        target = Group._regular(images, index)
        kernel = N
    else:
        target = Group(images, index)
        kernel = None
    hom = Homomorphism(G, target, images, evaluate=evaluate, kernel=kernel)
    hom.coset_representatives = [Permutation._raw(y) for y in reps]
    if kernel is None:
        hom._kernel = core(G, N, cap=None)
    return target, hom
