"""Permutations of {0, ..., n-1}.

Permutations act on the right: ``i ^ p`` is ``p[i]`` and the product ``p * q``
applies ``p`` first, then ``q``.  With this convention conjugation and
commutators follow the usual group-theory notation::

    p ^ q  = q**-1 * p * q
    [p, q] = p**-1 * q**-1 * p * q

Text uses 1-based cycle notation, e.g. ``"(1 2 3)(4 5)"``; the identity is
``"()"``.  Internally everything is 0-based.

:class:`Permutation` subclasses :class:`tuple`, so it hashes and compares like
its image tuple.  Hot loops elsewhere in the package work on plain tuples with
the ``_mul``/``_inv`` helpers and only wrap results on the way out.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InvalidPermutation, ParseError


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[j] = i
    return tuple(r)


def _conj(p: tuple, q: tuple) -> tuple:
    # q^-1 p q maps q[i] to q[p[i]]
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[q[i]] = q[j]
    return tuple(r)


def _comm(p: tuple, q: tuple) -> tuple:
    return _mul(_inv(p), _conj(p, q))


def _pow(p: tuple, k: int) -> tuple:
    n = len(p)
    if k < 0:
        p, k = _inv(p), -k
    result = tuple(range(n))
    base = p
    while k:
        if k & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        k >>= 1
    return result


def _cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cycle = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cycle.append(j)
            j = p[j]
        out.append(tuple(cycle))
    return out


def _order(p: Sequence[int]) -> int:
    result = 1
    for c in _cycles(p):
        result = math.lcm(result, len(c))
    return result


def _first_moved(p: Sequence[int]) -> int:
    for i, j in enumerate(p):
        if i != j:
            return i
    return -1


class Permutation(tuple):
    """An immutable permutation stored as its tuple of images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        t = tuple.__new__(cls, images)
        n = len(t)
        if sorted(t) != list(range(n)):
            raise InvalidPermutation(f"not a permutation of 0..{n - 1}: {tuple(t)!r}")
        return t

    @classmethod
    def _raw(cls, images: Iterable[int]) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> "Permutation":
        """Build from 0-based cycles, composed left to right."""
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=-1) + 1
        if degree is None:
            degree = top
        elif top > degree:
            raise InvalidPermutation(f"point {top - 1} outside degree {degree}")
        result = tuple(range(degree))
        for c in cycles:
            if len(set(c)) != len(c):
                raise InvalidPermutation(f"repeated point in cycle {c!r}")
            if len(c) < 2:
                continue
            step = list(range(degree))
            for a, b in zip(c, c[1:] + c[:1]):
                step[a] = b
            result = _mul(result, tuple(step))
        return cls._raw(result)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        if len(other) != len(self):
            raise DegreeMismatch(f"degrees {len(self)} and {len(other)} differ")
        return Permutation._raw(_mul(self, other))

    __rmul__ = None  # tuple repetition must never kick in

    def __invert__(self) -> "Permutation":
        return Permutation._raw(_inv(self))

    inverse = __invert__

    def __pow__(self, k: int) -> "Permutation":
        return Permutation._raw(_pow(self, k))

    def __xor__(self, other) -> "Permutation":
        return self.conjugate(other)

    def conjugate(self, other: Sequence[int]) -> "Permutation":
        """``self ^ other = other**-1 * self * other``."""
        _check_degrees(self, other)
        return Permutation._raw(_conj(self, other))

    def commutator(self, other: Sequence[int]) -> "Permutation":
        _check_degrees(self, other)
        return Permutation._raw(_comm(self, other))

    def image(self, point: int) -> int:
        return self[point]

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def order(self) -> int:
        return _order(self)

    def cycles(self) -> list[tuple[int, ...]]:
        return _cycles(self)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self) if i != j)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in _cycles(self)) % 2 else 1

    def extend(self, degree: int) -> "Permutation":
        if degree < len(self):
            raise DegreeMismatch("cannot shrink a permutation")
        return Permutation._raw(tuple(self) + tuple(range(len(self), degree)))

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation.parse({format_cycles(self)!r}, {len(self)})"

    def __reduce__(self):
        return (Permutation, (tuple(self),))


def _check_degrees(p: Sequence[int], q: Sequence[int]) -> None:
    if len(p) != len(q):
        raise DegreeMismatch(f"degrees {len(p)} and {len(q)} differ")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    _check_degrees(p, q)
    return Permutation._raw(_mul(p, q))


def inverse(p: Permutation) -> Permutation:
    return Permutation._raw(_inv(p))


def conjugate(p: Permutation, q: Permutation) -> Permutation:
    _check_degrees(p, q)
    return Permutation._raw(_conj(p, q))


def commutator(p: Permutation, q: Permutation) -> Permutation:
    _check_degrees(p, q)
    return Permutation._raw(_comm(p, q))


def iterated_commutator(x: Sequence[int], g: Sequence[int], n: int) -> Permutation:
    """Left-normed ``[x, g, ..., g]`` with ``g`` repeated ``n`` times."""
    _check_degrees(x, g)
    c = tuple(x)
    g = tuple(g)
    for _ in range(n):
        c = _comm(c, g)
    return Permutation._raw(c)


def format_cycles(p: Sequence[int]) -> str:
    cycles = _cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based cycle notation; points may be separated by spaces or commas.

    Non-disjoint cycles are composed left to right.
    """
    cycles = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise ParseError(f"expected '(' in {text!r}", offset=pos)
        m = _CYCLE_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unterminated cycle in {text!r}", offset=pos)
        body = m.group(1).replace(",", " ").split()
        cycle = []
        for token in body:
            if not token.isdigit() or int(token) < 1:
                raise ParseError(f"bad point {token!r} in {text!r}", offset=m.start(1))
            cycle.append(int(token) - 1)
        if len(set(cycle)) != len(cycle):
            raise ParseError(f"repeated point in cycle {m.group(0)!r}", offset=pos)
        cycles.append(cycle)
        pos = m.end()
    if text.strip() == "":
        raise ParseError("empty permutation text; use '()' for the identity", offset=0)
    try:
        return Permutation.from_cycles(cycles, degree)
    except InvalidPermutation as exc:
        raise ParseError(str(exc), offset=0) from None
