"""Group recipes and the corpus file format.

A corpus file holds one JSON object per line::

    {"name": "S4", "constructor": "sym", "params": {"n": 4}, "elements": ["(1 2)"]}

Blank lines and lines starting with ``#`` are ignored.  Besides ``name``,
``constructor``, ``params`` and ``elements`` a recipe may carry

``checks``
    the only checks to run on this recipe (default: every applicable one);
``subgroup``
    generator cycle strings of a distinguished subgroup (the normal subgroup
    for automorphism checks, the vector space for the regular-vector search,
    the simple part for conjugator searches);
``options``
    free-form check parameters, e.g. ``{"point": 1, "expect": "none"}``.
"""

from __future__ import annotations

import dataclasses
import json
import re
from pathlib import Path
from typing import Any

from ..config import current_caps
from ..errors import CapExceeded, ParseError, UnknownConstructor
from ..group import Group
from ..perm import Permutation, _conj, parse_cycles
from ..products import TwistedPower, build_twisted_power

CONSTRUCTORS = ("generators", "sym", "alt", "cyclic", "dihedral", "psl2",
                "direct_product", "semidirect", "twisted_power")


# named families ------------------------------------------------------------------

def _cycle(points: list[int], degree: int) -> Permutation:
    return Permutation.from_cycles([points], degree)


def symmetric_group(n: int) -> Group:
    if n < 1:
        raise ValueError("degree must be positive")
    if n < 3:
        return Group([_cycle([0, 1], n)] if n == 2 else [], n)
    return Group([_cycle([0, 1], n), _cycle(list(range(n)), n)], n)


def alternating_group(n: int) -> Group:
    if n < 1:
        raise ValueError("degree must be positive")
    return Group([_cycle([0, 1, i], n) for i in range(2, n)], n)


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise ValueError("order must be positive")
    return Group([_cycle(list(range(n)), n)] if n > 1 else [], n)


def dihedral_group(n: int) -> Group:
    """Dihedral group of order 2n acting on the vertices of an n-gon."""
    if n < 3:
        raise ValueError("dihedral(n) needs n >= 3")
    flip = Permutation._raw(tuple((-i) % n for i in range(n)))
    return Group([_cycle(list(range(n)), n), flip], n)


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def psl2(p: int, pgl: bool = False) -> Group:
    """PSL(2, p) (or PGL(2, p)) on the projective line {0, ..., p-1, oo}.

    Point ``p`` stands for infinity.  Generators are x -> x + 1 and
    x -> -1/x, plus x -> nu * x for a nonsquare nu when ``pgl`` is set.
    """
    if not _is_prime(p) or p < 3:
        raise ValueError("psl2 needs an odd prime")
    inf = p

    def mobius(a, b, c, d):
        img = []
        for x in range(p + 1):
            if x == inf:
                img.append(inf if c == 0 else a * pow(c, -1, p) % p)
                continue
            den = (c * x + d) % p
            img.append(inf if den == 0 else (a * x + b) * pow(den, -1, p) % p)
        return Permutation(img)

    gens = [mobius(1, 1, 0, 1), mobius(0, p - 1, 1, 0)]
    if pgl:
        squares = {x * x % p for x in range(1, p)}
        nu = min(x for x in range(2, p) if x not in squares)
        gens.append(mobius(nu, 0, 0, 1))
    return Group(gens, p + 1)


_SHORT = re.compile(r"^\s*([a-z_0-9]+?)\s*\(\s*(\d+)\s*\)\s*$")


def named_group(text: str) -> Group:
    """``sym(5)``, ``alt(5)``, ``cyclic(7)``, ``dihedral(7)``, ``psl2(7)``, ``pgl2(7)``."""
    m = _SHORT.match(text)
    if not m:
        raise UnknownConstructor(f"unrecognised group name {text!r}")
    kind, n = m.group(1), int(m.group(2))
    builders = {"sym": symmetric_group, "alt": alternating_group, "cyclic": cyclic_group,
                "dihedral": dihedral_group, "psl2": psl2, "pgl2": lambda q: psl2(q, True)}
    if kind not in builders:
        raise UnknownConstructor(f"unknown group family {kind!r}")
    return builders[kind](n)


def default_ambient(text: str) -> Group | None:
    """The overgroup supplying outer automorphisms for a named simple group."""
    m = _SHORT.match(text)
    if not m:
        return None
    kind, n = m.group(1), int(m.group(2))
    if kind == "alt":
        return symmetric_group(n)
    if kind == "psl2":
        return psl2(n, True)
    return None


def direct_product(groups: list[Group]) -> Group:
    """Factors act on consecutive blocks of points."""
    degree = sum(G.degree for G in groups)
    gens = []
    off = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for i, j in enumerate(g):
                img[off + i] = off + j
            gens.append(Permutation._raw(img))
        off += G.degree
    return Group(gens, degree)


# recipes -----------------------------------------------------------------------

@dataclasses.dataclass
class BuiltGroup:
    name: str
    group: Group
    elements: list[Permutation]
    subgroup: Group | None
    twisted: TwistedPower | None
    options: dict


@dataclasses.dataclass
class GroupRecipe:
    name: str
    constructor: str
    params: dict = dataclasses.field(default_factory=dict)
    elements: list[str] = dataclasses.field(default_factory=list)
    checks: list[str] | None = None
    subgroup: list[str] | None = None
    options: dict = dataclasses.field(default_factory=dict)
    line: int | None = None
    error: str | None = None  # set by a lenient load when the line was unusable

    _built: BuiltGroup | None = dataclasses.field(default=None, repr=False, compare=False)

    @classmethod
    def from_dict(cls, data: dict, line: int | None = None) -> "GroupRecipe":
        if not isinstance(data, dict):
            raise ParseError("recipe must be a JSON object", line=line)
        for key in ("name", "constructor"):
            if key not in data:
                raise ParseError(f"recipe is missing {key!r}", line=line)
        known = {"name", "constructor", "params", "elements", "checks", "subgroup", "options"}
        extra = set(data) - known
        if extra:
            raise ParseError(f"unknown recipe fields {sorted(extra)}", line=line)
        if data["constructor"] not in CONSTRUCTORS:
            raise UnknownConstructor(f"unknown constructor {data['constructor']!r}"
                                     + (f" on line {line}" if line else ""))
        return cls(name=str(data["name"]), constructor=data["constructor"],
                   params=dict(data.get("params") or {}), elements=list(data.get("elements") or []),
                   checks=data.get("checks"), subgroup=data.get("subgroup"),
                   options=dict(data.get("options") or {}), line=line)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "constructor": self.constructor,
                               "params": self.params, "elements": self.elements}
        if self.checks is not None:
            out["checks"] = self.checks
        if self.subgroup is not None:
            out["subgroup"] = self.subgroup
        if self.options:
            out["options"] = self.options
        return out

    @property
    def structural(self) -> bool:
        """Recipes only meant for structural checks may exceed the element cap."""
        return self.constructor == "twisted_power" or bool(self.options.get("structural"))

    def build(self) -> BuiltGroup:
        if self._built is None:
            self._built = self._build()
        return self._built

    def _parse(self, text: str, degree: int) -> Permutation:
        try:
            return parse_cycles(text, degree)
        except ParseError as exc:
            raise ParseError(f"recipe {self.name!r}: {exc}", line=self.line, offset=exc.offset) from None

    def _build(self) -> BuiltGroup:
        twisted = None
        G: Group
        if self.constructor == "twisted_power":
            twisted = _build_twisted(self.params, self._parse)
            G = twisted.realized
        else:
            G = build_group(self.constructor, self.params, self._parse)
        caps = current_caps()
        cap = caps.structural_order if self.structural else caps.group_order
        if G.order > cap:
            raise CapExceeded(f"recipe {self.name!r} has order {G.order} above cap {cap}")
        elements = [self._parse(e, G.degree) for e in self.elements]
        for e in elements:
            if not G.contains(e):
                raise ParseError(f"recipe {self.name!r}: marked element {e} is not in the group",
                                 line=self.line)
        sub = None
        if self.subgroup is not None:
            sub = Group([self._parse(e, G.degree) for e in self.subgroup], G.degree)
            if not sub.is_subgroup_of(G):
                raise ParseError(f"recipe {self.name!r}: subgroup is not inside the group", line=self.line)
        return BuiltGroup(self.name, G, elements, sub, twisted, dict(self.options))


def _recipe_group(desc, parse) -> Group:
    if isinstance(desc, str):
        return named_group(desc)
    if isinstance(desc, dict) and "constructor" in desc:
        return build_group(desc["constructor"], desc.get("params") or {}, parse)
    raise UnknownConstructor(f"cannot build a group from {desc!r}")


def build_group(constructor: str, params: dict, parse=parse_cycles) -> Group:
    try:
        if constructor == "generators":
            gens = params.get("generators", [])
            degree = params.get("degree")
            if degree is None:
                if not gens:
                    raise ParseError("generators recipe without generators needs a degree")
                degree = max(parse(g, None).degree for g in gens)
            return Group([parse(g, degree) for g in gens], degree)
        if constructor == "sym":
            return symmetric_group(int(params["n"]))
        if constructor == "alt":
            return alternating_group(int(params["n"]))
        if constructor == "cyclic":
            return cyclic_group(int(params["n"]))
        if constructor == "dihedral":
            return dihedral_group(int(params["n"]))
        if constructor == "psl2":
            return psl2(int(params["p"]), bool(params.get("pgl", False)))
        if constructor == "direct_product":
            return direct_product([_recipe_group(f, parse) for f in params["factors"]])
        if constructor == "semidirect":
            N = _recipe_group(params["normal"], parse)
            acting = [parse(a, N.degree) for a in params.get("acting", [])]
            if not all(N.contains(_conj(n, a)) for a in acting for n in N.generators):
                raise ValueError("acting elements must normalise the normal subgroup")
            return N.extended(acting)
        if constructor == "twisted_power":
            return _build_twisted(params, parse).realized
    except KeyError as exc:
        raise ParseError(f"{constructor} recipe is missing parameter {exc.args[0]!r}") from None
    raise UnknownConstructor(f"unknown constructor {constructor!r}")


def _build_twisted(params: dict, parse) -> TwistedPower:
    base_desc = params["base"]
    base = _recipe_group(base_desc, parse)
    if "ambient" in params:
        ambient = _recipe_group(params["ambient"], parse)
    else:
        ambient = default_ambient(base_desc) if isinstance(base_desc, str) else None
    twist = params.get("twist")
    twist_perm = parse(twist, base.degree) if twist else None
    return build_twisted_power(base, int(params["r"]), twist_perm, ambient)


# corpus files -----------------------------------------------------------------

def parse_corpus(text: str, strict: bool = True) -> list[GroupRecipe]:
    recipes = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            try:
                data = json.loads(stripped)
            except json.JSONDecodeError as exc:
                col = exc.colno + (len(line) - len(line.lstrip()))
                raise ParseError(f"invalid JSON: {exc.msg}", line=lineno, column=col) from None
            recipe = GroupRecipe.from_dict(data, line=lineno)
            recipe.build()
        except (ParseError, UnknownConstructor, CapExceeded, ValueError) as exc:
            if strict:
                raise
            name = f"line {lineno}"
            try:
                name = str(json.loads(stripped).get("name", name))
            except Exception:
                pass
            recipes.append(GroupRecipe(name=name, constructor="invalid", line=lineno,
                                       error=f"{type(exc).__name__}: {exc}"))
            continue
        recipes.append(recipe)
    return recipes


def load_corpus(path: str | Path, strict: bool = True) -> list[GroupRecipe]:
    """Read and validate a corpus file; every recipe is built once."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_corpus(text, strict=strict)


def default_corpus_path() -> Path:
    return Path(__file__).resolve().parent.parent / "data" / "default_corpus.jsonl"


def load_default_corpus(strict: bool = True) -> list[GroupRecipe]:
    return load_corpus(default_corpus_path(), strict=strict)
