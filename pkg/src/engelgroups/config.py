"""Size caps for exhaustive computations.

Caps are configuration rather than constants: every routine that enumerates
elements, cosets or subgroups reads the active :class:`Caps` through
:func:`current_caps`, and callers can override them for a block of code with
:func:`use_caps`.
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses


@dataclasses.dataclass(frozen=True)
class Caps:
    group_order: int = 20000
    index: int = 5000
    subgroup_enum: int = 500
    engel_n: int = 40
    # S = S_1 x ... x S_r in the twisted-power checks can be far bigger than
    # anything enumerated element by element elsewhere.
    structural_order: int = 1000000

    def replace(self, **changes) -> "Caps":
        return dataclasses.replace(self, **changes)

    @classmethod
    def parse(cls, text: str, base: "Caps | None" = None) -> "Caps":
        """Parse ``"group_order=20000,index=5000"`` style overrides."""
        caps = base or cls()
        if not text:
            return caps
        aliases = {"order": "group_order", "subgroups": "subgroup_enum", "n": "engel_n",
                   "structural": "structural_order"}
        names = {f.name for f in dataclasses.fields(cls)}
        changes = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = aliases.get(key.strip(), key.strip())
            if not sep or key not in names:
                raise ValueError(f"bad cap setting {item!r}")
            changes[key] = int(value)
        return caps.replace(**changes)


_CAPS: contextvars.ContextVar[Caps] = contextvars.ContextVar("engelgroups_caps", default=Caps())


def current_caps() -> Caps:
    return _CAPS.get()


@contextlib.contextmanager
def use_caps(caps: Caps | None = None, **changes):
    new = (caps or current_caps()).replace(**changes)
    token = _CAPS.set(new)
    try:
        yield new
    finally:
        _CAPS.reset(token)
