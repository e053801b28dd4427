import pytest

from engelgroups.group import Group
from engelgroups.harness.recipes import (alternating_group, cyclic_group, dihedral_group, psl2,
                                         symmetric_group)
from engelgroups.perm import parse_cycles


def P(text, degree):
    return parse_cycles(text, degree)


def gens(texts, degree):
    return Group([parse_cycles(t, degree) for t in texts], degree)


def closure_elements(generators, degree):
    """Every element of <generators> by breadth-first multiplication."""
    identity = tuple(range(degree))
    seen = {identity}
    frontier = [identity]
    gens_ = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens_:
                h = tuple(g[e[i]] for i in range(degree))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


SMALL_GROUPS = {
    "sym3": lambda: symmetric_group(3),
    "sym4": lambda: symmetric_group(4),
    "alt4": lambda: alternating_group(4),
    "alt5": lambda: alternating_group(5),
    "sym5": lambda: symmetric_group(5),
    "c6": lambda: cyclic_group(6),
    "d8": lambda: dihedral_group(4),
    "d10": lambda: dihedral_group(5),
    "psl2_5": lambda: psl2(5),
    "sl23": lambda: gens(["(3 4 5)(6 8 7)", "(1 6 2 3)(4 7 8 5)"], 8),
    "gl23": lambda: gens(["(3 4 5)(6 8 7)", "(1 6 2 3)(4 7 8 5)", "(3 6)(4 7)(5 8)"], 8),
    "c3c3_4": lambda: gens(["(1 2 3)", "(4 5 6)", "(1 4)(2 5 3 6)"], 6),
}


@pytest.fixture(params=sorted(SMALL_GROUPS))
def small_group(request):
    return SMALL_GROUPS[request.param]()


# acceptance criteria log, printed at the end of the run

ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail=""):
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
