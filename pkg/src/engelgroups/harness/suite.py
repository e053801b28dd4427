"""Run checks over a corpus and write the JSON report.

Records are produced per (recipe, check, element).  A failure inside one
record becomes an ``error`` record and never stops the run.  Every record
carries a ``replay`` entry (the recipe, the check, the element and the
parameters), and :func:`replay_record` re-runs exactly that computation.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import json
from pathlib import Path
from typing import Iterable, Sequence

from ..config import Caps, current_caps, use_caps
from ..errors import CapExceeded
from ..perm import format_cycles, parse_cycles
from ..series import is_soluble
from . import checks as C
from .recipes import BuiltGroup, GroupRecipe

ELEMENT_CHECKS = ("baer", "theorem1", "theorem2", "theorem3", "conjectures", "pr2")
GROUP_CHECKS = ("radical_identities", "gfit_oracle")
TWISTED_CHECKS = ("d_normalizer", "d_conjugates", "diagonal_overgroups", "factor_commutators",
                  "question1", "conjugator_regular", "conjugator_prime_power")
INSTANCE_CHECKS = ("prop_sol", "regular_vector", "conjugator_counterexample", "conjugator_covering")
ALL_CHECKS = ELEMENT_CHECKS + GROUP_CHECKS + TWISTED_CHECKS + INSTANCE_CHECKS

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclasses.dataclass
class SuiteOptions:
    n_range: tuple[int, ...] = (1, 2, 3)
    s_range: tuple[int, ...] = (1, 2, 3)
    all_elements: bool = False
    jobs: int = 1
    caps: Caps | None = None


def parse_checks(text: str | Sequence[str] | None) -> list[str]:
    if text is None:
        return list(ALL_CHECKS)
    items = text.split(",") if isinstance(text, str) else list(text)
    items = [c.strip() for c in items if c.strip()]
    if not items or items == ["all"]:
        return list(ALL_CHECKS)
    unknown = [c for c in items if c not in ALL_CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    return items


# dispatch --------------------------------------------------------------------------

def run_check(built: BuiltGroup, check: str, element: str | None, params: dict) -> C.CheckReport:
    G = built.group
    name = built.name
    g = parse_cycles(element, G.degree) if element is not None else None
    T = built.twisted
    n = params.get("n", (1, 2, 3))
    n_range = (n,) if isinstance(n, int) else tuple(n)
    if check == "baer":
        return C.check_baer(G, g, name)
    if check == "theorem1":
        return C.check_theorem1(G, g, n_range, name)
    if check == "theorem2":
        return C.check_theorem2(G, g, n_range, name)
    if check == "theorem3":
        return C.check_theorem3(G, g, n_range, name)
    if check == "conjectures":
        return C.check_conjectures(G, g, n_range, name)
    if check == "pr2":
        return C.check_pr2(G, g, int(params.get("n", 1)), tuple(params.get("s", (1, 2, 3))), name)
    if check == "radical_identities":
        return C.check_radical_identities(G, name)
    if check == "gfit_oracle":
        return C.check_gfit_oracle(G, name)
    if check == "prop_sol":
        return C.check_prop_sol(G, built.subgroup, g, n_range, name)
    if check == "regular_vector":
        return C.check_regular_vector(built.subgroup, g, name)
    if check == "conjugator_counterexample":
        return C.check_conjugator_counterexample(G, built.subgroup, g, int(params["point"]), name)
    if check == "conjugator_covering":
        return C.check_conjugator_covering(G, built.subgroup, g, name)
    if T is None:
        raise ValueError(f"check {check!r} needs a twisted_power recipe")
    if check == "d_normalizer":
        return C.check_d_normalizer(T, name)
    if check == "d_conjugates":
        return C.check_d_conjugates(T, int(params.get("samples", 40)), int(params.get("seed", 0)), name)
    if check == "diagonal_overgroups":
        return C.check_diagonal_overgroups(T, name)
    if check == "factor_commutators":
        return C.check_factor_commutators(T, n_range, name)
    if check == "question1":
        return C.check_question1(T, int(params.get("n_max", 3)), name)
    if check == "conjugator_regular":
        return C.check_conjugator_regular(T, name)
    if check == "conjugator_prime_power":
        return C.check_conjugator_prime_power(T, name)
    raise ValueError(f"unknown check {check!r}")


def _default_checks(built: BuiltGroup, recipe: GroupRecipe) -> list[str]:
    caps = current_caps()
    G = built.group
    out: list[str] = []
    small = G.order <= caps.group_order
    if recipe.subgroup is None and small:
        out += [c for c in ELEMENT_CHECKS if c != "theorem1" or is_soluble(G)]
        out.append("radical_identities")
        if G.order <= caps.subgroup_enum:
            out.append("gfit_oracle")
    T = built.twisted
    if T is not None:
        prime_r = C._is_prime(T.r)
        if T.trivial_twist:
            out += ["d_normalizer", "d_conjugates"]
            if prime_r:
                out += ["diagonal_overgroups", "factor_commutators"]
        out.append("question1")
        if small and T.phi_order == T.r:
            out.append("conjugator_regular")
        if small and C._is_prime_power(T.block_stabilizer_order()):
            out.append("conjugator_prime_power")
    return out


def _selected_elements(built: BuiltGroup, all_elements: bool) -> list[str]:
    G = built.group
    out = [format_cycles(e) for e in built.elements]
    if G.order <= current_caps().group_order:
        source = G.elements() if all_elements else G.class_representatives()
        for x in source:
            s = format_cycles(x)
            if s not in out:
                out.append(s)
    return out


def _params_for(check: str, recipe: GroupRecipe, options: SuiteOptions) -> dict:
    opts = recipe.options
    n_range = list(opts.get("n_range", options.n_range))
    if check == "pr2":
        return {"n": int(opts.get("pr2_n", 1)), "s": list(opts.get("s_range", options.s_range))}
    if check in ("theorem1", "theorem2", "theorem3", "conjectures", "prop_sol", "factor_commutators"):
        return {"n": n_range}
    if check == "question1":
        return {"n_max": int(opts.get("n_max", max(options.n_range)))}
    if check == "conjugator_counterexample":
        return {"point": int(opts.get("point", 1))}
    if check == "d_conjugates":
        return {"samples": int(opts.get("samples", 40)), "seed": int(opts.get("seed", 0))}
    return {}


def _error_record(check: str, group: str, element: str | None, params: dict, exc: BaseException,
                  replay: dict | None) -> dict:
    rec = C.CheckReport(check, group, element, params, "error",
                        {"error": type(exc).__name__, "message": str(exc),
                         "cap_exceeded": isinstance(exc, CapExceeded)}, replay)
    return rec.to_dict()


def run_recipe(recipe: GroupRecipe, checks: Sequence[str], options: SuiteOptions) -> list[dict]:
    """All records for one recipe, in (check, element) order."""
    if recipe.error is not None:
        kind = CapExceeded if recipe.error.split(":")[0].endswith("CapExceeded") else ValueError
        return [_error_record("load", recipe.name, None, {}, kind(recipe.error), None)]
    try:
        built = recipe.build()
    except Exception as exc:  # noqa: BLE001 - reported per record
        return [_error_record("load", recipe.name, None, {}, exc, None)]
    records: list[dict] = []
    if recipe.checks is not None:
        wanted = [c for c in checks if c in recipe.checks]
    else:
        try:
            defaults = _default_checks(built, recipe)
        except Exception as exc:  # noqa: BLE001
            return [_error_record("select", recipe.name, None, {}, exc, None)]
        wanted = [c for c in checks if c in defaults]
    elements: list[str] | None = None
    for check in wanted:
        params = _params_for(check, recipe, options)
        if check in ELEMENT_CHECKS:
            if elements is None:
                elements = _selected_elements(built, options.all_elements)
            targets: list[str | None] = list(elements)
        elif check in INSTANCE_CHECKS:
            targets = [format_cycles(e) for e in built.elements]
        else:
            targets = [None]
        for element in targets:
            replay = {"recipe": recipe.to_dict(), "check": check, "element": element, "params": params}
            try:
                rec = run_check(built, check, element, params)
                rec.replay = replay
                records.append(rec.to_dict())
            except Exception as exc:  # noqa: BLE001
                records.append(_error_record(check, recipe.name, element, params, exc, replay))
    return records


def _worker(args) -> list[dict]:
    recipe_dict, line, checks, options = args
    caps = options.caps or Caps()
    with use_caps(caps):
        recipe = GroupRecipe.from_dict(recipe_dict, line)
        return run_recipe(recipe, checks, options)


def summarize(records: Iterable[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "report": 0, "error": 0}
    flagged = cap = 0
    total = 0
    for rec in records:
        total += 1
        counts[rec["verdict"]] = counts.get(rec["verdict"], 0) + 1
        if rec["witness"].get("violation"):
            flagged += 1
        if rec["verdict"] == "error" and rec["witness"].get("cap_exceeded"):
            cap += 1
    failing = counts["fail"] + counts["error"] - cap
    exit_code = EXIT_FAIL if failing else (EXIT_CAP if cap else EXIT_OK)
    return {"records": total, **counts, "flagged": flagged, "cap_exceeded": cap, "exit_code": exit_code}


def run_suite(corpus: Sequence[GroupRecipe], checks: Sequence[str] | str | None = None,
              options: SuiteOptions | None = None) -> tuple[list[dict], dict]:
    options = options or SuiteOptions()
    checks = parse_checks(checks)
    caps = options.caps or current_caps()
    options = dataclasses.replace(options, caps=caps)
    records: list[dict] = []
    if options.jobs > 1 and len(corpus) > 1:
        good = [r for r in corpus if r.error is None]
        bad = {id(r) for r in corpus if r.error is not None}
        with concurrent.futures.ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = iter(pool.map(_worker, [(r.to_dict(), r.line, checks, options) for r in good]))
            for r in corpus:
                records += run_recipe(r, checks, options) if id(r) in bad else next(results)
    else:
        with use_caps(caps):
            for r in corpus:
                records += run_recipe(r, checks, options)
    return records, summarize(records)


def write_report(records: list[dict], summary: dict, path: str | Path) -> None:
    payload = list(records) + [{"summary": summary}]
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n", encoding="utf-8")


def read_report(path: str | Path) -> tuple[list[dict], dict]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not data or "summary" not in data[-1]:
        raise ValueError("report has no trailing summary object")
    return data[:-1], data[-1]["summary"]


def replay_record(record: dict, built: BuiltGroup | None = None) -> dict:
    """Re-run a record from its serialised witness and return the new record.

    ``built`` may supply an already constructed group for the record's
    recipe; by default the recipe is rebuilt from scratch.
    """
    rp = record.get("replay")
    if rp is None:
        raise ValueError("record carries no replay data")
    recipe = GroupRecipe.from_dict(rp["recipe"])
    if built is None:
        built = recipe.build()
    try:
        rec = run_check(built, rp["check"], rp["element"], rp["params"])
        rec.replay = rp
        return rec.to_dict()
    except Exception as exc:  # noqa: BLE001
        return _error_record(rp["check"], recipe.name, rp["element"], rp["params"], exc, rp)


def replay_records(records: Iterable[dict]) -> list[dict]:
    """Replay many records, building each distinct recipe once."""
    built: dict[str, BuiltGroup] = {}
    out = []
    for rec in records:
        rp = rec.get("replay")
        if rp is None:
            raise ValueError("record carries no replay data")
        key = json.dumps(rp["recipe"], sort_keys=True)
        if key not in built:
            built[key] = GroupRecipe.from_dict(rp["recipe"]).build()
        out.append(replay_record(rec, built[key]))
    return out
