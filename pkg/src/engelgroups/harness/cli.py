"""Command line entry point.

    engelgroups series sym(5)
    engelgroups engel sym(4) --element "(1 2 3)" --n 2
    engelgroups verify --corpus default --checks baer,theorem1 --out report.json
    engelgroups question1 --base alt(5) --r 2 --twist "(1 2)" --max-n 3

A ``<group>`` argument is a family shorthand (``sym(5)``, ``alt(6)``,
``cyclic(8)``, ``dihedral(7)``, ``psl2(11)``, ``pgl2(7)``) or the name of a
recipe in the corpus given by ``--corpus``.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..config import Caps, use_caps
from ..errors import CapExceeded, GroupError, ParseError, UnknownConstructor
from ..engel import engel_subgroup, engel_verdict
from ..perm import format_cycles, parse_cycles
from ..products import build_twisted_power, question1_probe
from ..series import (classify_simplicity, fitting_series, generalized_fitting_series, is_soluble,
                      nonsoluble_series)
from .recipes import default_ambient, default_corpus_path, load_corpus, named_group
from .suite import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, SuiteOptions, parse_checks, run_suite, write_report


def _int_list(text: str) -> tuple[int, ...]:
    """``1,2,3`` or ``1-5``."""
    text = text.strip()
    if "-" in text and "," not in text:
        lo, hi = text.split("-", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in text.split(",") if x.strip())


def _corpus_path(text: str | None):
    return default_corpus_path() if text in (None, "default") else text


def _resolve_group(text: str, corpus: str | None):
    try:
        return named_group(text), text
    except UnknownConstructor:
        pass
    for recipe in load_corpus(_corpus_path(corpus)):
        if recipe.name == text:
            return recipe.build().group, recipe.name
    raise UnknownConstructor(f"no group family or corpus recipe named {text!r}")


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=1, sort_keys=True))


def cmd_series(args) -> int:
    G, name = _resolve_group(args.group, args.corpus)
    out = {"group": name, "order": G.order, "degree": G.degree,
           "soluble": is_soluble(G), "simplicity": classify_simplicity(G)}
    if out["soluble"]:
        out["fitting"] = fitting_series(G).to_dict()
    out["generalized_fitting"] = generalized_fitting_series(G).to_dict()
    report, sections = nonsoluble_series(G)
    out["nonsoluble"] = report.to_dict()
    out["sections"] = [s.to_dict() for s in sections]
    if args.json:
        _print_json(out)
        return EXIT_OK
    print(f"{name}: order {G.order} on {G.degree} points, {out['simplicity']}, "
          f"{'soluble' if out['soluble'] else 'nonsoluble'}")
    for key in ("fitting", "generalized_fitting", "nonsoluble"):
        if key in out:
            terms = " < ".join(f"{t['label']}({t['order']})" for t in out[key]["terms"])
            print(f"  {key} (height {out[key]['height']}): {terms}")
    for s in out["sections"]:
        print(f"  section {s['level']}: factors {s['factor_orders']}, kernel order {s['kernel_order']}")
    return EXIT_OK


def cmd_engel(args) -> int:
    G, name = _resolve_group(args.group, args.corpus)
    g = parse_cycles(args.element, G.degree)
    trace = engel_verdict(G, g)
    out = {"group": name, **trace.to_dict()}
    if args.n is not None:
        E = engel_subgroup(G, g, args.n)
        out["n"] = args.n
        out["E_n_order"] = E.order
        out["E_n_generators"] = [format_cycles(x) for x in E.generators]
    if args.json:
        _print_json(out)
        return EXIT_OK
    print(f"{format_cycles(g)} in {name}: {out['verdict']}"
          + (f" (C_{out['engel_n']} = 1)" if out["engel_n"] else
             f" (C-sets cycle from C_{trace.cycle_start} with period {trace.cycle_length})"))
    print(f"  |C_k|: {trace.set_sizes()}")
    print(f"  |<C_k>|: {trace.orders}")
    if args.n is not None:
        print(f"  |E_{args.n}(g)| = {out['E_n_order']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    recipes = load_corpus(_corpus_path(args.corpus), strict=not args.lenient)
    options = SuiteOptions(n_range=_int_list(args.n), s_range=_int_list(args.s),
                           all_elements=args.all_elements, jobs=args.jobs, caps=args.caps)
    records, summary = run_suite(recipes, parse_checks(args.checks), options)
    if args.out:
        write_report(records, summary, args.out)
    for rec in records:
        if rec["verdict"] in ("fail", "error") or rec["witness"].get("violation"):
            tag = "POTENTIAL COUNTEREXAMPLE" if rec["witness"].get("violation") else rec["verdict"].upper()
            print(f"{tag}: {rec['check']} {rec['group']} {rec['element'] or ''}".rstrip(), file=sys.stderr)
    print(" ".join(f"{k}={v}" for k, v in summary.items()))
    return summary["exit_code"]


def cmd_question1(args) -> int:
    base = named_group(args.base)
    twist = parse_cycles(args.twist, base.degree) if args.twist else None
    T = build_twisted_power(base, args.r, twist, default_ambient(args.base))
    report = question1_probe(T, args.max_n)
    if args.json:
        _print_json(report.to_dict())
        return EXIT_OK
    print(f"{args.base}^{args.r}, twist {report.twist}, phi of order {report.phi_order}"
          f" ({'regular' if report.regular else 'not regular'} on the factors)")
    for rec in report.records:
        print(f"  n={rec.n}: |E_S,n(phi)| = {rec.order} {'= |S|' if rec.equals_S else '< |S|'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="engelgroups",
                                     description="Engel subgroups and Fitting-type series of permutation groups")
    parser.add_argument("--caps", type=Caps.parse, default=None,
                        help="override caps, e.g. order=50000,index=8000")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", help="Fitting, generalised Fitting and nonsoluble series")
    p.add_argument("group")
    p.add_argument("--corpus", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("engel", help="Engel verdict and E_n(g) for one element")
    p.add_argument("group")
    p.add_argument("--element", required=True, help='cycle notation, e.g. "(1 2 3)"')
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--corpus", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_engel)

    p = sub.add_parser("verify", help="run checks over a corpus and write a JSON report")
    p.add_argument("--corpus", default="default")
    p.add_argument("--checks", default="all", help="comma separated check ids, or 'all'")
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--all-elements", action="store_true",
                   help="every element instead of one per conjugacy class")
    p.add_argument("--n", default="1,2,3", help="n values, e.g. 1,2,3 or 1-5")
    p.add_argument("--s", default="1,2,3", help="s values for the pr2 check")
    p.add_argument("--lenient", action="store_true", help="keep going past bad corpus lines")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("question1", help="E_S,n(phi) for a twisted power S^r<phi>")
    p.add_argument("--base", required=True, help="e.g. alt(5) or psl2(7)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--twist", default=None, help="automorphism applied on wrap-around, as a permutation")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_question1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    caps = args.caps or Caps()
    if args.command == "verify":
        args.caps = caps
    try:
        with use_caps(caps):
            return args.func(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, UnknownConstructor, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
