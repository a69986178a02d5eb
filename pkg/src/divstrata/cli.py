"""Command line interface.

Exit status: 0 success, 1 validation failure, 2 bad input, 3 budget exceeded.
Germ and divide arguments accept a path or ``fixture:NAME`` for the shipped
examples (gl4, node, cusp).
"""
from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

from . import fixtures
from .branches import (
    complete_intersection_matrix,
    germ_from_json,
    germ_invariants,
    load_germ,
    semigroup_and_delta,
)
from .divide import (
    divide_from_json,
    dynkin_to_dot,
    dynkin_to_json,
    intersection_form,
    load_divide,
    validate,
)
from .errors import BudgetExceeded, DivstrataError, InputError, NotApplicable, ValidationFailed
from .generators import generate_grid_divide, generate_line_arrangement_divide
from .lattice import DEFAULT_BUDGET
from .monodromy import radical, sp_fullness_evidence, symplectic_quotient
from .partitions import MAX_BRANCHES
from .report import classes_report, decompose, homology_limit_report, multiplicities, prepare
from .strata import class_sum, curve_component_count

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _germ(arg):
    if arg.startswith("fixture:"):
        g = germ_from_json(fixtures.load_json(f"{arg[8:]}_germ.json"))
    else:
        g = load_germ(arg)
    return complete_intersection_matrix(g)


def _divide(arg, germ=None):
    if arg.startswith("fixture:"):
        return divide_from_json(fixtures.load_json(f"{arg[8:]}_divide.json"), germ)
    return load_divide(arg, germ)


def _fixture_guard(fn):
    def wrapped(args, out):
        try:
            return fn(args, out)
        except FileNotFoundError as exc:
            raise InputError(f"unknown fixture: {exc}") from None
    return wrapped


def _primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--primes must be comma-separated integers, got {text!r}") from None


@_fixture_guard
def cmd_invariants(args, out):
    g = _germ(args.germ)
    inv = germ_invariants(g)
    data = inv.as_dict()
    data["branches"] = [
        {
            "id": b.id,
            "characteristic": b.characteristic.as_list(),
            "semigroup_generators": list(semigroup_and_delta(b.characteristic)[0]),
            "delta": b.delta,
        }
        for b in g.branches
    ]
    out.write(_dump(data))
    return EXIT_OK


@_fixture_guard
def cmd_divide_check(args, out):
    g = _germ(args.germ)
    d = _divide(args.divide, g)
    report = validate(d)
    out.write(_dump(report.as_dict()))
    return EXIT_OK if report.passed else EXIT_INVALID


@_fixture_guard
def cmd_dynkin(args, out):
    g = _germ(args.germ) if args.germ else None
    d = _divide(args.divide, g)
    lat = intersection_form(d)
    out.write(dynkin_to_dot(lat) if args.format == "dot" else _dump(dynkin_to_json(lat)))
    return EXIT_OK


@_fixture_guard
def cmd_monodromy(args, out):
    g = _germ(args.germ) if args.germ else None
    d = _divide(args.divide, g)
    lat = intersection_form(d)
    sq = symplectic_quotient(lat, args.sign)
    data = {
        "basis": [b.label for b in lat.basis],
        "sign_convention": args.sign,
        "radical": [list(r) for r in radical(lat).rows],
        "radical_rank": sq.radical_basis.nrows,
        "quotient_rank": sq.quotient_rank,
        "pfaffian_squared": sq.pfaffian_squared(),
        "nondegenerate": sq.is_nondegenerate(),
    }
    try:
        data["evidence"] = sp_fullness_evidence(sq, _primes(args.primes)).as_dict()
    except NotApplicable as exc:
        data["evidence"] = None
        data["evidence_note"] = str(exc)
    out.write(_dump(data))
    return EXIT_OK


@_fixture_guard
def cmd_classes(args, out):
    g = _germ(args.germ)
    d = _divide(args.divide, g)
    _, cs, _ = prepare(g, d)
    data = classes_report(cs)
    if cs.r > MAX_BRANCHES:
        raise BudgetExceeded(f"{cs.r} branches: too many subsets to list")
    subsets = []
    for k in range(1, cs.r + 1):
        for I in combinations(range(1, cs.r + 1), k):
            c = class_sum(cs, I)
            subsets.append({"subset": list(I), "height": c.height, "height_formula": c.height_formula})
    data["subset_heights"] = subsets
    out.write(_dump(data))
    return EXIT_OK


@_fixture_guard
def cmd_strata(args, out):
    g = _germ(args.germ)
    d = _divide(args.divide, g)
    _, cs, records = prepare(g, d)
    mults = multiplicities(records, args.n, args.budget)
    rows = []
    for p, rec in records.items():
        row = rec.as_dict(cs.dp_ids)
        row["multiplicity"] = mults[p]
        row["component_count"] = curve_component_count(rec, args.n)
        row["trivial"] = p.is_trivial()
        rows.append(row)
    out.write(_dump({"n": args.n, "strata": rows}))
    return EXIT_OK


@_fixture_guard
def cmd_decompose(args, out):
    g = _germ(args.germ)
    d = _divide(args.divide, g)
    rep = decompose(g, d, args.n, args.budget)
    out.write(rep.to_text() if args.format == "text" else _dump(rep.as_dict()))
    return EXIT_OK if rep.consistent else EXIT_INVALID


@_fixture_guard
def cmd_limit(args, out):
    g = _germ(args.germ)
    d = _divide(args.divide, g)
    terms = homology_limit_report(g, d, args.max_degree, args.term_budget)
    out.write(_dump({"terms": [t.as_dict() for t in terms]}))
    return EXIT_OK


def cmd_generate(args, out):
    try:
        params = [int(x) for x in args.params.split(",")]
    except ValueError:
        raise InputError(f"--params must be integers, got {args.params!r}") from None
    if args.kind == "lines":
        if len(params) != 1:
            raise InputError("--kind lines takes one parameter: the number of lines")
        d = generate_line_arrangement_divide(params[0])
    else:
        if len(params) != 2:
            raise InputError("--kind grid takes two parameters: p,q")
        d = generate_grid_divide(*params)
    out.write(_dump({"germ": d.germ.to_json(), "divide": d.to_json()}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="divstrata", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, germ=True, divide=True, germ_optional=False):
        p = sub.add_parser(name, help=help_)
        if germ:
            p.add_argument("--germ", required=not germ_optional, help="germ JSON file or fixture:NAME")
        if divide:
            p.add_argument("--divide", required=True, help="divide JSON file or fixture:NAME")
        p.set_defaults(func=fn)
        return p

    add("invariants", cmd_invariants, "delta, mu and branch data of a germ", divide=False)
    add("divide-check", cmd_divide_check, "validate a divide against its germ")
    p = add("dynkin", cmd_dynkin, "Dynkin diagram of the vanishing cycles", germ_optional=True)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p = add("monodromy", cmd_monodromy, "radical, symplectic quotient and mod-p evidence", germ_optional=True)
    p.add_argument("--primes", default="3,5,7")
    p.add_argument("--sign", choices=["plus", "minus"], default="plus")
    add("classes", cmd_classes, "invariant classes c_i and heights of c_I")
    for name, fn, help_ in (
        ("strata", cmd_strata, "partition strata, multiplicities and component counts"),
        ("decompose", cmd_decompose, "symbolic decomposition of the pushforward mod n"),
    ):
        p = add(name, fn, help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
        if name == "decompose":
            p.add_argument("--format", choices=["json", "text"], default="json")
    p = add("limit", cmd_limit, "symbolic homology report in the limit over n")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--term-budget", type=int, default=200_000)
    p = add("generate", cmd_generate, "emit a standard germ and divide", germ=False, divide=False)
    p.add_argument("--kind", choices=["lines", "grid"], required=True)
    p.add_argument("--params", required=True, help="d for lines, p,q for grid")
    return ap


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ValidationFailed as exc:
        report = getattr(exc, "report", None)
        payload = {"error": exc.code, "message": str(exc)}
        if report is not None:
            payload["report"] = report.as_dict()
        out.write(_dump(payload))
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DivstrataError, ValueError) as exc:
        code = getattr(exc, "code", "invalid-input")
        print(f"error [{code}]: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
