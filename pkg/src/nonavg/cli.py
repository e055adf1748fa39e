"""Batch command-line front end.

Subcommands: generate (with resumable caches), discover, verify, bounds.
Exit codes: 0 success, 1 usage or malformed input, 2 budget exhausted
(partial results are flushed first).  The environment variable
NONAVG_NODE_BUDGET overrides the default solver node budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import asymptotics, closedform, greedy, theorems
from .errors import BudgetExhausted, InvalidTuple, UnsupportedM
from .solver import DEFAULT_NODE_BUDGET, AvoidanceRule
from .tuples import CoefficientTuple

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonavg", description=__doc__)
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads (outputs are identical for any value)")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="greedy sequence generation")
    gen.add_argument("--tuple", required=True, dest="tuple_text")
    gen.add_argument("--rule", default="distinct", choices=["distinct", "notallequal"])
    gen.add_argument("--max-terms", type=int, default=None)
    gen.add_argument("--max-value", type=int, default=None)
    gen.add_argument("--format", default="plain", choices=["json", "csv", "plain"])
    gen.add_argument("--header", action="store_true", help="emit a header row in csv format")
    gen.add_argument("--cache", default=None, help="resumable cache file path")
    gen.add_argument("--node-budget", type=int, default=None)

    disc = sub.add_parser("discover", help="closed-form discovery")
    disc.add_argument("--tuple", required=True, dest="tuple_text")
    disc.add_argument("--max-residues", type=int, default=64)
    disc.add_argument("--max-frontier", type=int, default=80000)
    disc.add_argument("--node-budget", type=int, default=None)

    ver = sub.add_parser("verify", help="structure checks")
    ver.add_argument("target", choices=["table1", "table2", "props"])
    ver.add_argument("--m", type=int, default=None)
    ver.add_argument("--rows", default=None, help="semicolon-separated coefficient lists")
    ver.add_argument("--tuple", dest="tuple_text", default=None)
    ver.add_argument("--n", type=float, default=65536)
    ver.add_argument("--max-frontier", type=int, default=80000)
    ver.add_argument("--node-budget", type=int, default=None)

    bnd = sub.add_parser("bounds", help="counting and growth bounds reports")
    bnd.add_argument("--tuple", dest="tuple_text", default=None)
    bnd.add_argument("--cf", default=None, help='closed form, e.g. "c=12 base=4 R=0,1,2,3,4"')
    bnd.add_argument("--n", type=str, default=None)
    bnd.add_argument("--section4", action="store_true",
                     help="include the dual-reading worked example comparison")
    return parser


def _node_budget(args) -> int | None:
    if getattr(args, "node_budget", None) is not None:
        return args.node_budget
    env = os.environ.get("NONAVG_NODE_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidTuple(f"bad NONAVG_NODE_BUDGET value {env!r}")
    return DEFAULT_NODE_BUDGET


def _parse_n(text: str) -> int:
    value = float(text)
    if value != int(value):
        raise ValueError(f"n must be an integer, got {text!r}")
    return int(value)


def _emit_terms(seq, args, out):
    if args.format == "plain":
        for t in seq.terms:
            print(t, file=out)
    elif args.format == "csv":
        if args.header:
            print("term", file=out)
        print(",".join(str(t) for t in seq.terms), file=out)
    else:
        print(
            json.dumps(
                {
                    "tuple": seq.coefficients.text(),
                    "rule": seq.rule.value,
                    "frontier": seq.frontier,
                    "terms": list(seq.terms),
                }
            ),
            file=out,
        )


def _run_generate(args, out) -> int:
    coefficients = CoefficientTuple.from_text(args.tuple_text)
    rule = AvoidanceRule.from_text(args.rule)
    if args.max_terms is None and args.max_value is None:
        print("generate: need --max-terms or --max-value", file=sys.stderr)
        return EXIT_USAGE
    if args.max_terms is not None and args.max_terms <= 0:
        return EXIT_OK
    budget = _node_budget(args)

    seq = None
    if args.cache and os.path.exists(args.cache):
        try:
            cached = greedy.read_cache(args.cache)
        except (ValueError, KeyError, OSError):
            cached = None
        if (
            cached is not None
            and cached.coefficients == coefficients
            and cached.rule == rule
        ):
            seq = cached

    try:
        if seq is None:
            seq = greedy.generate(
                coefficients, rule, max_terms=args.max_terms, max_value=args.max_value, node_budget=budget
            )
        else:
            seq = greedy.extend(
                seq, max_terms=args.max_terms, max_value=args.max_value, node_budget=budget
            )
    except BudgetExhausted as exc:
        if exc.partial is not None:
            if args.cache:
                greedy.write_cache(args.cache, exc.partial)
            _emit_terms(exc.partial, args, out)
        print(f"generate: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    if args.cache:
        greedy.write_cache(args.cache, seq)
    _emit_terms(seq, args, out)
    return EXIT_OK


def _run_discover(args, out) -> int:
    coefficients = CoefficientTuple.from_text(args.tuple_text)
    from .tuples import is_valid

    if not is_valid(coefficients):
        print(f"discover: {coefficients.text()} is not a valid tuple", file=sys.stderr)
        return EXIT_USAGE
    budget = _node_budget(args)
    try:
        found = theorems.discover_closed_form(
            coefficients,
            max_residues=args.max_residues,
            max_frontier=args.max_frontier,
            node_budget=budget,
        )
    except BudgetExhausted as exc:
        print(f"discover: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if found is None:
        print(
            json.dumps(
                {
                    "tuple": coefficients.text(),
                    "found": False,
                    "max_residues": args.max_residues,
                    "max_frontier": args.max_frontier,
                }
            ),
            file=out,
        )
        return EXIT_BUDGET
    cf, report = found
    payload = report.to_json_dict()
    payload["found"] = True
    payload["closed_form"] = cf.text()
    print(json.dumps(payload), file=out)
    return EXIT_OK


def _check_line(out, name, passed) -> bool:
    print(f"{'PASS' if passed else 'FAIL'} {name}", file=out)
    return passed


def _run_verify(args, out) -> int:
    budget = _node_budget(args)
    all_ok = True
    try:
        if args.target == "table1":
            ms = [args.m] if args.m is not None else [3, 4, 5, 6, 7, 8, 9]
            for m in ms:
                scale, residues = theorems.uniform_family_parameters(m)
                ident = theorems.check_scale_identity(
                    CoefficientTuple.uniform(m), residues, scale
                )
                all_ok &= _check_line(out, f"family scale identity m={m}", ident.passed)
                ok = theorems.verify_family_prefix(m, node_budget=budget)
                all_ok &= _check_line(out, f"family prefix m={m}", ok)
        elif args.target == "table2":
            if args.rows:
                rows = [CoefficientTuple.from_text(r) for r in args.rows.split(";")]
            else:
                rows = [
                    CoefficientTuple(coeffs)
                    for coeffs in theorems.KNOWN_CLOSED_FORMS
                    if theorems.KNOWN_CLOSED_FORMS[coeffs][0] <= 122
                ]
            for coefficients in rows:
                expected = theorems.KNOWN_CLOSED_FORMS.get(coefficients.coeffs)
                found = theorems.discover_closed_form(
                    coefficients, max_frontier=args.max_frontier, node_budget=budget
                )
                if expected is None:
                    ok = found is not None
                    name = f"closed form exists for {coefficients.text()}"
                else:
                    ok = found is not None and (found[0].scale, found[0].residues) == expected
                    name = f"catalog row {coefficients.text()}"
                all_ok &= _check_line(out, name, ok)
        else:  # props
            if not args.tuple_text:
                print("verify props: need --tuple", file=sys.stderr)
                return EXIT_USAGE
            coefficients = CoefficientTuple.from_text(args.tuple_text)
            limit = _parse_n(str(args.n))
            ok = all(
                closedform.popcount_residue_pair(coefficients, n)[0]
                == closedform.popcount_residue_pair(coefficients, n)[1]
                for n in range(limit)
            )
            all_ok &= _check_line(out, f"popcount residue law n<{limit}", ok)
            if coefficients.coeffs == (1, 1):
                ok = all(
                    closedform.thue_morse_bit(n)
                    == closedform.zero_one_nth(coefficients, n) % 2
                    for n in range(limit)
                )
                all_ok &= _check_line(out, f"bit-parity sequence law n<{limit}", ok)
    except BudgetExhausted as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK if all_ok else EXIT_USAGE


def _run_bounds(args, out) -> int:
    if args.section4:
        n = _parse_n(args.n) if args.n else asymptotics.REFERENCE_EXAMPLE_N
        print(json.dumps(asymptotics.compare_bound_readings(n)), file=out)
        return EXIT_OK
    if args.n is None:
        print("bounds: need --n", file=sys.stderr)
        return EXIT_USAGE
    n = _parse_n(args.n)
    if args.cf:
        cf = closedform.ClosedForm.from_text(args.cf)
        report = asymptotics.closed_form_count_bounds(cf, n)
    elif args.tuple_text:
        coefficients = CoefficientTuple.from_text(args.tuple_text)
        report = asymptotics.zero_one_count_bounds(coefficients, n)
    else:
        print("bounds: need --tuple or --cf", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(report.to_json_dict()), file=out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = sys.stdout
    try:
        if args.command == "generate":
            return _run_generate(args, out)
        if args.command == "discover":
            return _run_discover(args, out)
        if args.command == "verify":
            return _run_verify(args, out)
        if args.command == "bounds":
            return _run_bounds(args, out)
    except (InvalidTuple, UnsupportedM, ValueError) as exc:
        print(f"nonavg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
