"""Command-line interface.

Subcommands
-----------
theta     list the admissible triples for a dimension
classify  enumerate and classify every index set, write a report
verify    check a bracket table file (vector notation or JSON)
solve     run the classification pipeline on a single index set
compare   diff a classification run against the bundled reference tables

Exit codes: 0 success (for verify: certificate valid), 1 I/O failure,
2 usage or parse errors (for verify: invalid certificate exits 1).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import pipeline
from .index_sets import parse_index_set, theta
from .jacobi import BracketTable, evaluate_equation, jacobi_bruteforce, jacobi_system
from .notation import NotationError, parse_vector_notation, render_vector_notation
from .pipeline import PipelineConfig, classify_index_set, compare_with_tables
from .radicals import SignedSqrt
from .solver import verify_certificate


def _default_jobs() -> int:
    env = os.environ.get("NILSOL_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilsol",
        description="Exact search for nilpotent metric Lie algebras with "
        "ordered-type nilsoliton derivations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_theta = sub.add_parser("theta", help="list admissible triples (i, j, i+j)")
    p_theta.add_argument("--n", type=int, required=True)
    p_theta.add_argument("--format", choices=("table", "json"), default="table")

    p_cls = sub.add_parser("classify", help="classify every subset of theta(n)")
    p_cls.add_argument("--n", type=int, required=True)
    p_cls.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p_cls.add_argument("--jobs", type=int, default=None)
    p_cls.add_argument("--out", type=str, default=None)
    p_cls.add_argument("--no-direct-sum-filter", action="store_true")
    p_cls.add_argument("--no-invertible-filter", action="store_true")
    p_cls.add_argument("--no-positivity-filter", action="store_true")
    p_cls.add_argument("--no-ordered-type-filter", action="store_true")
    p_cls.add_argument("--no-jacobi-filter", action="store_true")
    p_cls.add_argument("--strict-positivity", action="store_true")
    p_cls.add_argument(
        "--jacobi-granularity",
        choices=("aggregated", "generator"),
        default="aggregated",
        help="constraint system for screening and resolution: per target "
        "index (published granularity, default) or per generator set "
        "(strictly stronger)",
    )

    p_ver = sub.add_parser("verify", help="verify a bracket table file")
    p_ver.add_argument("path", type=str)

    p_sol = sub.add_parser("solve", help="classify one index set")
    p_sol.add_argument("--n", type=int, required=True)
    p_sol.add_argument(
        "--lambda",
        dest="lambda_",
        type=str,
        required=True,
        help='index set as "i,j,k;i,j,k;..." or a decimal mask',
    )
    p_sol.add_argument(
        "--jacobi-granularity",
        choices=("aggregated", "generator"),
        default="aggregated",
    )

    p_cmp = sub.add_parser("compare", help="diff against bundled reference tables")
    p_cmp.add_argument("--n", type=int, required=True)
    p_cmp.add_argument("--fixtures", type=str, default=None)
    p_cmp.add_argument("--format", choices=("table", "json"), default="table")
    p_cmp.add_argument("--jobs", type=int, default=None)
    p_cmp.add_argument(
        "--jacobi-granularity",
        choices=("aggregated", "generator"),
        default="aggregated",
    )
    return parser


def _config_from_args(args) -> PipelineConfig:
    return PipelineConfig(
        direct_sum_filter=not getattr(args, "no_direct_sum_filter", False),
        invertible_filter=not getattr(args, "no_invertible_filter", False),
        positivity_filter=not getattr(args, "no_positivity_filter", False),
        strict_positivity=getattr(args, "strict_positivity", False),
        ordered_type_filter=not getattr(args, "no_ordered_type_filter", False),
        jacobi_filter=not getattr(args, "no_jacobi_filter", False),
        jacobi_granularity=getattr(args, "jacobi_granularity", "aggregated"),
    )


def _write_output(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print("error: cannot write %s: %s" % (out, exc), file=sys.stderr)
        return 1
    return 0


def cmd_theta(args) -> int:
    if args.n < 3:
        print("error: no admissible triples exist for n=%d" % args.n, file=sys.stderr)
        return 2
    triples = theta(args.n)
    if args.format == "json":
        print(json.dumps([[t.i, t.j, t.k] for t in triples]))
    else:
        for bit, t in enumerate(triples):
            print("%2d  %s" % (bit, t))
        print("total: %d" % len(triples))
    return 0


def cmd_classify(args) -> int:
    if args.n < 3:
        print("error: no admissible triples exist for n=%d" % args.n, file=sys.stderr)
        return 2
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if jobs < 1:
        print("error: jobs must be >= 1", file=sys.stderr)
        return 2
    report = pipeline.run(args.n, _config_from_args(args), jobs=jobs)
    if args.format == "json":
        text = pipeline.report_to_json(report) + "\n"
    elif args.format == "csv":
        text = pipeline.report_to_csv(report)
    else:
        text = pipeline.render_table(report)
    return _write_output(text, args.out)


def _load_bracket_table(path: str) -> BracketTable:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.strip()
    if not stripped:
        raise NotationError("empty file")
    if stripped.startswith("{"):
        data = json.loads(stripped)
        n = int(data["n"])
        coeffs = {}
        for key, value in data["coefficients"].items():
            i, j, k = (int(x) for x in key.split(","))
            coeffs[(i, j, k)] = _coefficient_from_string(str(value))
        return BracketTable(n, coeffs)
    # vector notation: use the first non-comment line
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("|")[0].strip()
        if line and not line.startswith("#"):
            return parse_vector_notation(line, strict=True)
    raise NotationError("no bracket table found in file")


def _coefficient_from_string(text: str) -> SignedSqrt:
    from .notation import parse_coefficient

    return parse_coefficient(text)


def cmd_verify(args) -> int:
    try:
        table = _load_bracket_table(args.path)
    except NotationError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    check = verify_certificate(table)
    print("table: %s" % render_vector_notation(table))
    jacobi_ok = jacobi_bruteforce(table)
    print("jacobi identity: %s" % ("holds" if jacobi_ok else "FAILS"))
    if not jacobi_ok:
        for eq in jacobi_system(table.support()):
            value = evaluate_equation(eq, table)
            if not value.is_zero():
                print("  failing equation: %s  (evaluates to %s)" % (eq.render(), value))
    if check.normalization is not None:
        print("U * squares = %s [1]" % check.normalization)
    if check.ricci is not None:
        print("beta: %s" % check.ricci.beta)
        print(
            "derivation: (%s)" % ", ".join(str(x) for x in check.ricci.derivation)
        )
    for problem in check.problems:
        if "Jacobi" not in problem:
            print("problem: %s" % problem)
    print("certificate: %s" % ("VALID" if check.ok else "INVALID"))
    return 0 if check.ok else 1


def cmd_solve(args) -> int:
    if args.n < 3:
        print("error: no admissible triples exist for n=%d" % args.n, file=sys.stderr)
        return 2
    try:
        index_set = parse_index_set(args.lambda_, args.n)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    record = classify_index_set(index_set, _config_from_args(args))
    print("index set: %s (mask %d, m=%d)" % (index_set.to_string() or "(empty)", index_set.mask, record.m))
    print("nullity: %s   invertible: %s" % (record.nullity, record.invertible))
    print("filters fired: %s" % (", ".join(record.filters_fired) or "none"))
    verdict = record.verdict
    print("verdict: %s" % verdict.status)
    if verdict.certificate is not None:
        print("certificate: %s" % render_vector_notation(verdict.certificate))
        if verdict.ricci is not None:
            print("beta: %s" % verdict.ricci.beta)
            print("derivation: (%s)" % ", ".join(str(x) for x in verdict.ricci.derivation))
    if verdict.refutation:
        print("refutation:")
        for line in verdict.refutation.splitlines():
            print("  " + line)
    for note in verdict.notes:
        print("note: %s" % note)
    return 0


def cmd_compare(args) -> int:
    if args.n < 3:
        print("error: no admissible triples exist for n=%d" % args.n, file=sys.stderr)
        return 2
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    report = pipeline.run(args.n, _config_from_args(args), jobs=jobs)
    try:
        comparison = compare_with_tables(report, args.fixtures)
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(comparison.to_dict(), indent=1))
    else:
        sys.stdout.write(comparison.render())
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    handlers = {
        "theta": cmd_theta,
        "classify": cmd_classify,
        "verify": cmd_verify,
        "solve": cmd_solve,
        "compare": cmd_compare,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
