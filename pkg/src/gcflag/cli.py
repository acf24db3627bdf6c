"""Command-line interface.

Verbs: roots, decompose, classify, verify, catalog.  Flags follow the
classification tables: the painted set is given as --sigma-minus-theta,
with --theta as the complement-side alternative; G2 accepts long/short.
Exit codes: 0 success/agreement, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as cat
from . import reports
from .fibers import assignment_integrable, enumerate_integrable_patterns, sweep_assignments
from .invariance import constancy_report
from .isotropy import (
    decompose_isotropy,
    enumerate_triples,
    flag_from_sigma_minus_theta,
    flag_from_theta,
)
from .nijenhuis import OracleSession
from .roots import build_root_system

ORACLE_MAX_RANK = 4


def _parse_index_list(rs, text: str):
    if text.strip().lower() in ("none", ""):
        return []
    out = []
    for token in text.split(","):
        token = token.strip().lower()
        if token in ("long", "short"):
            out.extend(cat.resolve_sigma_indices(rs, (token,)))
        else:
            try:
                out.append(int(token))
            except ValueError:
                raise ValueError(f"bad simple-root token {token!r}")
    return out


def _flag_from_args(args):
    rs = build_root_system(args.type, args.rank)
    if args.theta is not None and args.sigma_minus_theta is not None:
        raise ValueError("give either --theta or --sigma-minus-theta, not both")
    if args.theta is not None:
        return rs, flag_from_theta(rs, _parse_index_list(rs, args.theta))
    if args.sigma_minus_theta is not None:
        return rs, flag_from_sigma_minus_theta(rs, _parse_index_list(rs, args.sigma_minus_theta))
    raise ValueError("a flag needs --theta or --sigma-minus-theta")


def cmd_roots(args) -> int:
    rs = build_root_system(args.type, args.rank)
    if args.format == "json":
        sys.stdout.write(reports.dumps(reports.roots_report(rs)))
    else:
        sys.stdout.write(reports.roots_markdown(rs))
    return 0


def cmd_decompose(args) -> int:
    _, fs = _flag_from_args(args)
    decomp = decompose_isotropy(fs)
    triples = enumerate_triples(fs, decomp) if not decomp.is_point else ()
    if args.format == "json":
        sys.stdout.write(reports.dumps(reports.decomposition_report(fs, decomp, triples)))
    else:
        sys.stdout.write(reports.decomposition_markdown(fs, decomp, triples))
    return 0


def cmd_classify(args) -> int:
    _, fs = _flag_from_args(args)
    decomp = decompose_isotropy(fs)
    if decomp.is_point:
        raise ValueError("Theta = Sigma gives a point manifold; nothing to classify")
    patterns = enumerate_integrable_patterns(fs, decomp)
    if args.format == "json":
        sys.stdout.write(reports.dumps(reports.classification_report(fs, decomp, patterns)))
    else:
        sys.stdout.write(reports.classification_markdown(fs, decomp, patterns))
    return 0


def cmd_verify(args) -> int:
    rs, fs = _flag_from_args(args)
    if args.oracle and rs.rank > ORACLE_MAX_RANK:
        raise ValueError(
            f"the Nijenhuis oracle is limited to rank <= {ORACLE_MAX_RANK} flags "
            f"(cost is cubic in the eigenbundle dimension); got rank {rs.rank}"
        )
    decomp = decompose_isotropy(fs)
    constancy = constancy_report(fs, decomp=decomp)
    oracle = None
    if args.oracle and not decomp.is_point:
        triples = enumerate_triples(fs, decomp)
        session = OracleSession(fs, decomp=decomp)
        assignments = 0
        integrable = 0
        mismatches = []
        for asg in sweep_assignments(decomp):
            assignments += 1
            c = assignment_integrable(fs, asg, triples).verdict
            o = session.assignment_integrable(asg)
            if c:
                integrable += 1
            if c != o:
                mismatches.append({
                    "fibers": [str(f) for f in asg.fibers],
                    "classifier": c,
                    "oracle": o,
                })
        oracle = {
            "assignments": assignments,
            "integrable": integrable,
            "mismatches": mismatches,
        }
    notes = []
    if rs.lie_type.family == "E" and rs.rank == 7:
        notes.append(reports.E7_COUNT_NOTE)
    doc = reports.verification_report(fs, constancy, oracle, notes)
    if args.format == "json":
        sys.stdout.write(reports.dumps(doc))
    else:
        sys.stdout.write(reports.verification_markdown(doc))
    return 0 if doc["passed"] else 1


def cmd_catalog(args) -> int:
    if args.rows:
        with open(args.rows, "r", encoding="utf-8") as fh:
            rows = cat.rows_from_json(json.load(fh))
    else:
        rows = cat.builtin_rows()
    doc = cat.run_catalog(rows)
    if args.format == "json":
        sys.stdout.write(reports.dumps(doc))
    else:
        sys.stdout.write(cat.catalog_markdown(doc))
    return 0 if doc["all_passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcflag",
        description="Isotropy decompositions and invariant generalized complex "
                    "structures on partial flag manifolds, in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_flag_args(p, need_flag=True):
        p.add_argument("--type", required=True, help="Lie type family: A B C D E F G")
        p.add_argument("--rank", required=True, type=int)
        if need_flag:
            p.add_argument("--theta", help="Theta as comma-separated indices, or 'none'")
            p.add_argument("--sigma-minus-theta",
                           help="painted simple roots (complement of Theta); "
                                "G2 accepts 'long'/'short'")
        p.add_argument("--format", choices=("json", "md"), default="json")

    p = sub.add_parser("roots", help="root-system report")
    add_flag_args(p, need_flag=False)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("decompose", help="isotropy decomposition and triples")
    add_flag_args(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="integrable type-pattern table")
    add_flag_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="constancy check, optionally the oracle sweep")
    add_flag_args(p)
    p.add_argument("--oracle", action="store_true",
                   help="sweep classifier vs Nijenhuis oracle (rank <= 4)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="check the summand-count catalog")
    p.add_argument("--rows", help="path to a rows JSON file (defaults to built-in)")
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
