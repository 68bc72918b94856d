"""Command line interface.

Exit codes: 0 when every verdict matches, 1 when a mismatch or dispute is
reported, 2 for usage or data errors. ``UNIBRAUER_DATA`` overrides the data
directory.
"""

from __future__ import annotations

import argparse
import sys

from . import census, classical, sprdata, unitri

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="unibrauer", description="Counts of unipotent Brauer characters in bad characteristic.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("census", help="alpha_l for an exceptional type")
    p.add_argument("--type", required=True, choices=sprdata.EXCEPTIONAL)
    p.add_argument("--ell", required=True, type=int)
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.add_argument("--disputes-fail", action="store_true", help="exit 1 when a documented dispute is present")

    p = sub.add_parser("good-count", help="number of unipotent characters (good characteristic)")
    p.add_argument("--type", required=True, choices=sprdata.EXCEPTIONAL)

    p = sub.add_parser("classical", help="number of unipotent classes of a split classical group")
    p.add_argument("--series", required=True, choices=list(classical.SERIES))
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--q", required=True, type=int)
    p.add_argument("--brute-force", action="store_true", help="also run the matrix-group oracle")

    p = sub.add_parser("type-a", help="alpha_l for SL_n(q) or SU_n(q)")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--q", required=True, type=int)
    p.add_argument("--ell", required=True, type=int)
    p.add_argument("--form", choices=("linear", "unitary"), default="linear")
    p.add_argument("--audit", action="store_true", help="print the sign-convention audit")

    p = sub.add_parser("unitri", help="unitriangular basic-set certificate")
    p.add_argument("action", choices=("check",))
    p.add_argument("--file", required=True)

    sub.add_parser("validate-data", help="run every data validator")
    return ap


def _census(args) -> int:
    rep = census.alpha(args.type, args.ell)
    out = census.format_structured(rep) if args.format == "structured" else rep.human()
    print(out.rstrip("\n"))
    if rep.verdict == "match":
        return EXIT_OK
    if rep.verdict == "disputed" and not args.disputes_fail:
        return EXIT_OK
    return EXIT_MISMATCH


def _good(args) -> int:
    rows = census.good_count_breakdown(args.type)
    total = sum(n for _, _, n in rows)
    w = max(len(c) for c, _, _ in rows)
    for c, g, n in rows:
        print(f"{c:<{w}}  {g:<4} {n}")
    print(total)
    want = sprdata.expected_total(args.type, "good")
    return EXIT_OK if total == want else EXIT_MISMATCH


def _classical(args) -> int:
    n = classical.rational_unipotent_count(args.series, args.rank, args.q)
    print(n)
    if args.brute_force:
        b = classical.brute_force_class_count(args.series, args.rank, args.q)
        print(f"brute force: {b}")
        return EXIT_OK if b == n else EXIT_MISMATCH
    return EXIT_OK


def _type_a(args) -> int:
    res = classical.alpha_type_a(args.n, args.ell, args.q, args.form, strict=False)
    for r in res.rows:
        print(f"{r.partition}  m={r.m}  alpha={r.formula}  oracle={r.oracle}")
    print(res.total)
    code = EXIT_OK if res.total == res.oracle_total else EXIT_MISMATCH
    if args.audit:
        audit = classical.type_a_convention_audit()
        print(audit.verdict)
        code = max(code, EXIT_MISMATCH if audit.adopted_mismatches else EXIT_OK)
    return code


def _unitri(args) -> int:
    with open(args.file) as fh:
        S = unitri.parse_matrix(fh.read())
    cert = unitri.basic_set_certificate(S)
    print(cert.text().rstrip("\n"))
    return EXIT_OK if cert.unitriangular else EXIT_MISMATCH


def _validate(args) -> int:
    report = sprdata.validate_all()
    for t, probs in report.items():
        print(f"{t}: {'ok' if not probs else 'FAIL'}")
        for p in probs:
            print(f"  - {p}")
    disputes = [d for d in sprdata.load_discrepancies() if d.kind == "totals-dispute"]
    for d in disputes:
        print(f"dispute: {d.type_name} {d.class_name} l={d.ell}: {d.reason}")
    return EXIT_USAGE if any(report.values()) else EXIT_OK


_COMMANDS = {
    "census": _census,
    "good-count": _good,
    "classical": _classical,
    "type-a": _type_a,
    "unitri": _unitri,
    "validate-data": _validate,
}


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (sprdata.DataError, classical.ClassicalError, unitri.MatrixError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    try:
        code = run()
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
    sys.exit(code)


if __name__ == "__main__":
    main()
