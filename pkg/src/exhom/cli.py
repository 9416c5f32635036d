"""Command-line front end.

One binary with subcommands; machine output is line-oriented and bit-stable.
Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List

from . import complexes, spectral, steinberg
from .documents import (
    DocumentError,
    parse_chain_document,
    parse_cochain_document,
    parse_double_complex_document,
    parse_int_matrix_document,
)
from .zlinalg import smith_normal_form

USAGE_ERROR = 2
VALIDATION_ERROR = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _spectrum_args(p):
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--dp", type=int, required=True)
    p.add_argument("--m10", type=int, default=0)
    p.add_argument("--m01", type=int, default=0)
    p.add_argument("--m11", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="exhom",
                     description="exact homological algebra calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("e2", help="second-page grid from the four-term sum")
    _spectrum_args(p)
    p.add_argument("--compare-paper", action="store_true")
    p.add_argument("--format", choices=["table", "machine"], default="machine")

    p = sub.add_parser("betti", help="Betti profile with filtration dims")
    _spectrum_args(p)
    p.add_argument("--format", choices=["table", "machine"], default="machine")

    p = sub.add_parser("filtration", help="covering filtration dims in one degree")
    _spectrum_args(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("ss", help="spectral sequence of a double complex")
    p.add_argument("--input", required=True)
    p.add_argument("--axis", choices=["row", "col"], required=True)
    p.add_argument("--pages", action="store_true")

    p = sub.add_parser("kunneth", help="Kunneth check on two rational complexes")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("uct", help="universal-coefficient check mod m")
    p.add_argument("--input", required=True)
    p.add_argument("--mod", type=int, required=True)

    p = sub.add_parser("snf", help="Smith normal form diagonal of a matrix")
    p.add_argument("--input", required=True)

    p = sub.add_parser("oppose", help="oppositeness of the two filtrations")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None


def _spectrum(args) -> steinberg.InducedSpectrum:
    return steinberg.InducedSpectrum(args.m10, args.m01, args.m11)


def _cmd_e2(args, out) -> int:
    if args.compare_paper:
        try:
            report = steinberg.paper_table_diff(args.d, args.dp, _spectrum(args))
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return USAGE_ERROR
        print(report.render(), file=out)
        return 0
    table = steinberg.e2_table(args.d, args.dp, _spectrum(args))
    top = table.size
    if args.format == "machine":
        for r in range(top + 1):
            for s in range(top + 1):
                print(f"{r} {s} {table.at(r, s)}", file=out)
    else:
        width = max(3, max((len(str(v)) for v in table.grid.values()),
                           default=1) + 1)
        print("  s\\r " + "".join(str(r).rjust(width) for r in range(top + 1)),
              file=out)
        for s in range(top, -1, -1):
            print("  " + str(s).rjust(3) + " "
                  + "".join(str(table.at(r, s)).rjust(width)
                            for r in range(top + 1)), file=out)
    return 0


def _cmd_betti(args, out) -> int:
    profile = steinberg.betti_profile(args.d, args.dp, _spectrum(args))
    print(" ".join(map(str, profile.b)), file=out)
    if args.format == "table":
        for n, dims in enumerate(profile.filtrations):
            print(f"n={n} b={profile.b[n]} F=" + " ".join(map(str, dims)),
                  file=out)
    return 0


def _cmd_filtration(args, out) -> int:
    try:
        dims = steinberg.covering_filtration_dims(args.d, args.dp,
                                                  _spectrum(args), args.n)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    print(" ".join(map(str, dims)), file=out)
    return 0


def _cmd_ss(args, out) -> int:
    K = parse_double_complex_document(_read(args.input))
    axis = spectral.ROW if args.axis == "row" else spectral.COLUMN
    pages = spectral.spectral_pages(K, axis)
    max_p = K.max_r if axis == spectral.COLUMN else K.max_c
    max_q = K.max_c if axis == spectral.COLUMN else K.max_r
    if args.pages:
        for r in sorted(pages.pages):
            print(f"page {r}", file=out)
            for p in range(max_p + 1):
                for q in range(max_q + 1):
                    print(f"{p} {q} {pages.dim(r, p, q)}", file=out)
    print(f"limit (stable at page {pages.stable_page})", file=out)
    for p in range(max_p + 1):
        for q in range(max_q + 1):
            print(f"{p} {q} {pages.limit.get((p, q), 0)}", file=out)
    return 0


def _cmd_kunneth(args, out) -> int:
    A = parse_cochain_document(_read(args.a))
    B = parse_cochain_document(_read(args.b))
    report = complexes.kunneth_check(A, B)
    print(report.render(), file=out)
    return 0 if report.passed else VALIDATION_ERROR


def _cmd_uct(args, out) -> int:
    if args.mod < 2:
        print("error: --mod must be >= 2", file=sys.stderr)
        return USAGE_ERROR
    C = parse_chain_document(_read(args.input))
    report = complexes.uct_check(C, args.mod)
    print(report.render(), file=out)
    return 0 if report.passed else VALIDATION_ERROR


def _cmd_snf(args, out) -> int:
    A = parse_int_matrix_document(_read(args.input))
    snf = smith_normal_form(A)
    print(" ".join(str(d) for d in snf.diagonal), file=out)
    return 0


def _cmd_oppose(args, out) -> int:
    K = parse_double_complex_document(_read(args.input))
    if args.n < 0 or args.n > K.max_r + K.max_c:
        print(f"error: degree {args.n} outside [0, {K.max_r + K.max_c}]",
              file=sys.stderr)
        return USAGE_ERROR
    F = spectral.filtration_on_total(K, spectral.COLUMN, args.n)
    G = spectral.filtration_on_total(K, spectral.ROW, args.n)
    print("col dims " + " ".join(map(str, F.dims())), file=out)
    print("row dims " + " ".join(map(str, G.dims())), file=out)
    print(f"opposite {str(spectral.opposite_check(F, G)).lower()}", file=out)
    print(f"dimension_criterion "
          f"{str(spectral.dimension_criterion(F, G)).lower()}", file=out)
    return 0


_COMMANDS = {
    "e2": _cmd_e2,
    "betti": _cmd_betti,
    "filtration": _cmd_filtration,
    "ss": _cmd_ss,
    "kunneth": _cmd_kunneth,
    "uct": _cmd_uct,
    "snf": _cmd_snf,
    "oppose": _cmd_oppose,
}


def main(argv: List[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except DocumentError as e:
        print(f"error: {e}", file=sys.stderr)
        return VALIDATION_ERROR


if __name__ == "__main__":
    sys.exit(main())
