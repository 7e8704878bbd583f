"""Command-line front end: ``dirichlet-tables <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import tablegen
from .golden import GoldenParseError
from .specfun import PrecisionContext, PrecisionError

# command -> (kind, default moduli, default s range)
TABLES = {
    "chars": ("chars", (2, 22), None),
    "l": ("L", (2, 14), (1, 10)),
    "lprime": ("Lprime", (2, 7), (1, 10)),
    "primel": ("S", (2, 6), (1, 9)),
    "pzm": ("P", (3, 10), (2, 10)),
    "zetamod": ("Zeta", (3, 14), (2, 10)),
}
CONSTANT_S = {"a": (1, 5), "q": (1, 5), "f": (2, 5), "c": (2, 6)}


def parse_moduli(text: str) -> list[int]:
    """'5', '2-7' or '3,5,8-10' -> ascending list of moduli."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            a = int(lo)
            b = int(hi) if sep else a
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad modulus list {text!r}") from None
        if a > b:
            raise argparse.ArgumentTypeError(f"empty modulus range {part!r}")
        out.update(range(a, b + 1))
    if not out:
        raise argparse.ArgumentTypeError("no moduli given")
    return sorted(out)


def _add_common(p: argparse.ArgumentParser, with_s: bool = True):
    p.add_argument("--modulus", type=parse_moduli, help="modulus, range a-b or comma list")
    if with_s:
        p.add_argument("--smin", type=int)
        p.add_argument("--smax", type=int)
    p.add_argument("--digits", type=int, default=50, help="target decimal digits (default 50)")
    p.add_argument("--cutoff", type=int, default=100_000, help="prime cutoff M (default 100000)")
    p.add_argument("--format", choices=("paper", "json"), default="paper")
    p.add_argument("--fillers", action="store_true",
                   help="replace duplicate and conjugate character blocks by placeholder lines")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirichlet-tables",
        description="High-precision tables of Dirichlet characters, L-series, prime zeta "
                    "modulo functions, Euler modulo products and Euler-product constants.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "chars": "character tables chi_r(n) with conductors",
        "l": "L(s, chi_r)",
        "lprime": "L'(s, chi_r)",
        "primel": "prime L-series S(s, chi_r)",
        "pzm": "prime zeta modulo functions P_{m,n}(s)",
        "zetamod": "Euler modulo products zeta_{m,n}(s)",
    }
    for name, text in helps.items():
        _add_common(sub.add_parser(name, help=text), with_s=name != "chars")
    const = sub.add_parser("const", help="constants A (Artin), Q (quadratic class), "
                                         "F (Feller-Tornier), C (Hardy-Littlewood)")
    const.add_argument("family", choices=sorted(CONSTANT_S), type=str.lower)
    _add_common(const)

    ver = sub.add_parser("verify", help="recompute reference listings and compare")
    ver.add_argument("paths", nargs="*", help="golden files (listing, character table or JSON); "
                                              "default: every bundled listing")
    ver.add_argument("--tolerance", type=int, default=None,
                     help="pass iff |delta| < 10^-TOLERANCE (default: digits - 2)")
    ver.add_argument("--digits", type=int, default=50)
    ver.add_argument("--cutoff", type=int, default=100_000)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--quiet", action="store_true", help="print the summary only")
    return parser


def _context(args) -> PrecisionContext:
    return PrecisionContext(target_digits=args.digits, cutoff=args.cutoff)


def _emit(args) -> str:
    if args.command == "const":
        kind, moduli, s_default = args.family.upper(), (3, 7), CONSTANT_S[args.family]
    else:
        kind, moduli, s_default = TABLES[args.command]
    mods = args.modulus or list(range(moduli[0], moduli[1] + 1))
    s_values: Sequence[int] = ()
    if s_default is not None:
        smin = s_default[0] if args.smin is None else args.smin
        smax = s_default[1] if args.smax is None else args.smax
        if smax < smin:
            raise tablegen.UsageError(f"--smax {smax} is below --smin {smin}")
        s_values = range(smin, smax + 1)
    ctx = _context(args)
    if kind == "chars":
        return tablegen.emit_table(kind, mods, (), args.format, ctx)
    return tablegen.emit_table(kind, mods, s_values, args.format, ctx,
                               fillers=args.fillers, jobs=args.jobs, decimals=args.digits)


def _verify(args) -> int:
    ctx = _context(args)
    tol = args.tolerance if args.tolerance is not None else args.digits - 2
    paths = args.paths or [None]
    ok = True
    for path in paths:
        report = tablegen.verify_goldens(path, tol, ctx, args.jobs)
        if path is not None:
            sys.stdout.write(f"== {path}\n")
        sys.stdout.write(report.render(ctx, verbose=not args.quiet))
        ok = ok and report.passed
    return 0 if ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        sys.stdout.write(_emit(args))
        return 0
    except (tablegen.UsageError, GoldenParseError, PrecisionError, ValueError, OSError) as exc:
        sys.stderr.write(f"dirichlet-tables: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
