"""Table regeneration in the reference text layout or JSON, and golden verification."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Optional, Sequence, Union

from . import constants
from .characters import character, character_table, totient, value_symbol
from .eulerprod import zeta_mod
from .golden import COMPLEX_KINDS, GoldenRecord, KINDS
from .lseries import l_deriv, l_deriv_at_1, l_value
from .primezeta import p_mod, prime_l_series
from .specfun import PrecisionContext

DECIMALS = 50

_LABEL = {"L": "L", "Lprime": "L'", "S": "S"}
CONSTANT_KINDS = ("A", "Q", "F", "C")
CLASS_KINDS = ("P", "Zeta") + CONSTANT_KINDS

# smallest s each kind accepts
S_MIN = {"L": 1, "Lprime": 1, "S": 1, "P": 2, "Zeta": 2, "A": 1, "Q": 1, "F": 2, "C": 2}


class UsageError(ValueError):
    """Unsupported kind, modulus or s range."""


Task = tuple  # (kind, m, label, s)


def _check(kind: str, moduli: Sequence[int], s_values: Sequence[int]):
    if kind not in KINDS:
        raise UsageError(f"unknown table kind {kind!r}")
    for m in moduli:
        if m < 1:
            raise UsageError(f"modulus must be positive, got {m}")
        if kind in CLASS_KINDS and m < 2:
            raise UsageError("residue-class tables need m >= 2")
    if kind == "chars":
        return
    if not s_values:
        raise UsageError("empty s range")
    lo = S_MIN[kind]
    bad = [s for s in s_values if s < lo]
    if bad:
        raise UsageError(f"{kind} is not defined at s={bad[0]} (needs s >= {lo})")


def compute(kind: str, m: int, label: Union[int, str], s: int, ctx: PrecisionContext):
    """(re, im) of one table cell; im is None for real kinds."""
    mp = ctx.mp
    if kind in COMPLEX_KINDS:
        chi = character(m, int(label))
        if kind == "L":
            z = l_value(chi, s, ctx)
        elif kind == "Lprime":
            z = l_deriv_at_1(chi, ctx) if s == 1 else l_deriv(chi, s, ctx)
        else:
            z = prime_l_series(chi, s, ctx)
        z = mp.mpc(z)
        return z.real, z.imag
    if kind == "P":
        return p_mod(m, int(label), s, ctx), None
    if kind == "Zeta":
        return zeta_mod(m, int(label), s, ctx), None
    if label == "*":
        return constants.star_row(kind, m, s, ctx), None
    return constants.constant(kind, m, int(label), s, ctx), None


def format_decimal(x, ctx: PrecisionContext, decimals: int = DECIMALS) -> str:
    """x rounded half-even to ``decimals`` places, as ``-?d+.d{decimals}``."""
    mp = ctx.mp
    scale = 10 ** decimals
    with mp.workprec(ctx.working_bits + 4 * int(math.log2(max(2.0, abs(float(x))))) + 64):
        q = int(mp.nint(x * scale))
    sign = "-" if q < 0 else ""
    q = abs(q)
    if decimals == 0:
        return f"{sign}{q}"
    return f"{sign}{q // scale}.{q % scale:0{decimals}d}"


def _column(text: str) -> str:
    return text if text.startswith("-") else " " + text


def _cell_tasks(kind: str, m: int, s_values: Sequence[int]) -> list[Task]:
    tasks = []
    if kind in COMPLEX_KINDS:
        for chi in character_table(m):
            for s in s_values:
                if s == 1 and chi.is_principal:
                    continue
                tasks.append((kind, m, chi.index, s))
        return tasks
    classes = [n for n in range(1, m + 1) if math.gcd(n, m) == 1]
    for s in s_values:
        tasks.extend((kind, m, n, s) for n in classes)
        if kind in CONSTANT_KINDS:
            tasks.append((kind, m, "*", s))
    return tasks


def _same_block(m: int, r: int) -> Optional[tuple[int, int]]:
    # earliest modulus d | m, d < m, whose row extends periodically to this one
    chi = character(m, r)
    for d in range(2, m):
        if m % d:
            continue
        for psi in character_table(d):
            if all(chi.values[n] == psi.values[n % d] if chi.values[n] is None or psi.values[n % d] is None
                   else chi.values[n] * totient(d) == psi.values[n % d] * totient(m)
                   for n in range(m)):
                return d, psi.index
    return None


def _conjugate_of(m: int, r: int) -> Optional[int]:
    chi = character(m, r)
    if chi.is_real:
        return None
    r2 = chi.conjugate().index
    return r2 if r2 < r else None


def _filler(kind: str, m: int, r: int) -> Optional[str]:
    sep = " " if kind == "S" else "  "
    hit = _same_block(m, r)
    if hit:
        return f"{m:2d} {r:2d}  *{sep}same block as m={hit[0]}, r={hit[1]} above"
    r2 = _conjugate_of(m, r)
    if r2 is not None:
        return f"{m:2d} {r:2d}  *{sep}complex conjugate of block m={m}, r={r2} above"
    return None


def _header(kind: str, decimals: int) -> str:
    if kind in COMPLEX_KINDS:
        lab = _LABEL[kind]
        return f" m  r  s  {'Re(' + lab + ')':<{decimals + 4}}Im({lab})"
    return f" m  n  s  {kind}"


def _label_text(label) -> str:
    return f"{label:>2}" if label == "*" else f"{label:2d}"


def _evaluate(tasks: list[Task], ctx: PrecisionContext, decimals: int) -> list:
    """Formatted results, or an exception per task."""
    out = []
    for kind, m, label, s in tasks:
        try:
            re_, im_ = compute(kind, m, label, s, ctx)
            out.append((format_decimal(re_, ctx, decimals),
                        None if im_ is None else format_decimal(im_, ctx, decimals)))
        except Exception as exc:  # surfaced per record
            out.append(exc)
    return out


_WORKER_CTX: dict = {}


def _worker(params: tuple, decimals: int, tasks: list[Task]) -> list:
    ctx = _WORKER_CTX.get(params)
    if ctx is None:
        ctx = _WORKER_CTX[params] = PrecisionContext(*params)
    return [r if not isinstance(r, Exception) else ("error", f"{type(r).__name__}: {r}")
            for r in _evaluate(tasks, ctx, decimals)]


def evaluate_tasks(tasks: list[Task], ctx: PrecisionContext, jobs: int = 1,
                   decimals: int = DECIMALS) -> list:
    """Evaluate cells in order.  With jobs > 1, groups of cells sharing a
    kind and modulus go to worker processes, each with its own context."""
    if jobs <= 1 or len(tasks) < 2:
        return _evaluate(tasks, ctx, decimals)
    params = (ctx.target_digits, ctx.guard_digits, ctx.cutoff)
    groups = [list(g) for _, g in groupby(tasks, key=lambda t: (t[0], t[1]))]
    n = len(groups)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunks = list(pool.map(_worker, [params] * n, [decimals] * n, groups))
    out = []
    for chunk in chunks:
        for r in chunk:
            if isinstance(r, tuple) and r and r[0] == "error":
                out.append(RuntimeError(r[1]))
            else:
                out.append(tuple(r))
    return out


def _chars_text(m: int) -> list[str]:
    table = character_table(m)
    phi = totient(m)
    width = 4
    lines = [f"{'r':>2} |" + "".join(f"{n:>{width}}" for n in range(1, m + 1)) + " |  f"]
    for chi in table:
        cells = []
        for n in range(1, m + 1):
            sym = value_symbol(chi(n), phi)
            if sym.startswith("ub"):
                sym = "ū_" + sym[2:]
            elif sym.startswith("u"):
                sym = "u_" + sym[1:]
            cells.append(f"{sym:>{width}}")
        lines.append(f"{chi.index:2d} |" + "".join(cells) + f" | {chi.conductor:2d}")
    return lines


def char_records(m: int) -> list[GoldenRecord]:
    phi = totient(m)
    return [GoldenRecord("chars", m, chi.index, chi.conductor,
                         values=tuple(value_symbol(chi(n), phi) for n in range(1, m + 1)))
            for chi in character_table(m)]


def emit_table(kind: str, moduli: Union[int, Iterable[int]], s_range: Iterable[int] = (),
               fmt: str = "paper", ctx: Optional[PrecisionContext] = None,
               fillers: bool = False, jobs: int = 1, decimals: int = DECIMALS) -> str:
    """Text of a table for the given moduli and s values.

    ``fmt`` is ``"paper"`` (space-aligned columns, values rounded to 50
    decimals) or ``"json"`` (array of row objects with string decimals).
    With ``fillers`` the text layout replaces duplicate and conjugate
    character blocks by one placeholder line.
    """
    moduli = [moduli] if isinstance(moduli, int) else list(moduli)
    s_values = list(s_range)
    _check(kind, moduli, s_values)
    if fmt not in ("paper", "json"):
        raise UsageError(f"unknown format {fmt!r}")
    ctx = ctx or PrecisionContext()

    if kind == "chars":
        if fmt == "json":
            recs = [r.to_json() for m in moduli for r in char_records(m)]
            return _dump_json(recs)
        blocks = []
        for m in moduli:
            blocks.append("\n".join([f"m = {m}, phi(m) = {totient(m)}"] + _chars_text(m)))
        return "\n\n".join(blocks) + "\n"

    skip: dict[tuple[int, int], str] = {}
    tasks: list[Task] = []
    for m in moduli:
        for t in _cell_tasks(kind, m, s_values):
            if fillers and fmt == "paper" and kind in COMPLEX_KINDS:
                key = (m, t[2])
                if key not in skip:
                    skip[key] = _filler(kind, m, t[2]) or ""
                if skip[key]:
                    continue
            tasks.append(t)
    results = evaluate_tasks(tasks, ctx, jobs, decimals)
    for r in results:
        if isinstance(r, Exception):
            raise r
    values = dict(zip(tasks, results))

    if fmt == "json":
        recs = []
        for t in tasks:
            re_, im_ = values[t]
            recs.append(GoldenRecord(kind, t[1], t[2], t[3], re_, im_).to_json())
        return _dump_json(recs)

    blocks = []
    for m in moduli:
        lines = []
        emitted_filler: set = set()
        for t in _cell_tasks(kind, m, s_values):
            key = (m, t[2])
            if skip.get(key):
                if key not in emitted_filler:
                    lines.append(skip[key])
                    emitted_filler.add(key)
                continue
            re_, im_ = values[t]
            line = f"{m:2d} {_label_text(t[2])} {t[3]:2d} {_column(re_)}"
            if im_ is not None:
                line += f" {_column(im_)}"
            lines.append(line)
        blocks.append("\n".join(lines))
    return _header(kind, decimals) + "\n" + "\n\n".join(blocks) + "\n"


def _dump_json(recs: list[dict]) -> str:
    return "[\n" + ",\n".join(json.dumps(r, sort_keys=True) for r in recs) + "\n]\n"


@dataclass
class RecordResult:
    record: GoldenRecord
    delta: object = None  # mpf, or None on error
    error: Optional[str] = None
    passed: bool = False


@dataclass
class VerifyReport:
    results: list[RecordResult]
    tolerance_digits: int

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    @property
    def counts(self) -> tuple[int, int, int]:
        ok = sum(r.passed for r in self.results)
        err = sum(r.error is not None for r in self.results)
        return ok, len(self.results) - ok - err, err

    def worst(self) -> Optional[RecordResult]:
        scored = [r for r in self.results if r.error is None]
        if not scored:
            return None
        return max(scored, key=lambda r: r.delta)

    def render(self, ctx: PrecisionContext, verbose: bool = True) -> str:
        lines = []
        if verbose:
            for r in self.results:
                if r.error is not None:
                    lines.append(f"ERROR {r.record.name}  line {r.record.line}: {r.error}")
                else:
                    status = "PASS " if r.passed else "FAIL "
                    lines.append(f"{status} {r.record.name}  |d|={_fmt_delta(r.delta, ctx)}")
        ok, fail, err = self.counts
        lines.append(f"records: {len(self.results)}  passed: {ok}  failed: {fail}  errors: {err}"
                     f"  tolerance: 1e-{self.tolerance_digits}")
        w = self.worst()
        if w is not None:
            lines.append(f"worst: {w.record.name}  |d|={_fmt_delta(w.delta, ctx)}")
        return "\n".join(lines) + "\n"


def _fmt_delta(d, ctx: PrecisionContext) -> str:
    if d == 0:
        return "0"
    if d == ctx.mp.inf:
        return "mismatch"
    return ctx.mp.nstr(d, 3)


def verify_records(records: Sequence[GoldenRecord], ctx: Optional[PrecisionContext] = None,
                   tolerance_digits: int = 48, jobs: int = 1) -> VerifyReport:
    """Recompute every record and compare with |delta| < 10^-tolerance_digits."""
    ctx = ctx or PrecisionContext()
    mp = ctx.mp
    tol = mp.mpf(10) ** (-tolerance_digits)
    out: list[Optional[RecordResult]] = [None] * len(records)

    numeric = []
    for i, rec in enumerate(records):
        if rec.kind == "chars":
            out[i] = _verify_char(rec, mp)
        else:
            numeric.append(i)
    tasks = [(records[i].kind, records[i].m, records[i].label, records[i].s) for i in numeric]
    # compare unrounded values: carry every working digit
    results = evaluate_tasks(tasks, ctx, jobs, ctx.working_digits)
    for i, res in zip(numeric, results):
        rec = records[i]
        if isinstance(res, Exception):
            out[i] = RecordResult(rec, error=f"{type(res).__name__}: {res}")
            continue
        d = abs(mp.mpf(res[0]) - mp.mpf(rec.re))
        if rec.im is not None:
            d = max(d, abs(mp.mpf(res[1] or "0") - mp.mpf(rec.im)))
        out[i] = RecordResult(rec, d, passed=d < tol)
    return VerifyReport(out, tolerance_digits)


def _verify_char(rec: GoldenRecord, mp) -> RecordResult:
    try:
        phi = totient(rec.m)
        chi = character(rec.m, int(rec.label))
        got = tuple(value_symbol(chi(n), phi) for n in range(1, rec.m + 1))
    except Exception as exc:
        return RecordResult(rec, error=f"{type(exc).__name__}: {exc}")
    ok = got == rec.values and chi.conductor == rec.s
    return RecordResult(rec, mp.zero if ok else mp.inf, passed=ok)


def verify_goldens(golden_path=None, tolerance_digits: int = 48,
                   ctx: Optional[PrecisionContext] = None, jobs: int = 1) -> VerifyReport:
    """Verify a golden file (listing, character table or JSON), or every
    bundled listing when ``golden_path`` is None."""
    from .golden import embedded_records, parse_file

    if golden_path is None:
        records = [r for kind in KINDS for r in embedded_records(kind)]
    else:
        records = parse_file(golden_path)
    return verify_records(records, ctx, tolerance_digits, jobs)
