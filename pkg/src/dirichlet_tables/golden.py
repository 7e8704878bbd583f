"""Reference-listing fixtures: parsing and record types."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Union

# 4th token of a listing's column header -> kind
HEADER_KINDS = {
    "Re(L)": "L", "Re(L')": "Lprime", "Re(S)": "S",
    "P": "P", "Zeta": "Zeta", "A": "A", "Q": "Q", "F": "F", "C": "C",
}
KINDS = ("L", "Lprime", "S", "P", "Zeta", "A", "Q", "F", "C", "chars")
COMPLEX_KINDS = ("L", "Lprime", "S")
DATA_FILES = {
    "L": "L.txt", "Lprime": "Lprime.txt", "S": "S.txt", "P": "P.txt", "Zeta": "Zeta.txt",
    "A": "A.txt", "Q": "Q.txt", "F": "F.txt", "C": "C.txt", "chars": "chars.txt",
}

_DECIMAL = re.compile(r"^-?\d+\.\d+$")
_FILLER = re.compile(r"^\s*\d+\s+\d+\s+\*\s+(same block|complex conjugate)")
_CHAR_TOKEN = re.compile(r"^(0|1|-1|i|-i|u\d+|ub\d+)$")


class GoldenParseError(ValueError):
    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class GoldenRecord:
    """One reference row.

    ``label`` is the character index r (L, Lprime, S), the residue n, or
    ``"*"`` for a star row.  ``re``/``im`` are the decimal strings as
    printed; ``im`` is None for real kinds.  For ``chars`` records ``s`` is
    the conductor and ``values`` holds the symbol tokens.
    """

    kind: str
    m: int
    label: Union[int, str]
    s: int
    re: str = ""
    im: Optional[str] = None
    values: tuple[str, ...] = ()
    line: int = 0

    @property
    def name(self) -> str:
        if self.kind == "chars":
            return f"chars m={self.m} r={self.label}"
        tag = "r" if self.kind in COMPLEX_KINDS else "n"
        return f"{self.kind} m={self.m} {tag}={self.label} s={self.s}"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "m": self.m}
        if self.kind == "chars":
            out.update(r=self.label, conductor=self.s, values=list(self.values))
            return out
        out["r" if self.kind in COMPLEX_KINDS else "n"] = self.label
        out["s"] = self.s
        out["re"] = self.re
        if self.im is not None:
            out["im"] = self.im
        return out

    @classmethod
    def from_json(cls, obj: dict, line: int = 0) -> "GoldenRecord":
        kind = obj["kind"]
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        if kind == "chars":
            return cls(kind, int(obj["m"]), int(obj["r"]), int(obj["conductor"]),
                       values=tuple(obj["values"]), line=line)
        label = obj["r"] if kind in COMPLEX_KINDS else obj["n"]
        label = label if label == "*" else int(label)
        for key in ("re", "im"):
            if key in obj and not _DECIMAL.match(obj[key]):
                raise ValueError(f"{key} is not a decimal string")
        if (kind in COMPLEX_KINDS) != ("im" in obj):
            raise ValueError("im must be present exactly for complex kinds")
        return cls(kind, int(obj["m"]), label, int(obj["s"]), obj["re"], obj.get("im"), line=line)


def _parse_listing(lines: list[str], path: str) -> list[GoldenRecord]:
    kind = None
    records = []
    for no, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.split()
        if kind is None:
            if tokens[:3] != ["m", "r", "s"] and tokens[:3] != ["m", "n", "s"] or len(tokens) < 4:
                raise GoldenParseError(path, no, "expected a column header line")
            kind = HEADER_KINDS.get(tokens[3])
            if kind is None:
                raise GoldenParseError(path, no, f"unknown column {tokens[3]!r}")
            continue
        if _FILLER.match(raw):
            continue
        complex_kind = kind in COMPLEX_KINDS
        want = 5 if complex_kind else 4
        if len(tokens) != want:
            raise GoldenParseError(path, no, f"expected {want} fields, got {len(tokens)}")
        try:
            m, s = int(tokens[0]), int(tokens[2])
            label: Union[int, str] = tokens[1] if tokens[1] == "*" else int(tokens[1])
        except ValueError:
            raise GoldenParseError(path, no, "m, label and s must be integers") from None
        if label == "*" and complex_kind:
            raise GoldenParseError(path, no, "star label outside a constants listing")
        for tok in tokens[3:]:
            if not _DECIMAL.match(tok):
                raise GoldenParseError(path, no, f"bad decimal {tok!r}")
        records.append(GoldenRecord(kind, m, label, s, tokens[3],
                                    tokens[4] if complex_kind else None, line=no))
    if kind is None:
        raise GoldenParseError(path, len(lines), "no column header found")
    return records


def _parse_chars(lines: list[str], path: str) -> list[GoldenRecord]:
    records = []
    for no, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        tokens = text.split()
        try:
            m, r, f = int(tokens[0]), int(tokens[1]), int(tokens[2])
        except (ValueError, IndexError):
            raise GoldenParseError(path, no, "expected m r conductor") from None
        values = tuple(tokens[3:])
        if len(values) != m or not all(_CHAR_TOKEN.match(v) for v in values):
            raise GoldenParseError(path, no, f"expected {m} character values")
        records.append(GoldenRecord("chars", m, r, f, values=values, line=no))
    return records


def parse_text(text: str, path: str = "<text>") -> list[GoldenRecord]:
    """Parse a listing, a character table or a JSON array of records."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GoldenParseError(path, exc.lineno, exc.msg) from None
        out = []
        for i, obj in enumerate(data):
            try:
                out.append(GoldenRecord.from_json(obj, line=i + 1))
            except (KeyError, ValueError, TypeError) as exc:
                raise GoldenParseError(path, i + 1, f"bad record: {exc}") from None
        return out
    lines = text.splitlines()
    if any(line.startswith("# columns: m r conductor") for line in lines):
        return _parse_chars(lines, path)
    return _parse_listing(lines, path)


def parse_file(path: Union[str, Path]) -> list[GoldenRecord]:
    path = Path(path)
    return parse_text(path.read_text(encoding="utf-8"), str(path))


def data_text(kind: str) -> str:
    """Raw text of the bundled reference listing for ``kind``."""
    return resources.files("dirichlet_tables").joinpath("data", DATA_FILES[kind]).read_text(encoding="utf-8")


def embedded_records(kind: str) -> list[GoldenRecord]:
    return parse_text(data_text(kind), f"data/{DATA_FILES[kind]}")
