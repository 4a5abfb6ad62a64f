"""Text corpus format and result reports.

One projection per line:

    name: a+ b- c+ a+ b- c+ | tricolor=true fox3=9

The part after `|` is optional and records expected property values for
corpus-driven regression runs.  `#` starts a comment; blank lines are
skipped.  Reports are tab-separated `name<TAB>property<TAB>value` records.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .curves import PlanarCurve, SignedGaussCode, from_signed_gauss_code, label_for
from .errors import CodecError, KnotProjError, SignMismatch, ValidationError

_NAME_RE = re.compile(r"[A-Za-z0-9_.-]+")
_TOKEN_RE = re.compile(r"([A-Za-z0-9]+)([+-])")

Value = Union[bool, int]


@dataclass
class CorpusEntry:
    name: str
    code: SignedGaussCode
    expected: dict[str, Value] = field(default_factory=dict)
    line: int = field(default=0, compare=False)

    def curve(self) -> PlanarCurve:
        return from_signed_gauss_code(self.code)


def _parse_value(text: str, line: int, column: int) -> Value:
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        raise CodecError(f"expected true/false or integer, got {text!r}", line, column)


def _parse_tokens(text: str, line: int, offset: int) -> SignedGaussCode:
    word = []
    signs: dict[str, int] = {}
    column = offset
    for raw in text.split():
        column = offset + text.index(raw)
        m = _TOKEN_RE.fullmatch(raw)
        if not m:
            raise CodecError(f"malformed token {raw!r}", line, column + 1)
        label, sign = m.group(1), 1 if m.group(2) == "+" else -1
        if label in signs and signs[label] != sign:
            raise SignMismatch(f"label {label!r} occurs with both signs", line, column + 1)
        word.append(label)
        signs[label] = sign
    return SignedGaussCode(word, signs)


def parse_corpus(text: str) -> list[CorpusEntry]:
    """Parse a corpus file; errors carry 1-based line/column positions."""
    entries: list[CorpusEntry] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ":" not in line:
            raise CodecError("expected 'name: tokens'", lineno, 1)
        name_part, rest = line.split(":", 1)
        name = name_part.strip()
        if not _NAME_RE.fullmatch(name):
            raise CodecError(f"bad entry name {name_part.strip()!r}", lineno, 1)
        if name in names:
            raise CodecError(f"duplicate entry name {name!r}", lineno, 1)
        names.add(name)
        if "|" in rest:
            token_part, expect_part = rest.split("|", 1)
        else:
            token_part, expect_part = rest, ""
        code = _parse_tokens(token_part, lineno, len(name_part) + 1)
        expected: dict[str, Value] = {}
        for item in expect_part.split():
            col = line.index(item) + 1
            if "=" not in item:
                raise CodecError(f"expected prop=value, got {item!r}", lineno, col)
            prop, val = item.split("=", 1)
            expected[prop] = _parse_value(val, lineno, col)
        try:
            from_signed_gauss_code(code)
        except KnotProjError as exc:
            raise ValidationError(f"entry {name!r}: {exc}", lineno, 1) from exc
        entries.append(CorpusEntry(name, code, expected, lineno))
    return entries


def serialize(entry: CorpusEntry) -> str:
    """One corpus line; labels renamed to a, b, c, ... in first-occurrence
    order (the word itself is kept verbatim)."""
    rename: dict[str, str] = {}
    for t in entry.code.word:
        if t not in rename:
            rename[t] = label_for(len(rename))
    code = SignedGaussCode(
        tuple(rename[t] for t in entry.code.word),
        {rename[t]: s for t, s in entry.code.signs.items()},
    )
    parts = [f"{entry.name}: {code.to_text()}".rstrip()]
    if entry.expected:
        exp = " ".join(f"{k}={_format_value(v)}" for k, v in sorted(entry.expected.items()))
        parts.append(f"| {exp}")
    return " ".join(parts)


def _format_value(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def format_report(records: Iterable[tuple[str, str, Value]]) -> str:
    """Stable tab-separated report, one record per line."""
    return "".join(f"{n}\t{p}\t{_format_value(v)}\n" for n, p, v in records)


def parse_report(text: str) -> list[tuple[str, str, Value]]:
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) != 3:
            raise CodecError("report records are name<TAB>property<TAB>value", lineno, 1)
        records.append((parts[0], parts[1], _parse_value(parts[2], lineno, 1)))
    return records
