"""Command-line front end.

Inputs accept either a corpus file path or an inline code such as
"a+ b- c+ a+ b- c+" (an argument naming an existing file is read as a
corpus; anything else is parsed as tokens).  Machine output goes to
stdout, diagnostics to stderr.  Exit codes: 0 success (for `equiv`:
equivalent), 1 negative result or corpus mismatch, 2 parse or validation
error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Iterable

from . import codec
from .curves import PlanarCurve, SignedGaussCode, from_signed_gauss_code
from .errors import CodecError, KnotProjError, SurgeryBroken
from .invariants import invariant_names, is_weak13_trivial, weak13_invariant
from .moves import MoveKind, find_sites, neighbors
from .reduction import reduce_1, reduce_2, reduce_12
from .resolution import positive_resolution

_REDUCERS = {"1": reduce_1, "2": reduce_2, "12": reduce_12}


def _load_entries(arg: str) -> list[codec.CorpusEntry]:
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
        try:
            return codec.parse_corpus(text)
        except CodecError as exc:
            raise CodecError(f"{arg}:{exc}", exc.line, exc.column) from exc
    code = SignedGaussCode.from_text(arg)
    entry = codec.CorpusEntry("input", code)
    entry.curve()  # validate
    return [entry]


def _load_one(arg: str) -> PlanarCurve:
    entries = _load_entries(arg)
    if len(entries) != 1:
        raise CodecError(f"expected exactly one projection, found {len(entries)}")
    return entries[0].curve()


def _parse_kinds(text: str) -> set[MoveKind]:
    kinds = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            kinds.add(MoveKind(part))
        except ValueError:
            raise CodecError(f"unknown move kind {part!r}") from None
    return kinds


def _emit(records: Iterable[tuple[str, str, codec.Value]]) -> None:
    sys.stdout.write(codec.format_report(records))


def _cmd_validate(args) -> int:
    records = []
    for entry in _load_entries(args.input):
        curve = entry.curve()
        records.append((entry.name, "crossings", curve.n))
        records.append((entry.name, "faces", curve.num_faces))
    _emit(records)
    return 0


def _cmd_canon(args) -> int:
    for entry in _load_entries(args.input):
        print(f"{entry.name}: {entry.curve().code_text()}")
    return 0


def _cmd_reduce(args) -> int:
    reducer = _REDUCERS[args.mode]
    for entry in _load_entries(args.input):
        trace = reducer(entry.curve())
        for site in trace.steps:
            print(f"{entry.name}\tstep\t{site}")
        print(f"{entry.name}\tresult\t{trace.result.code_text()}")
    return 0


def _cmd_equiv(args) -> int:
    a, b = _load_one(args.first), _load_one(args.second)
    reducer = _REDUCERS[args.mode]
    same = reducer(a).result.canonical_key == reducer(b).result.canonical_key
    print("equivalent" if same else "inequivalent")
    return 0 if same else 1


def _cmd_resolve(args) -> int:
    for entry in _load_entries(args.input):
        print(f"{entry.name}: {positive_resolution(entry.curve()).code_text()}")
    return 0


def _cmd_invariants(args) -> int:
    names = [s.strip() for s in args.inv.split(",") if s.strip()]
    for name in names:
        if name not in invariant_names():
            raise CodecError(f"unknown invariant {name!r}")
    records = []
    for entry in _load_entries(args.input):
        curve = entry.curve()
        for name in names:
            records.append((entry.name, name, weak13_invariant(curve, name).value))
    _emit(records)
    return 0


def _cmd_trivial(args) -> int:
    curve = _load_one(args.input)
    print("true" if is_weak13_trivial(curve) else "false")
    return 0


def _cmd_neighbors(args) -> int:
    curve = _load_one(args.input)
    kinds = _parse_kinds(args.kinds)
    bound = args.max_crossings if args.max_crossings is not None else curve.n + 2
    for result in neighbors(curve, kinds, bound):
        print(result.code_text() or "(trivial)")
    return 0


def _cmd_corpus(args) -> int:
    entries = _load_entries(args.file)
    records = []
    mismatches = 0
    for entry in entries:
        curve = entry.curve()
        for prop, expected in sorted(entry.expected.items()):
            actual = weak13_invariant(curve, prop).value
            records.append((entry.name, prop, actual))
            if actual != expected:
                mismatches += 1
                print(
                    f"{entry.name}: {prop} expected {expected}, got {actual}",
                    file=sys.stderr,
                )
    _emit(records)
    if mismatches:
        print(f"{mismatches} mismatch(es)", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotproj",
        description="Decide flat-move equivalence of knot projections, "
        "compute lune-free normal forms, positive resolutions, and "
        "coloring invariants.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="parse and validate projections")
    p.add_argument("input")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("canon", help="print canonical codes")
    p.add_argument("input")
    p.set_defaults(fn=_cmd_canon)

    p = sub.add_parser("reduce", help="remove kinks/lunes to the normal form")
    p.add_argument("input")
    p.add_argument("--mode", choices=("1", "2", "12"), default="12")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("equiv", help="decide move equivalence of two projections")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--mode", choices=("1", "2", "12"), default="12")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("resolve", help="print the all-positive diagram")
    p.add_argument("input")
    p.set_defaults(fn=_cmd_resolve)

    p = sub.add_parser("invariants", help="evaluate invariants of the resolution")
    p.add_argument("input")
    p.add_argument("--inv", default="tricolor,fox3,fox5")
    p.set_defaults(fn=_cmd_invariants)

    p = sub.add_parser("trivial", help="can kinks and weak triangle moves untie it?")
    p.add_argument("input")
    p.set_defaults(fn=_cmd_trivial)

    p = sub.add_parser("neighbors", help="list one-move neighbours")
    p.add_argument("input")
    p.add_argument("--kinds", default="1a,1b,2a,2b,h3w,h3s")
    p.add_argument("--max-crossings", type=int, default=None)
    p.set_defaults(fn=_cmd_neighbors)

    p = sub.add_parser("corpus", help="corpus operations")
    corpus_sub = p.add_subparsers(dest="corpus_verb", required=True)
    run = corpus_sub.add_parser("run", help="evaluate expected values; nonzero on mismatch")
    run.add_argument("file")
    run.set_defaults(fn=_cmd_corpus)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SurgeryBroken as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (KnotProjError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
