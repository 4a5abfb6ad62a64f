"""Coloring invariants of diagrams and the derived curve invariants that
are stable under kink and weak triangle moves.

Arcs are the maximal strand runs between under-passages.  A Fox coloring
over GF(p) assigns arc values with `under1 + under2 = 2 * over` at every
crossing; the solution count is p raised to the system's nullity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .curves import PlanarCurve
from .errors import KnotProjError, UnsupportedPrime
from .reduction import reduce_1
from .resolution import KnotDiagram, positive_resolution

SUPPORTED_PRIMES = (3, 5, 7, 11, 13)

Value = Union[bool, int]


@dataclass(frozen=True)
class InvariantValue:
    name: str
    value: Value


def _arc_ids(diagram: KnotDiagram) -> list[int]:
    """Arc id per curve edge; consecutive edges merge where the visit
    between them runs over."""
    sh = diagram.shadow
    size = len(sh.word)
    parent = list(range(size))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in range(size):
        v = sh.word[p]
        if diagram.over_position(v) == p:
            a, b = find((p - 1) % size), find(p)
            parent[a] = b
    return [find(i) for i in range(size)]


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rank = 0
    cols = len(rows[0]) if rows else 0
    rows = [r[:] for r in rows]
    for col in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _coloring_nullity(diagram: KnotDiagram, p: int) -> int:
    """Dimension of the Fox coloring space over GF(p), constants included."""
    sh = diagram.shadow
    if sh.n == 0:
        return 1  # one arc, no relations
    size = len(sh.word)
    arcs = _arc_ids(diagram)
    index = {a: i for i, a in enumerate(sorted(set(arcs)))}
    rows = []
    for v in range(sh.n):
        over_p = diagram.over_position(v)
        under_p = sh.occurrences[v][1 - diagram.over[v]]
        row = [0] * len(index)
        row[index[arcs[(under_p - 1) % size]]] += 1
        row[index[arcs[under_p]]] += 1
        row[index[arcs[over_p]]] -= 2
        rows.append([x % p for x in row])
    return len(index) - _rank_mod_p(rows, p)


def fox_coloring_count(diagram: KnotDiagram, p: int) -> int:
    """Number of Fox p-colorings; p itself for trivially colored diagrams."""
    if p not in SUPPORTED_PRIMES:
        raise UnsupportedPrime(f"p must be one of {SUPPORTED_PRIMES}")
    return p ** _coloring_nullity(diagram, p)


def tricolorable(diagram: KnotDiagram) -> bool:
    """Whether a non-constant Fox 3-coloring exists."""
    return _coloring_nullity(diagram, 3) > 1


def is_weak13_trivial(curve: PlanarCurve) -> bool:
    """Whether kink and weak triangle moves can shrink the curve to the
    embedded circle.  Decided by kink removal alone: the all-positive
    resolution of such a curve is an unknot diagram, and positive unknot
    diagrams untie through first moves only."""
    return reduce_1(curve).result.n == 0


_SELECTORS: dict[str, Callable[[PlanarCurve], Value]] = {
    "tricolor": lambda c: tricolorable(positive_resolution(c)),
    "fox3": lambda c: fox_coloring_count(positive_resolution(c), 3),
    "fox5": lambda c: fox_coloring_count(positive_resolution(c), 5),
    "fox7": lambda c: fox_coloring_count(positive_resolution(c), 7),
    "fox11": lambda c: fox_coloring_count(positive_resolution(c), 11),
    "fox13": lambda c: fox_coloring_count(positive_resolution(c), 13),
    "weak13trivial": is_weak13_trivial,
}


def invariant_names() -> tuple[str, ...]:
    return tuple(_SELECTORS)


def weak13_invariant(curve: PlanarCurve, selector: str) -> InvariantValue:
    """Evaluate a named invariant of the positive resolution; constant on
    weak (kink + weak triangle) equivalence classes."""
    try:
        fn = _SELECTORS[selector]
    except KeyError:
        raise KnotProjError(
            f"unknown invariant {selector!r}; expected one of {sorted(_SELECTORS)}"
        ) from None
    return InvariantValue(selector, fn(curve))
