"""Lune-free normal forms and the equivalence decisions they support.

Removing kinks and lunes in any order reaches the same curve up to sphere
homeomorphism, so two curves are move-equivalent exactly when their fully
reduced forms are isotopic.  The greedy reducer below applies the first
removal site in a fixed order, which makes traces reproducible; order
independence is exercised separately by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import PlanarCurve, is_isotopic
from .moves import B_KINDS, MoveKind, MoveSite, apply, find_sites, is_lune_free

__all__ = [
    "ReductionTrace",
    "reduce_1",
    "reduce_2",
    "reduce_12",
    "equivalent_1",
    "equivalent_2",
    "equivalent_12",
    "is_lune_free",
]


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[MoveSite, ...]
    result: PlanarCurve


def _greedy(curve: PlanarCurve, kinds: frozenset[MoveKind]) -> ReductionTrace:
    steps: list[MoveSite] = []
    while True:
        sites = find_sites(curve, kinds)
        if not sites:
            return ReductionTrace(tuple(steps), curve)
        steps.append(sites[0])
        curve = apply(curve, sites[0])


def reduce_1(curve: PlanarCurve) -> ReductionTrace:
    """Remove kinks until none remain."""
    return _greedy(curve, frozenset({MoveKind.DEL1}))


def reduce_2(curve: PlanarCurve) -> ReductionTrace:
    """Remove lunes until none remain."""
    return _greedy(curve, frozenset({MoveKind.DEL2}))


def reduce_12(curve: PlanarCurve) -> ReductionTrace:
    """Remove kinks and lunes until the curve is lune-free."""
    return _greedy(curve, B_KINDS)


def equivalent_1(a: PlanarCurve, b: PlanarCurve) -> bool:
    """Equivalence under kink moves alone."""
    return is_isotopic(reduce_1(a).result, reduce_1(b).result)


def equivalent_2(a: PlanarCurve, b: PlanarCurve) -> bool:
    """Equivalence under lune moves alone."""
    return is_isotopic(reduce_2(a).result, reduce_2(b).result)


def equivalent_12(a: PlanarCurve, b: PlanarCurve) -> bool:
    """Equivalence under kink and lune moves together."""
    return is_isotopic(reduce_12(a).result, reduce_12(b).result)
