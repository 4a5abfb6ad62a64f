"""Flat Reidemeister calculus on knot projections.

Decides equivalence of spherical curve projections under kink and lune
moves by reduction to a unique lune-free normal form, resolves projections
to all-positive knot diagrams, and evaluates coloring invariants that are
stable under kink and weak triangle moves.
"""

from .curves import (
    PlanarCurve,
    SignedGaussCode,
    TRIVIAL,
    from_signed_gauss_code,
    is_isotopic,
    realize_unsigned,
)

__all__ = [
    "PlanarCurve",
    "SignedGaussCode",
    "TRIVIAL",
    "from_signed_gauss_code",
    "is_isotopic",
    "realize_unsigned",
]
