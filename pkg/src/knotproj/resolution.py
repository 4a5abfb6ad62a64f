"""Positive resolution of projections into knot diagrams, and the diagram
moves needed to check that weak triangle flips act by a single third
Reidemeister move.

A diagram is a curve plus, at each crossing, the choice of which visit
runs over.  The crossing sign follows the quarter-turn rule: a crossing is
positive when the under-strand's direction is the over-strand's direction
rotated counterclockwise by a quarter turn.  With the word-level sign
convention this reduces to sign = embedding_sign * (+1 if the first visit
is over else -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .curves import PlanarCurve, label_for
from .errors import InvalidSite, NotPositive, SurgeryBroken
from .moves import (
    H3_KINDS,
    MoveKind,
    MoveSite,
    _triangle_vertices,
    apply as apply_move,
    classify_3gon,
    find_sites,
    surgery_id_map,
)

__all__ = [
    "KnotDiagram",
    "positive_resolution",
    "crossing_sign",
    "omega1_sites",
    "omega3_sites",
    "apply_omega",
    "positive_unknot_reduce",
    "is_diagram_isotopic",
    "UNKNOT",
]


@dataclass(frozen=True)
class KnotDiagram:
    """Oriented diagram: the shadow's word order is the orientation, and
    over[v] picks which visit of crossing v runs over (0 = first)."""

    shadow: PlanarCurve
    over: tuple[int, ...]

    def __post_init__(self):
        if len(self.over) != self.shadow.n or any(b not in (0, 1) for b in self.over):
            raise InvalidSite("over data must give 0 or 1 per crossing")

    @property
    def n(self) -> int:
        return self.shadow.n

    def sign(self, v: int) -> int:
        return self.shadow.signs[v] * (1 if self.over[v] == 0 else -1)

    def signs(self) -> tuple[int, ...]:
        return tuple(self.sign(v) for v in range(self.n))

    def writhe(self) -> int:
        return sum(self.signs())

    def is_positive(self) -> bool:
        return all(s == 1 for s in self.signs())

    def over_position(self, v: int) -> int:
        return self.shadow.occurrences[v][self.over[v]]

    def reversed(self) -> "KnotDiagram":
        """The same diagram with the opposite traversal orientation."""
        sh = self.shadow.reversed()
        size = len(self.shadow.word)
        old_first = {v: p for v, (p, _) in enumerate(self.shadow.occurrences)}
        # ids renumber by first occurrence of the reversed word
        order: dict[int, int] = {}
        for p in reversed(range(size)):
            v = self.shadow.word[p]
            if v not in order:
                order[v] = len(order)
        over = [0] * self.n
        for v in range(self.n):
            over[order[v]] = 1 - self.over[v]
        return KnotDiagram(sh, tuple(over))

    def code_text(self) -> str:
        """Extended tokens `<label><sign><o|u>` at each visit; the sign is
        the crossing sign."""
        out = []
        for p, v in enumerate(self.shadow.word):
            s = "+" if self.sign(v) == 1 else "-"
            ou = "o" if self.over_position(v) == p else "u"
            out.append(f"{label_for(v)}{s}{ou}")
        return " ".join(out)

    # -- canonical form up to sphere homeomorphism ---------------------------
    # Reflections compose with an over/under swap so the underlying knot
    # class is preserved; the canonical key quotients by exactly that.

    def _trace(self, start: int, step: int, mirrored: bool) -> tuple:
        sh = self.shadow
        size = len(sh.word)
        rot = sh.rotation_inverse if mirrored else sh.rotation
        order: dict[int, int] = {}
        first_in: dict[int, int] = {}
        first_pos: dict[int, int] = {}
        seq = []
        signs = [0] * sh.n
        overs = [0] * sh.n
        for t in range(size):
            p = (start + t * step) % size
            v = sh.word[p]
            walk_in = sh.in_dart(p) if step == 1 else sh.out_dart(p)
            if v not in order:
                order[v] = len(order)
                first_in[v] = walk_in
                first_pos[v] = p
                seq.append(order[v])
            else:
                seq.append(order[v])
                signs[order[v]] = 1 if rot[first_in[v]] == walk_in else -1
                bit = 0 if first_pos[v] == self.over_position(v) else 1
                overs[order[v]] = bit ^ 1 if mirrored else bit
        return (sh.n, tuple(seq), tuple(signs), tuple(overs))

    @cached_property
    def canonical_key(self) -> tuple:
        if self.n == 0:
            return (0,)
        best = None
        for frame in self.shadow._frames():
            t = self._trace(*frame)
            if best is None or t < best:
                best = t
        return (best[0],) + best[1] + best[2] + best[3]


UNKNOT = KnotDiagram(PlanarCurve((), ()), ())


def is_diagram_isotopic(a: KnotDiagram, b: KnotDiagram) -> bool:
    return a.canonical_key == b.canonical_key


def positive_resolution(curve: PlanarCurve) -> KnotDiagram:
    """Give every double point the over/under choice that makes it a
    positive crossing.  The choice does not depend on the traversal
    orientation: reversing it swaps both the visit order and the stored
    sign, picking the same physical over-strand."""
    return KnotDiagram(curve, tuple(0 if s == 1 else 1 for s in curve.signs))


def crossing_sign(diagram: KnotDiagram, v: int) -> int:
    return diagram.sign(v)


def omega1_sites(diagram: KnotDiagram) -> list[MoveSite]:
    """Kink-removal sites; any kink is removable regardless of its
    over/under data."""
    return find_sites(diagram.shadow, {MoveKind.DEL1})


def _omega3_admissible(diagram: KnotDiagram, edges: tuple[int, int, int]) -> bool:
    """A triangle admits the move when one strand runs over (or under)
    both others, i.e. the over-relations among its sides are not cyclic."""
    sh = diagram.shadow
    size = len(sh.word)
    wins: dict[int, int] = {e: 0 for e in edges}
    corners = {sh.word[e] for e in edges} | {sh.word[(e + 1) % size] for e in edges}
    for v in corners:
        occ = sh.occurrences[v]
        incident = [e for e in edges if e in occ or (e + 1) % size in occ]
        over_pos = diagram.over_position(v)
        winner = None
        for e in incident:
            if over_pos in (e, (e + 1) % size):
                winner = e
        if winner is None or len(incident) != 2:
            raise SurgeryBroken("triangle side bookkeeping failed")
        wins[winner] += 1
    return sorted(wins.values()) != [1, 1, 1]


def omega3_sites(diagram: KnotDiagram) -> list[MoveSite]:
    """Triangle sites whose over/under pattern admits the third move."""
    sites = []
    for site in find_sites(diagram.shadow, H3_KINDS):
        if _omega3_admissible(diagram, site.anchor):
            sites.append(site)
    return sites


def apply_omega(diagram: KnotDiagram, site: MoveSite) -> KnotDiagram:
    """Diagram-level first or third Reidemeister move.  The shadow moves by
    the matching flat move; surviving crossings keep their signs."""
    sh = diagram.shadow
    if site.kind is MoveKind.DEL1:
        new_shadow = apply_move(sh, site)
        idmap = surgery_id_map(sh, site)
        over = [0] * new_shadow.n
        for v_old, v_new in idmap.items():
            over[v_new] = diagram.over[v_old]
        return KnotDiagram(new_shadow, tuple(over))
    if site.kind in H3_KINDS:
        if not _omega3_admissible(diagram, site.anchor):
            raise InvalidSite("triangle over/under pattern blocks the third move")
        new_shadow = apply_move(sh, site)
        idmap = surgery_id_map(sh, site)
        size = len(sh.word)
        moved = {sh.word[e] for e in site.anchor} | {
            sh.word[(e + 1) % size] for e in site.anchor
        }
        over = [0] * new_shadow.n
        for v_old, v_new in idmap.items():
            if v_old in moved:
                want = diagram.sign(v_old)
                over[v_new] = 0 if new_shadow.signs[v_new] == want else 1
            else:
                over[v_new] = diagram.over[v_old]
        result = KnotDiagram(new_shadow, tuple(over))
        if result.signs() != tuple(
            diagram.sign(v_old) for v_old, _ in sorted(idmap.items(), key=lambda kv: kv[1])
        ):
            raise SurgeryBroken("third move changed a crossing sign")
        return result
    raise InvalidSite(f"{site.kind} is not a diagram move")


def positive_unknot_reduce(diagram: KnotDiagram) -> KnotDiagram:
    """Strip kinks from an all-positive diagram until none remain."""
    if not diagram.is_positive():
        raise NotPositive("reduction is only defined for all-positive diagrams")
    while True:
        sites = omega1_sites(diagram)
        if not sites:
            return diagram
        diagram = apply_omega(diagram, sites[0])
