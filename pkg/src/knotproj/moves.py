"""Local homotopy moves on curves: kink moves (1a/1b), lune moves (2a/2b),
and the two global kinds of triangle move, plus rewriting of mixed move
sequences into generation-only form.

All surgeries are word surgeries: they edit the double-occurrence word and
the sign table, rebuild the curve, and validate it.  Sites are positional;
applying any move invalidates every other site on the same curve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .curves import Face, PlanarCurve, build_curve
from .errors import (
    InvalidSite,
    KindOutOfScope,
    KnotProjError,
    NonSphere,
    NotReduced,
    SurgeryBroken,
)


class MoveKind(enum.Enum):
    ADD1 = "1a"  # generate a 1-gon (kink)
    DEL1 = "1b"  # remove a 1-gon
    ADD2 = "2a"  # generate a 2-gon (lune)
    DEL2 = "2b"  # remove a 2-gon
    TRI_WEAK = "h3w"  # weak triangle move
    TRI_STRONG = "h3s"  # strong triangle move

    def __str__(self) -> str:
        return self.value


A_KINDS = frozenset({MoveKind.ADD1, MoveKind.ADD2})
B_KINDS = frozenset({MoveKind.DEL1, MoveKind.DEL2})
H3_KINDS = frozenset({MoveKind.TRI_WEAK, MoveKind.TRI_STRONG})

_KIND_ORDER = {k: i for i, k in enumerate(MoveKind)}


@dataclass(frozen=True)
class MoveSite:
    """A locatable move instance.  Anchor layout by kind:

    1a: (slot, sign)            insert a kink on the edge after `slot`
    1b: (p, p2)                 the kink vertex's adjacent occurrence pair
    2a: (i, j, sx, sy, par)     push one strand across a face over another:
                                insert x,y after slot `i` and, after slot
                                `j` (i <= j), y,x when par=0 (anti-parallel
                                strands) or x,y when par=1 (parallel)
    2b: (e1, e2)                the lune face's two edges
    h3w/h3s: (e1, e2, e3)       the triangle face's three side edges
    """

    kind: MoveKind
    anchor: tuple

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.anchor)

    def __str__(self) -> str:
        return f"{self.kind.value}@{','.join(str(a) for a in self.anchor)}"


# -- interleavement and triangle classification ------------------------------


def interleaved(curve: PlanarCurve, x: int, y: int) -> bool:
    """Whether the chords of crossings x and y cross in the chord diagram."""
    x1, x2 = curve.occurrences[x]
    y1, y2 = curve.occurrences[y]
    return (x1 < y1 < x2) != (x1 < y2 < x2)


def _triangle_vertices(curve: PlanarCurve, face: Face) -> Optional[tuple[int, int, int]]:
    if face.degree != 3:
        return None
    vs = face.corner_vertices(curve)
    if len(set(vs)) != 3:
        return None
    return vs


def triangle_interleave_count(curve: PlanarCurve, face: Face) -> int:
    """How many of the triangle's three chord pairs interleave.  Counts 0
    and 3 swap under a flip, as do 1 and 2, so the count mod {0,3}/{1,2}
    is a property of the move itself."""
    vs = _triangle_vertices(curve, face)
    if vs is None:
        raise InvalidSite("not a triangle with three distinct crossings")
    x, y, z = vs
    return sum(interleaved(curve, a, b) for a, b in ((x, y), (y, z), (x, z)))


def classify_3gon(curve: PlanarCurve, face: Face) -> str:
    """'strong' when the triangle's branch connections are all-parallel or
    all-transverse (0 or 3 interleaved chord pairs), 'weak' otherwise.
    Weak flips commute with positive resolution; strong flips need not."""
    count = triangle_interleave_count(curve, face)
    return "strong" if count in (0, 3) else "weak"


# -- surgeries ----------------------------------------------------------------


def _sign_map(curve: PlanarCurve) -> dict:
    return {v: s for v, s in enumerate(curve.signs)}


def _tokens_add1(curve: PlanarCurve, slot: int, sign: int) -> tuple[list, dict]:
    size = len(curve.word)
    if curve.n == 0:
        if slot != 0:
            raise InvalidSite("the 0-crossing curve has a single slot 0")
        tokens: list = ["new", "new"]
    else:
        if not 0 <= slot < size:
            raise InvalidSite(f"slot {slot} out of range")
        w = list(curve.word)
        tokens = w[: slot + 1] + ["new", "new"] + w[slot + 1 :]
    signs = _sign_map(curve)
    signs["new"] = sign
    return tokens, signs


def _tokens_del1(curve: PlanarCurve, p: int, p2: int) -> tuple[list, dict]:
    size = len(curve.word)
    if size == 0 or p2 != (p + 1) % size or curve.word[p] != curve.word[p2]:
        raise InvalidSite(f"no kink at positions ({p}, {p2})")
    drop = {p, p2}
    tokens = [t for q, t in enumerate(curve.word) if q not in drop]
    return tokens, _sign_map(curve)


def _created_lune_edges(n0: int, i: int, j: int) -> tuple[int, int]:
    """Edges of the lune created by a 2a at slots (i, j) on an n0-crossing
    curve (word length 2*n0)."""
    if n0 == 0:
        return (0, 2)
    if i == j:
        return (i + 1, i + 3)
    return (i + 1, j + 3)


def _tokens_add2(
    curve: PlanarCurve, i: int, j: int, sx: int, sy: int, par: int
) -> tuple[list, dict]:
    size = len(curve.word)
    second = ["nx", "ny"] if par else ["ny", "nx"]
    if curve.n == 0:
        if (i, j) != (0, 0):
            raise InvalidSite("the 0-crossing curve has a single slot pair (0, 0)")
        tokens: list = ["nx", "ny"] + second
    else:
        if not (0 <= i <= j < size):
            raise InvalidSite(f"slot pair ({i}, {j}) out of range")
        w = list(curve.word)
        if i == j:
            tokens = w[: i + 1] + ["nx", "ny"] + second + w[i + 1 :]
        else:
            tokens = w[: i + 1] + ["nx", "ny"] + w[i + 1 : j + 1] + second + w[j + 1 :]
    signs = _sign_map(curve)
    signs["nx"], signs["ny"] = sx, sy
    return tokens, signs


def _try_add2(
    curve: PlanarCurve, i: int, j: int, sx: int, sy: int, par: int
) -> Optional[PlanarCurve]:
    """Build the candidate lune insertion; None when the sphere or the
    created lune face is missing (the push is not geometric)."""
    try:
        tokens, signs = _tokens_add2(curve, i, j, sx, sy, par)
    except InvalidSite:
        return None
    try:
        result = build_curve(tokens, signs)
    except NonSphere:
        return None
    lune = _created_lune_edges(curve.n, i, j)
    for f in result.faces:
        if f.degree == 2 and f.edges == lune:
            return result
    return None


def _lune_face(curve: PlanarCurve, e1: int, e2: int) -> Face:
    for f in curve.faces:
        if f.degree == 2 and f.edges == (e1, e2):
            vs = f.corner_vertices(curve)
            if vs[0] == vs[1]:
                raise InvalidSite("lune with a repeated crossing is not removable")
            return f
    raise InvalidSite(f"no lune face on edges ({e1}, {e2})")


def _tokens_del2(curve: PlanarCurve, e1: int, e2: int) -> tuple[list, dict]:
    _lune_face(curve, e1, e2)
    size = len(curve.word)
    drop = {e1, (e1 + 1) % size, e2, (e2 + 1) % size}
    tokens = [t for q, t in enumerate(curve.word) if q not in drop]
    return tokens, _sign_map(curve)


def _triangle_face(curve: PlanarCurve, edges: tuple[int, int, int]) -> Face:
    for f in curve.faces:
        if f.degree == 3 and f.edges == edges:
            if _triangle_vertices(curve, f) is None:
                raise InvalidSite("triangle revisits a crossing; not movable")
            return f
    raise InvalidSite(f"no triangle face on edges {edges}")


def _tokens_h3(curve: PlanarCurve, edges: tuple[int, int, int]) -> tuple[list, dict]:
    """Flip a triangle: swap the two tokens of each side.  A crossing keeps
    its geometric handedness, so its stored sign flips exactly when the
    swaps reverse its two occurrences' linear order."""
    _triangle_face(curve, edges)
    size = len(curve.word)
    perm = list(range(size))  # old position -> new position
    tokens = list(curve.word)
    for e in edges:
        a, b = e, (e + 1) % size
        tokens[a], tokens[b] = tokens[b], tokens[a]
        perm[a], perm[b] = perm[b], perm[a]
    signs = _sign_map(curve)
    moved = {curve.word[e] for e in edges} | {curve.word[(e + 1) % size] for e in edges}
    for v in moved:
        p1, p2 = curve.occurrences[v]
        if perm[p1] > perm[p2]:
            signs[v] = -signs[v]
    return tokens, signs


def surgery_tokens(curve: PlanarCurve, site: MoveSite) -> tuple[list, dict]:
    """Token list and sign table of the surgery result, before id
    normalization.  Old crossings appear as their old ids."""
    if site.kind is MoveKind.ADD1:
        return _tokens_add1(curve, *site.anchor)
    if site.kind is MoveKind.DEL1:
        return _tokens_del1(curve, *site.anchor)
    if site.kind is MoveKind.ADD2:
        return _tokens_add2(curve, *site.anchor)
    if site.kind is MoveKind.DEL2:
        return _tokens_del2(curve, *site.anchor)
    return _tokens_h3(curve, site.anchor)


def surgery_id_map(curve: PlanarCurve, site: MoveSite) -> dict[int, int]:
    """old crossing id -> id in the surgery result, for surviving crossings."""
    tokens, _ = surgery_tokens(curve, site)
    ids: dict = {}
    for t in tokens:
        if t not in ids:
            ids[t] = len(ids)
    return {v: ids[v] for v in range(curve.n) if v in ids}


def apply(curve: PlanarCurve, site: MoveSite) -> PlanarCurve:
    """Apply one move; the result is validated and the crossing-number
    change is checked (+1, -1, +2, -2, 0 by kind)."""
    kind = site.kind
    if kind is MoveKind.ADD2:
        result = _try_add2(curve, *site.anchor)
        if result is None:
            raise InvalidSite(f"lune insertion {site.anchor} is not geometric here")
        delta = 2
    else:
        if kind in H3_KINDS:
            face = _triangle_face(curve, site.anchor)
            want = "weak" if kind is MoveKind.TRI_WEAK else "strong"
            if classify_3gon(curve, face) != want:
                raise InvalidSite(f"triangle at {site.anchor} has the other connection type")
        tokens, signs = surgery_tokens(curve, site)
        try:
            result = build_curve(tokens, signs)
        except NonSphere as exc:
            raise SurgeryBroken(f"{kind} broke the sphere: {exc}") from exc
        delta = {MoveKind.ADD1: 1, MoveKind.DEL1: -1, MoveKind.DEL2: -2}.get(kind, 0)
    if result.n != curve.n + delta:
        raise SurgeryBroken(f"{kind} changed crossings by {result.n - curve.n}")
    return result


# -- site enumeration ---------------------------------------------------------


def find_sites(curve: PlanarCurve, kinds: Iterable[MoveKind]) -> list[MoveSite]:
    """All sites of the requested kinds, duplicate-free, in a deterministic
    order.  Kink-removal sites are keyed by crossing (the 1-crossing curve
    has two kink faces but a single removable crossing)."""
    kinds = frozenset(kinds)
    size = len(curve.word)
    sites: list[MoveSite] = []
    if MoveKind.ADD1 in kinds:
        for slot in range(size) if curve.n else (0,):
            for sign in (1, -1):
                sites.append(MoveSite(MoveKind.ADD1, (slot, sign)))
    if MoveKind.DEL1 in kinds and curve.n:
        seen: set[int] = set()
        for p in range(size):
            p2 = (p + 1) % size
            v = curve.word[p]
            if curve.word[p2] == v and v not in seen:
                seen.add(v)
                sites.append(MoveSite(MoveKind.DEL1, (p, p2)))
    if MoveKind.ADD2 in kinds:
        pairs = [(0, 0)] if curve.n == 0 else [
            (i, j) for i in range(size) for j in range(i, size)
        ]
        for i, j in pairs:
            for sx in (1, -1):
                for sy in (1, -1):
                    for par in (0, 1):
                        if _try_add2(curve, i, j, sx, sy, par) is not None:
                            sites.append(MoveSite(MoveKind.ADD2, (i, j, sx, sy, par)))
    if MoveKind.DEL2 in kinds:
        for f in curve.faces:
            if f.degree == 2 and len(set(f.corner_vertices(curve))) == 2:
                sites.append(MoveSite(MoveKind.DEL2, f.edges))
    if kinds & H3_KINDS:
        for f in curve.faces:
            if f.degree == 3 and _triangle_vertices(curve, f) is not None:
                kind = (
                    MoveKind.TRI_WEAK
                    if classify_3gon(curve, f) == "weak"
                    else MoveKind.TRI_STRONG
                )
                if kind in kinds:
                    sites.append(MoveSite(kind, f.edges))
    sites.sort(key=MoveSite.sort_key)
    return sites


def neighbors(
    curve: PlanarCurve, kinds: Iterable[MoveKind], max_crossings: Optional[int] = None
) -> list[PlanarCurve]:
    """Single-move results within the crossing bound, one per isotopy class,
    ordered by canonical key."""
    found: dict[tuple, PlanarCurve] = {}
    for site in find_sites(curve, kinds):
        result = apply(curve, site)
        if max_crossings is not None and result.n > max_crossings:
            continue
        found.setdefault(result.canonical_key, result)
    return [found[k] for k in sorted(found)]


# -- move sequences and monotonization ----------------------------------------


@dataclass(frozen=True)
class MoveSequence:
    """A start curve and successively applicable sites."""

    start: PlanarCurve
    steps: tuple[MoveSite, ...]

    @cached_property
    def curves(self) -> tuple[PlanarCurve, ...]:
        chain = [self.start]
        for site in self.steps:
            chain.append(apply(chain[-1], site))
        return tuple(chain)

    @property
    def end(self) -> PlanarCurve:
        return self.curves[-1]


def _created_positions(a_site: MoveSite, before: PlanarCurve) -> frozenset[int]:
    """Positions of the crossings a generation move introduces."""
    if a_site.kind is MoveKind.ADD1:
        if before.n == 0:
            return frozenset({0, 1})
        slot = a_site.anchor[0]
        return frozenset({slot + 1, slot + 2})
    i, j = a_site.anchor[0], a_site.anchor[1]
    if before.n == 0:
        return frozenset({0, 1, 2, 3})
    if i == j:
        return frozenset({i + 1, i + 2, i + 3, i + 4})
    return frozenset({i + 1, i + 2, j + 3, j + 4})


def _b_positions(b_site: MoveSite, curve: PlanarCurve) -> frozenset[int]:
    size = len(curve.word)
    if b_site.kind is MoveKind.DEL1:
        return frozenset(b_site.anchor)
    e1, e2 = b_site.anchor
    return frozenset({e1, (e1 + 1) % size, e2, (e2 + 1) % size})


def _insertion_posmap(a_site: MoveSite, before: PlanarCurve) -> dict[int, int]:
    """Map positions of the post-insertion word back to the pre-insertion
    word (created positions excluded)."""
    created = _created_positions(a_site, before)
    size_after = len(before.word) + (2 if a_site.kind is MoveKind.ADD1 else 4)
    new_to_old = {}
    old = 0
    for q in range(size_after):
        if q in created:
            continue
        new_to_old[q] = old
        old += 1
    return new_to_old


def _deletion_posmap(size_before: int, dropped: frozenset[int]) -> dict[int, int]:
    """Map surviving pre-deletion positions to post-deletion positions."""
    posmap = {}
    new = 0
    for q in range(size_before):
        if q in dropped:
            continue
        posmap[q] = new
        new += 1
    return posmap


def _remap_slot_through_deletion(
    slot: int, size_before: int, dropped: frozenset[int], posmap: dict[int, int]
) -> int:
    """New insertion slot for 'after position `slot`' once `dropped`
    positions are removed (edges around a removed crossing merge)."""
    if size_before - len(dropped) == 0:
        return 0
    q = slot
    for _ in range(size_before):
        if q not in dropped:
            return posmap[q]
        q = (q - 1) % size_before
    raise SurgeryBroken("deletion removed the whole word")


def _commuted_pair(
    a_site: MoveSite, b_site: MoveSite, before: PlanarCurve
) -> tuple[MoveSite, MoveSite]:
    """Rewrite (generate, remove) acting on disjoint cells as
    (remove, generate) with literally remapped anchors."""
    mid_to_pre = _insertion_posmap(a_site, before)
    size_pre = len(before.word)
    if b_site.kind is MoveKind.DEL1:
        p, p2 = (mid_to_pre[q] for q in b_site.anchor)
        if (p + 1) % size_pre == p2:
            b_pre = MoveSite(MoveKind.DEL1, (p, p2))
        elif (p2 + 1) % size_pre == p:
            b_pre = MoveSite(MoveKind.DEL1, (p2, p))
        else:
            raise SurgeryBroken("kink pair did not survive commutation")
        dropped = frozenset(b_pre.anchor)
    else:
        size_mid = len(before.word) + (2 if a_site.kind is MoveKind.ADD1 else 4)
        new_edges = []
        for e in b_site.anchor:
            a, b = mid_to_pre[e], mid_to_pre[(e + 1) % size_mid]
            if (a + 1) % size_pre == b:
                new_edges.append(a)
            elif (b + 1) % size_pre == a:
                new_edges.append(b)
            else:
                raise SurgeryBroken("lune edge did not survive commutation")
        b_pre = MoveSite(MoveKind.DEL2, tuple(sorted(new_edges)))
        e1, e2 = b_pre.anchor
        dropped = frozenset({e1, (e1 + 1) % size_pre, e2, (e2 + 1) % size_pre})
    del_map = _deletion_posmap(size_pre, dropped)
    if a_site.kind is MoveKind.ADD1:
        slot, sign = a_site.anchor
        slot2 = _remap_slot_through_deletion(slot, size_pre, dropped, del_map)
        a_after = MoveSite(MoveKind.ADD1, (slot2, sign))
    else:
        i, j, sx, sy, par = a_site.anchor
        i2 = _remap_slot_through_deletion(i, size_pre, dropped, del_map)
        j2 = _remap_slot_through_deletion(j, size_pre, dropped, del_map)
        if i2 > j2:
            if par:
                i2, j2 = j2, i2
            else:
                i2, j2, sx, sy = j2, i2, sy, sx
        a_after = MoveSite(MoveKind.ADD2, (i2, j2, sx, sy, par))
    return b_pre, a_after


def _transport_site(
    site: MoveSite, old_curve: PlanarCurve, new_curve: PlanarCurve
) -> MoveSite:
    """Re-anchor `site` from old_curve onto the isomorphic new_curve so the
    results stay isotopic."""
    if old_curve == new_curve:
        return site
    iso = old_curve.find_isomorphism(new_curve)
    if iso is None:
        raise SurgeryBroken("sequence rewrite lost curve isomorphism")
    posmap, step, mirrored = iso
    size = len(new_curve.word)
    old_result_key = apply(old_curve, site).canonical_key

    def map_edge(e: int) -> int:
        a, b = posmap[e], posmap[(e + 1) % len(old_curve.word)]
        if (a + 1) % size == b:
            return a
        if (b + 1) % size == a:
            return b
        raise SurgeryBroken("edge image is not an edge")

    if site.kind is MoveKind.DEL1:
        p, p2 = posmap[site.anchor[0]], posmap[site.anchor[1]]
        anchor = (p, p2) if (p + 1) % size == p2 else (p2, p)
        new_site = MoveSite(MoveKind.DEL1, anchor)
    elif site.kind is MoveKind.DEL2:
        new_site = MoveSite(MoveKind.DEL2, tuple(sorted(map_edge(e) for e in site.anchor)))
    elif site.kind in H3_KINDS:
        new_site = MoveSite(site.kind, tuple(sorted(map_edge(e) for e in site.anchor)))
    elif site.kind is MoveKind.ADD1:
        slot, sign = site.anchor
        slot2 = 0 if new_curve.n == 0 else map_edge(slot)
        guess = sign * step * (-1 if mirrored else 1)
        for s in (guess, -guess):
            cand = MoveSite(MoveKind.ADD1, (slot2, s))
            if apply(new_curve, cand).canonical_key == old_result_key:
                return cand
        raise SurgeryBroken("could not transport a kink insertion")
    else:  # ADD2
        i, j, sx, sy, par = site.anchor
        if new_curve.n == 0:
            i2 = j2 = 0
        else:
            i2, j2 = map_edge(i), map_edge(j)
            if i2 > j2:
                i2, j2 = j2, i2
        flip = step * (-1 if mirrored else 1)
        guesses = [(sx * flip, sy * flip, par), (sy * flip, sx * flip, par)]
        guesses += [(a, b, q) for q in (par, 1 - par) for a in (1, -1) for b in (1, -1)]
        for ga, gb, gpar in guesses:
            cand = MoveSite(MoveKind.ADD2, (i2, j2, ga, gb, gpar))
            try:
                if apply(new_curve, cand).canonical_key == old_result_key:
                    return cand
            except InvalidSite:
                continue
        raise SurgeryBroken("could not transport a lune insertion")
    if apply(new_curve, new_site).canonical_key != old_result_key:
        raise SurgeryBroken(f"transported {site.kind} site changed the result")
    return new_site


def _search_replacement(
    kind: MoveKind, base: PlanarCurve, target: PlanarCurve
) -> MoveSite:
    for cand in find_sites(base, {kind}):
        if apply(base, cand).canonical_key == target.canonical_key:
            return cand
    raise SurgeryBroken(f"no {kind} site reproduces the rewritten curve")


def _commute(
    a_site: MoveSite, b_site: MoveSite, pre: PlanarCurve, mid: PlanarCurve, post: PlanarCurve
) -> list[MoveSite]:
    """Swap a disjoint (generate, remove) pair.  The literal index remap is
    exact in almost all cases; cyclic basepoint shifts fall back to locating
    the removal by its crossings and searching for the insertion."""
    try:
        b_pre, a_after = _commuted_pair(a_site, b_site, pre)
        q_post = apply(apply(pre, b_pre), a_after)
        if q_post.canonical_key == post.canonical_key:
            return [b_pre, a_after]
    except (InvalidSite, SurgeryBroken, KeyError):
        pass
    mid_to_pre = _insertion_posmap(a_site, pre)
    pre_vertices = {pre.word[mid_to_pre[q]] for q in _b_positions(b_site, mid)}
    for cand in find_sites(pre, {b_site.kind}):
        if {pre.word[q] for q in _b_positions(cand, pre)} == pre_vertices:
            q_mid = apply(pre, cand)
            return [cand, _search_replacement(a_site.kind, q_mid, post)]
    raise SurgeryBroken("removal site lost in commutation")


def is_lune_free(curve: PlanarCurve) -> bool:
    return all(f.degree not in (1, 2) for f in curve.faces)


def monotonize(seq: MoveSequence) -> MoveSequence:
    """Rewrite a kink/lune move sequence from a lune-free start into one
    using generation moves only, with an isotopic endpoint.

    The first removal move in the sequence either cancels against the
    generation move just before it (when their cells meet) or commutes past
    it (when the cells are disjoint); repeating this drains all removals.
    """
    for s in seq.steps:
        if s.kind in H3_KINDS:
            raise KindOutOfScope("triangle moves cannot be monotonized")
    if not is_lune_free(seq.start):
        raise NotReduced("sequence rewriting requires a lune-free start")
    steps = list(seq.steps)
    target_key = seq.end.canonical_key
    while True:
        chain = [seq.start]
        for s in steps:
            chain.append(apply(chain[-1], s))
        t = next((k for k, s in enumerate(steps) if s.kind in B_KINDS), None)
        if t is None:
            break
        if t == 0:
            raise NotReduced("a removal move cannot start from a lune-free curve")
        a_site, b_site = steps[t - 1], steps[t]
        pre, mid, post = chain[t - 1], chain[t], chain[t + 1]
        created = _created_positions(a_site, pre)
        if created & _b_positions(b_site, mid):
            if (a_site.kind, b_site.kind) == (MoveKind.ADD2, MoveKind.DEL1):
                replacement = [_search_replacement(MoveKind.ADD1, pre, post)]
            elif (a_site.kind, b_site.kind) == (MoveKind.ADD1, MoveKind.DEL2):
                replacement = [_search_replacement(MoveKind.DEL1, pre, post)]
            else:
                if pre.canonical_key != post.canonical_key:
                    raise SurgeryBroken("cancelling pair did not return the curve")
                replacement = []
        else:
            replacement = _commute(a_site, b_site, pre, mid, post)
        new_steps = steps[: t - 1] + replacement
        current = seq.start
        for s in new_steps:
            current = apply(current, s)
        if current.canonical_key != post.canonical_key:
            raise SurgeryBroken("pair rewrite changed the curve class")
        for k in range(t + 1, len(steps)):
            s = _transport_site(steps[k], chain[k], current)
            new_steps.append(s)
            current = apply(current, s)
            if current.canonical_key != chain[k + 1].canonical_key:
                raise SurgeryBroken("transported step changed the curve class")
        steps = new_steps
    result = MoveSequence(seq.start, tuple(steps))
    if result.end.canonical_key != target_key:
        raise SurgeryBroken("rewritten sequence ends at a different curve")
    return result
