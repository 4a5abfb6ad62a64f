"""Knot projections as combinatorial maps on the sphere.

A projection with n double points is stored as a cyclic double-occurrence
word over crossing ids 0..n-1 together with one embedding sign per
crossing.  The traversal induces 4n darts: edge i (from word position i to
position i+1 mod 2n) owns darts 2i (at its start) and 2i+1 (at its end).
Reading the word from its first token, a crossing with sign +1 has
counterclockwise dart order (first-visit in, second-visit in, first-visit
out, second-visit out); sign -1 swaps the second visit's two darts.  Faces
are the orbits of d -> rotation[d ^ 1]; a code is accepted only when the
face count is n + 2 (sphere).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Mapping, Optional, Sequence

from .errors import BoundExceeded, Disconnected, DuplicateOccurrence, NonSphere

Sign = int  # +1 or -1

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def label_for(index: int) -> str:
    """Letter label for a crossing id: a..z, then aa, ab, ..."""
    if index < 26:
        return _ALPHABET[index]
    hi, lo = divmod(index, 26)
    return _ALPHABET[hi - 1] + _ALPHABET[lo]


class SignedGaussCode:
    """User-facing form of a projection: labelled word plus signs."""

    def __init__(self, word: Sequence[str], signs: Mapping[str, Sign]):
        self.word = tuple(word)
        self.signs = dict(signs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignedGaussCode)
            and self.word == other.word
            and self.signs == other.signs
        )

    def __repr__(self) -> str:
        return f"SignedGaussCode({self.to_text()!r})"

    def to_text(self) -> str:
        return " ".join(f"{t}{'+' if self.signs[t] > 0 else '-'}" for t in self.word)

    @classmethod
    def from_text(cls, text: str) -> "SignedGaussCode":
        """Parse a bare token string like "a+ b- c+ a+ b- c+"."""
        word = []
        signs: dict[str, Sign] = {}
        for tok in text.split():
            if len(tok) < 2 or tok[-1] not in "+-" or not tok[:-1].isalnum():
                raise DuplicateOccurrence(f"malformed token {tok!r}")
            label, sign = tok[:-1], 1 if tok[-1] == "+" else -1
            if label in signs and signs[label] != sign:
                raise DuplicateOccurrence(f"label {label!r} changes sign")
            word.append(label)
            signs[label] = sign
        return cls(word, signs)


@dataclass(frozen=True)
class Face:
    """One face of the projection: a dart orbit of the face permutation."""

    darts: tuple[int, ...]
    corners: tuple[int, ...]  # word position of each dart's vertex

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(sorted(d // 2 for d in self.darts))

    def corner_vertices(self, curve: "PlanarCurve") -> tuple[int, ...]:
        return tuple(curve.word[p] for p in self.corners)


@dataclass(frozen=True)
class PlanarCurve:
    """Immutable spherical curve; all derived structure is cached."""

    word: tuple[int, ...]
    signs: tuple[Sign, ...]

    def __post_init__(self):
        n = len(self.signs)
        if len(self.word) != 2 * n:
            raise DuplicateOccurrence("word length must be twice the crossing count")
        counts: dict[int, int] = {}
        firsts: list[int] = []
        for v in self.word:
            if v not in counts:
                firsts.append(v)
            counts[v] = counts.get(v, 0) + 1
        if firsts != list(range(n)) or any(c != 2 for c in counts.values()):
            raise DuplicateOccurrence(
                "word must use ids 0..n-1, each twice, first occurrences increasing"
            )
        if any(s not in (1, -1) for s in self.signs):
            raise DuplicateOccurrence("signs must be +1 or -1")
        if self.num_faces != self.n + 2:
            raise NonSphere(
                f"face count {self.num_faces} != {self.n + 2}; not a sphere embedding"
            )

    # -- basic structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.signs)

    @cached_property
    def occurrences(self) -> tuple[tuple[int, int], ...]:
        """id -> (first position, second position)."""
        firsts: dict[int, int] = {}
        out: list[Optional[tuple[int, int]]] = [None] * self.n
        for p, v in enumerate(self.word):
            if v in firsts:
                out[v] = (firsts[v], p)
            else:
                firsts[v] = p
        return tuple(out)  # type: ignore[arg-type]

    def out_dart(self, pos: int) -> int:
        return 2 * pos

    def in_dart(self, pos: int) -> int:
        return 2 * ((pos - 1) % len(self.word)) + 1

    def dart_position(self, d: int) -> int:
        """Word position of the vertex a dart is attached to."""
        return d // 2 if d % 2 == 0 else (d // 2 + 1) % len(self.word)

    @cached_property
    def rotation(self) -> tuple[int, ...]:
        """Counterclockwise successor of each dart around its vertex."""
        rot = [0] * (4 * self.n)
        for v, (p, q) in enumerate(self.occurrences):
            ip, op = self.in_dart(p), self.out_dart(p)
            iq, oq = self.in_dart(q), self.out_dart(q)
            cycle = (ip, iq, op, oq) if self.signs[v] > 0 else (ip, oq, op, iq)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                rot[a] = b
        return tuple(rot)

    @cached_property
    def rotation_inverse(self) -> tuple[int, ...]:
        inv = [0] * (4 * self.n)
        for d, e in enumerate(self.rotation):
            inv[e] = d
        return tuple(inv)

    @cached_property
    def next_along(self) -> tuple[int, ...]:
        """Curve successor on darts: traverse the edge, then pass the vertex."""
        size = len(self.word)
        nxt = [0] * (4 * self.n)
        for i in range(size):
            nxt[2 * i] = 2 * i + 1
            nxt[2 * i + 1] = 2 * ((i + 1) % size)
        return tuple(nxt)

    @cached_property
    def num_faces(self) -> int:
        if self.n == 0:
            return 2
        rot = self.rotation
        seen = [False] * (4 * self.n)
        count = 0
        for d0 in range(4 * self.n):
            if seen[d0]:
                continue
            count += 1
            d = d0
            while not seen[d]:
                seen[d] = True
                d = rot[d ^ 1]
        return count

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """Face orbits; the 0-crossing curve has two degree-0 faces by
        convention."""
        if self.n == 0:
            return (Face((), ()), Face((), ()))
        rot = self.rotation
        seen = [False] * (4 * self.n)
        faces = []
        for d0 in range(4 * self.n):
            if seen[d0]:
                continue
            orbit = []
            d = d0
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = rot[d ^ 1]
            faces.append(Face(tuple(orbit), tuple(self.dart_position(d) for d in orbit)))
        faces.sort(key=lambda f: (f.degree, f.darts))
        return tuple(faces)

    def face_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(f.degree for f in self.faces))

    # -- traces and canonical form ------------------------------------------

    def _trace(self, start: int, step: int, mirrored: bool) -> tuple:
        """Signed code read along the curve from `start` in direction `step`
        (+1 or -1), optionally through a reflection.  The identity frame
        (0, +1, False) reproduces (n, word, signs) exactly."""
        size = len(self.word)
        rot = self.rotation_inverse if mirrored else self.rotation
        order: dict[int, int] = {}
        first_in: dict[int, int] = {}
        seq = []
        signs = [0] * self.n
        for t in range(size):
            p = (start + t * step) % size
            v = self.word[p]
            walk_in = self.in_dart(p) if step == 1 else self.out_dart(p)
            if v not in order:
                order[v] = len(order)
                first_in[v] = walk_in
                seq.append(order[v])
            else:
                seq.append(order[v])
                signs[order[v]] = 1 if rot[first_in[v]] == walk_in else -1
        return (self.n, tuple(seq), tuple(signs))

    def _frames(self):
        size = len(self.word)
        for mirrored in (False, True):
            for step in (1, -1):
                for start in range(size):
                    yield start, step, mirrored

    @cached_property
    def _canonical(self) -> tuple[tuple, tuple[int, int, bool]]:
        if self.n == 0:
            return (0,), (0, 1, False)
        best = None
        best_frame = None
        for frame in self._frames():
            t = self._trace(*frame)
            if best is None or t < best:
                best, best_frame = t, frame
        return (best[0],) + best[1] + best[2], best_frame

    @cached_property
    def canonical_key(self) -> tuple:
        """Total-order key; equal exactly for curves related by a sphere
        self-homeomorphism, reflections included."""
        return self._canonical[0]

    def to_signed_gauss_code(self) -> SignedGaussCode:
        """Canonical labelled code (minimum trace, labels in visit order)."""
        if self.n == 0:
            return SignedGaussCode((), {})
        key = self.canonical_key
        word_ids = key[1 : 1 + 2 * self.n]
        signs = key[1 + 2 * self.n :]
        return SignedGaussCode(
            tuple(label_for(v) for v in word_ids),
            {label_for(v): signs[v] for v in range(self.n)},
        )

    def code_text(self) -> str:
        return self.to_signed_gauss_code().to_text()

    def mirror(self) -> "PlanarCurve":
        """Reflection of the sphere: every rotation reverses, every sign flips."""
        return PlanarCurve(self.word, tuple(-s for s in self.signs))

    def reversed(self) -> "PlanarCurve":
        """Same embedded curve traversed backwards.  Reversal swaps each
        crossing's visit order, which flips the stored signs."""
        rev = tuple(reversed(self.word))
        return build_curve(rev, {v: -s for v, s in enumerate(self.signs)})

    # -- isomorphism transport ----------------------------------------------

    def frame_position_map(self, frame: tuple[int, int, bool]) -> dict[int, int]:
        """position-of-self -> position-in-the-frame-reading."""
        start, step, _ = frame
        size = len(self.word)
        return {(start + t * step) % size: t for t in range(size)}

    def find_isomorphism(
        self, other: "PlanarCurve"
    ) -> Optional[tuple[dict[int, int], int, bool]]:
        """A frame of self that reads exactly as `other`, or None.

        Returns (position_map, step, mirrored) with position_map sending
        positions of self to positions of other.
        """
        if self.n != other.n:
            return None
        if self.n == 0:
            return {}, 1, False
        target = (other.n, other.word, other.signs)
        for frame in self._frames():
            if self._trace(*frame) == target:
                return self.frame_position_map(frame), frame[1], frame[2]
        return None


def build_curve(tokens: Sequence[Hashable], signs: Mapping[Hashable, Sign]) -> PlanarCurve:
    """Normalize arbitrary crossing tokens to first-occurrence ids and build."""
    ids: dict[Hashable, int] = {}
    word = []
    for t in tokens:
        if t not in ids:
            ids[t] = len(ids)
        word.append(ids[t])
    missing = [t for t in ids if t not in signs]
    if missing:
        raise DuplicateOccurrence(f"no sign given for {missing[0]!r}")
    sign_list = [0] * len(ids)
    for t, i in ids.items():
        sign_list[i] = signs[t]
    return PlanarCurve(tuple(word), tuple(sign_list))


def from_signed_gauss_code(code: SignedGaussCode) -> PlanarCurve:
    """Realize a signed code; raises if it is not a sphere embedding."""
    counts: dict[str, int] = {}
    for t in code.word:
        counts[t] = counts.get(t, 0) + 1
    bad = [t for t, c in counts.items() if c != 2]
    if bad:
        raise DuplicateOccurrence(f"label {bad[0]!r} occurs {counts[bad[0]]} times, not 2")
    if set(code.signs) != set(counts):
        raise DuplicateOccurrence("signs must cover exactly the labels of the word")
    return build_curve(code.word, code.signs)


TRIVIAL = PlanarCurve((), ())


def from_parts(next_along: Sequence[int], rotation: Sequence[int]) -> PlanarCurve:
    """Build from explicit dart permutations (the curve successor and the
    vertex rotation).  Validates single-circuit, transversality, and the
    sphere condition; dart numbering must follow the edge convention
    (edge i owns darts 2i and 2i+1)."""
    size = len(next_along)
    if len(rotation) != size or size % 4 != 0:
        raise Disconnected("dart count must be 4n with matching permutations")
    if size == 0:
        return TRIVIAL
    n = size // 4
    if sorted(next_along) != list(range(size)) or sorted(rotation) != list(range(size)):
        raise Disconnected("next/rotation must be permutations of the darts")
    for d in range(0, size, 2):
        if next_along[d] != d + 1:
            raise Disconnected("even dart must step to its own edge partner")
    # the walk must be one circuit through all 2n edges
    out_seq = []
    d = 0
    for _ in range(2 * n):
        out_seq.append(d)
        d = next_along[next_along[d]]
        if d % 2 != 0:
            raise Disconnected("vertex passage must land on an out-dart")
    if d != 0 or len(set(out_seq)) != 2 * n:
        raise Disconnected("next-along-curve is not a single circuit")
    # vertices = rotation orbits (must have size 4)
    orbit_of: dict[int, int] = {}
    for d0 in range(size):
        if d0 in orbit_of:
            continue
        orbit = [d0]
        d = rotation[d0]
        while d != d0:
            orbit.append(d)
            d = rotation[d]
            if len(orbit) > 4:
                break
        if len(orbit) != 4:
            raise Disconnected("rotation orbits must have size 4")
        for d in orbit:
            orbit_of[d] = min(orbit)
    tokens = [orbit_of[d] for d in out_seq]
    first_in: dict[int, int] = {}
    signs: dict[int, Sign] = {}
    for idx, out_d in enumerate(out_seq):
        v = orbit_of[out_d]
        in_d = out_seq[idx - 1] ^ 1  # arriving dart of this passage
        if orbit_of[in_d] != v:
            raise Disconnected("rotation orbits disagree with the circuit")
        if v not in first_in:
            first_in[v] = in_d
        else:
            nxt = rotation[first_in[v]]
            if nxt == in_d:
                signs[v] = 1
            elif nxt == (out_d):
                signs[v] = -1
            else:
                raise Disconnected("rotation is not transversal at some vertex")
    curve = build_curve(tokens, signs)
    # the rebuilt rotation must agree with the input under the walk relabeling
    dart_map: dict[int, int] = {}
    for t, out_d in enumerate(out_seq):
        dart_map[out_d] = 2 * t
        dart_map[out_d ^ 1] = 2 * t + 1
    for d in range(size):
        if dart_map[rotation[d]] != curve.rotation[dart_map[d]]:
            raise Disconnected("rotation is not transversal at some vertex")
    return curve


def realize_unsigned(word: Sequence[str], bound: int = 12) -> list[PlanarCurve]:
    """All sphere realizations of an unsigned double-occurrence word, up to
    homeomorphism.  Brute force over the 2^n sign assignments."""
    counts: dict[Hashable, int] = {}
    order = []
    for t in word:
        if t not in counts:
            order.append(t)
        counts[t] = counts.get(t, 0) + 1
    if any(c != 2 for c in counts.values()):
        raise DuplicateOccurrence("not a double-occurrence word")
    n = len(order)
    if n > bound:
        raise BoundExceeded(f"{n} crossings exceeds bound {bound}")
    found: dict[tuple, PlanarCurve] = {}
    for combo in itertools.product((1, -1), repeat=n):
        try:
            curve = build_curve(tuple(word), dict(zip(order, combo)))
        except NonSphere:
            continue
        found.setdefault(curve.canonical_key, curve)
    return [found[k] for k in sorted(found)]


def is_isotopic(a: PlanarCurve, b: PlanarCurve) -> bool:
    """Equivalence under self-homeomorphism of the sphere (with reflection)."""
    return a.canonical_key == b.canonical_key
