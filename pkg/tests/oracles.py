"""Independent oracles for the test suite: exhaustive small-case
enumeration, brute-force map isomorphism, bounded move-graph search, and
exhaustive reduction strategies.  These deliberately avoid the library's
decision procedures so the two sides check each other."""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache

from knotproj.curves import PlanarCurve, build_curve
from knotproj.errors import NonSphere
from knotproj.moves import MoveKind, apply, find_sites


def normalized_words(n: int) -> list[tuple[int, ...]]:
    """Double-occurrence words over 0..n-1 with first occurrences in
    increasing order (one representative per relabeling class)."""
    words: list[tuple[int, ...]] = []

    def rec(word: list[int], counts: list[int], next_new: int):
        if len(word) == 2 * n:
            words.append(tuple(word))
            return
        for v in range(min(next_new + 1, n)):
            if v == next_new and counts[v] == 0:
                word.append(v)
                counts[v] += 1
                rec(word, counts, next_new + 1)
                counts[v] -= 1
                word.pop()
            elif v < next_new and counts[v] == 1:
                word.append(v)
                counts[v] += 1
                rec(word, counts, next_new)
                counts[v] -= 1
                word.pop()

    rec([], [0] * n, 0)
    return words


def _gauss_parity_ok(word: tuple[int, ...]) -> bool:
    # a realizable chord must interleave an even number of chords
    occ: dict[int, list[int]] = {}
    for p, v in enumerate(word):
        occ.setdefault(v, []).append(p)
    for a, b in occ.values():
        odd = sum(1 for c, d in occ.values() if (a < c < b) != (a < d < b))
        if odd % 2:
            return False
    return True


@lru_cache(maxsize=None)
def curves_with(n: int) -> tuple[PlanarCurve, ...]:
    """Every spherical curve with exactly n crossings, one per isotopy
    class, by brute force over words and signs."""
    found: dict[tuple, PlanarCurve] = {}
    for word in normalized_words(n):
        if not _gauss_parity_ok(word):
            continue
        for combo in itertools.product((1, -1), repeat=n):
            try:
                curve = PlanarCurve(word, combo)
            except NonSphere:
                continue
            found.setdefault(curve.canonical_key, curve)
    return tuple(found[k] for k in sorted(found))


def curves_up_to(n: int) -> list[PlanarCurve]:
    return [c for k in range(n + 1) for c in curves_with(k)]


def brute_force_isomorphic(a: PlanarCurve, b: PlanarCurve) -> bool:
    """Dart-bijection search: seed dart 0 of `a` onto every dart of `b`,
    propagate along the curve and the rotation (or its inverse, for a
    reflection), and accept when the bijection closes up."""
    if a.n != b.n:
        return False
    if a.n == 0:
        return True
    size = 4 * a.n
    for seed in range(size):
        for mirror in (False, True):
            rot_b = b.rotation_inverse if mirror else b.rotation
            for reverse in (False, True):
                image = [-1] * size
                image[0] = seed
                stack = [0]
                ok = True
                while stack and ok:
                    d = stack.pop()
                    pairs = [(a.rotation[d], rot_b[image[d]])]
                    nd = a.next_along[d]
                    if reverse:
                        # reversed traversal of b: follow its inverse
                        nb = b.next_along.index(image[d])
                    else:
                        nb = b.next_along[image[d]]
                    pairs.append((nd, nb))
                    for da, db in pairs:
                        if image[da] == -1:
                            image[da] = db
                            stack.append(da)
                        elif image[da] != db:
                            ok = False
                            break
                if ok and sorted(image) == list(range(size)):
                    return True
    return False


def bounded_component(
    start: PlanarCurve, kinds: frozenset[MoveKind], bound: int
) -> set[tuple]:
    """Canonical keys of every curve reachable from `start` by the given
    moves while never exceeding `bound` crossings."""
    if start.n > bound:
        return set()
    seen = {start.canonical_key}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for site in find_sites(cur, kinds):
            nxt = apply(cur, site)
            if nxt.n > bound:
                continue
            key = nxt.canonical_key
            if key not in seen:
                seen.add(key)
                queue.append(nxt)
    return seen


def reduction_terminals(
    curve: PlanarCurve, kinds: frozenset[MoveKind], memo: dict | None = None
) -> set[tuple]:
    """Canonical keys of every curve reachable by maximal removal
    sequences, branching over all site choices at every step."""
    if memo is None:
        memo = {}
    key = curve.canonical_key
    if key in memo:
        return memo[key]
    sites = find_sites(curve, kinds)
    if not sites:
        memo[key] = {key}
        return memo[key]
    out: set[tuple] = set()
    for site in sites:
        out |= reduction_terminals(apply(curve, site), kinds, memo)
    memo[key] = out
    return out
