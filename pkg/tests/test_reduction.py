import itertools

from knotproj.curves import TRIVIAL, is_isotopic
from knotproj.moves import B_KINDS, MoveKind, is_lune_free
from knotproj.reduction import (
    equivalent_1,
    equivalent_2,
    equivalent_12,
    reduce_1,
    reduce_2,
    reduce_12,
)

from conftest import curve_of
from oracles import bounded_component, curves_up_to, reduction_terminals


def test_circle_reduces_to_itself():
    trace = reduce_12(TRIVIAL)
    assert trace.steps == ()
    assert trace.result == TRIVIAL


def test_trefoil_fully_reduces_to_circle(trefoil):
    trace = reduce_12(trefoil)
    assert trace.result == TRIVIAL
    assert len(trace.steps) == 2  # one lune, then the leftover kink


def test_trefoil_is_kink_reduced(trefoil):
    trace = reduce_1(trefoil)
    assert trace.steps == ()
    assert trace.result == trefoil


def test_kink_chain_reduces():
    assert reduce_1(curve_of("a+ a+")).result == TRIVIAL
    assert reduce_1(curve_of("a+ a+ b+ b+")).result == TRIVIAL
    assert reduce_1(curve_of("a+ b+ b+ a+")).result == TRIVIAL


def test_lune_reduction_of_two_kink_curve():
    two_kinks = curve_of("a- a- b- b-")
    trace = reduce_2(two_kinks)
    assert len(trace.steps) == 1
    assert trace.result == TRIVIAL


def test_figure_eight_is_lune_reduced():
    # its only degree-2 face has both corners on the same crossing, which
    # no lune move can remove
    kink = curve_of("a+ a+")
    assert reduce_2(kink).result == kink


def test_nested_kinks_are_lune_reduced():
    nested = curve_of("a+ b+ b+ a+")
    assert reduce_2(nested).result == nested
    assert reduce_1(nested).result == TRIVIAL


def test_reduction_is_a_fixed_point():
    for c in curves_up_to(5):
        r = reduce_12(c).result
        assert reduce_12(r).steps == ()
        assert is_lune_free(r)


def test_weave_is_reduced(weave):
    assert reduce_12(weave).result == weave


def test_confluence_small():
    # all maximal removal strategies reach one isotopy class
    memo = {}
    for c in curves_up_to(5):
        assert len(reduction_terminals(c, B_KINDS, memo)) == 1


def test_kink_only_and_lune_only_confluence():
    memo1, memo2 = {}, {}
    for c in curves_up_to(5):
        terms1 = reduction_terminals(c, frozenset({MoveKind.DEL1}), memo1)
        terms2 = reduction_terminals(c, frozenset({MoveKind.DEL2}), memo2)
        assert terms1 == {reduce_1(c).result.canonical_key}
        assert terms2 == {reduce_2(c).result.canonical_key}


def test_equivalences_are_reflexive():
    for c in curves_up_to(4):
        assert equivalent_12(c, c)
        assert equivalent_1(c, c)
        assert equivalent_2(c, c)


def test_trefoil_equivalent_to_circle(trefoil):
    assert equivalent_12(trefoil, TRIVIAL)
    assert not equivalent_1(trefoil, TRIVIAL)


def test_lune_free_curves_inequivalent(weave):
    assert not equivalent_12(weave, TRIVIAL)


def test_equivalences_agree_with_bounded_search_small():
    # spot check at 3 crossings; the full sweep runs in the acceptance suite
    pool = curves_up_to(3)
    kinds = {
        "12": frozenset(
            {MoveKind.ADD1, MoveKind.DEL1, MoveKind.ADD2, MoveKind.DEL2}
        ),
        "1": frozenset({MoveKind.ADD1, MoveKind.DEL1}),
        "2": frozenset({MoveKind.ADD2, MoveKind.DEL2}),
    }
    deciders = {"12": equivalent_12, "1": equivalent_1, "2": equivalent_2}
    for mode in ("12", "1", "2"):
        components: dict[int, set] = {}
        for a, b in itertools.combinations(pool, 2):
            bound = max(a.n, b.n) + 2
            if bound not in components:
                components[bound] = {}
            comp = components[bound]
            if a.canonical_key not in comp:
                comp[a.canonical_key] = bounded_component(a, kinds[mode], bound)
            reachable = b.canonical_key in comp[a.canonical_key]
            assert deciders[mode](a, b) == reachable, (mode, a, b)
