import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
import hypothesis.strategies as st

from patterncount.errors import BadArity, DuplicatePoint, Incommensurable, InfeasibleParameters
from patterncount.exact import QSqrt3
from patterncount.line import (
    LinePointSet,
    OrderlyDecomposition,
    balanced_sizes,
    classify_optimal,
    construction_mary,
    count_instances,
    count_kap,
    echelons,
    enveloping_length,
    francis_check,
    gen_ap,
    gen_eo,
    gen_oliver,
    general_upper_bound,
    is_optimal,
    jacob_bounds,
    normalize_pattern,
    orderly_decomposition,
    residue_table,
    sap_max,
)
from patterncount.search import brute_count

from conftest import int_sets, rationals


def naive_kap(V, k):
    return sum(
        1
        for s in itertools.combinations(sorted(V), k)
        if len({b - a for a, b in zip(s, s[1:])}) == 1
    )


def test_count_examples():
    assert count_kap(LinePointSet.of(range(5)), 3) == 4
    assert count_kap(LinePointSet.of([0, 1, 3]), 3) == 0
    assert count_kap(LinePointSet.of([]), 3) == 0
    assert count_kap(LinePointSet.of([7]), 2) == 0
    with pytest.raises(BadArity):
        count_kap(LinePointSet.of([0, 1]), 1)


def test_duplicates_rejected():
    with pytest.raises(DuplicatePoint):
        LinePointSet.of([0, 1, Fraction(2, 2)])


@given(int_sets(max_size=12), st.integers(2, 5))
def test_count_kap_matches_naive(V, k):
    assert count_kap(LinePointSet.of(V), k) == naive_kap(V, k)


@given(int_sets(max_size=10))
def test_pairs_are_two_term_progressions(V):
    n = len(V)
    assert count_kap(LinePointSet.of(V), 2) == n * (n - 1) // 2


@given(int_sets(max_size=12), st.integers(2, 5), rationals(), rationals())
def test_count_kap_similarity_invariant(V, k, a, b):
    assume(a != 0)
    S = LinePointSet.of(V)
    assert count_kap(S.affine(a, b), k) == count_kap(S, k)


def test_big_integers_use_exact_path():
    V = LinePointSet.of([x * 10**30 + 1 for x in range(12)])
    assert count_kap(V, 3) == sap_max(12, 3)


@pytest.mark.parametrize("n,k,value", [(7, 3, 9), (4, 3, 2), (5, 5, 1), (9, 4, 9), (96, 4, 1488), (96, 3, 2256)])
def test_formula_values(n, k, value):
    assert sap_max(n, k) == value
    assert general_upper_bound(n, k) == value


def test_formula_tight_on_progressions():
    for k in range(2, 9):
        for n in range(k, 80):
            assert count_kap(gen_ap(n), k) == sap_max(n, k)


def test_normalize_pattern():
    assert normalize_pattern([5, 7, 11]).points == (0, 1, 3)
    assert normalize_pattern([0, 1, 3]).points == (0, 1, 3)
    two = normalize_pattern([QSqrt3(0), QSqrt3(0, 2)])
    assert two.commensurable and two.points == (0, 1)
    odd = normalize_pattern([QSqrt3(0), QSqrt3(1), QSqrt3(0, 1)])
    assert not odd.commensurable
    with pytest.raises(Incommensurable):
        enveloping_length(odd)


@pytest.mark.parametrize("P,ell", [((0, 1, 3), 4), ((0, 1, 2, 3, 4), 5), ((0, 2, 6), 4)])
def test_enveloping_length(P, ell):
    assert enveloping_length(P) == ell


def test_instance_examples():
    assert count_instances(LinePointSet.of([0, 1, 3, 4]), (0, 1, 3)) == 1
    assert count_instances(LinePointSet.of([0, 1, 3, 4]), (0, 1, 3), allow_reflection=True) == 2
    assert count_instances(construction_mary(1), (0, 1, 3)) == 1680


@given(int_sets(max_size=11), st.lists(st.integers(0, 9), min_size=2, max_size=4, unique=True), st.booleans())
def test_instances_match_brute_force(V, P, refl):
    S = LinePointSet.of(V)
    assert count_instances(S, P, refl) == brute_count(S, P, refl)


@given(int_sets(max_size=12), st.integers(2, 5), st.booleans())
def test_progression_pattern_ignores_reflection(V, k, refl):
    S = LinePointSet.of(V)
    assert count_instances(S, range(k), refl) == count_kap(S, k)


def test_sandwich_bounds_examples():
    assert jacob_bounds(96, (0, 1, 3)) == (1488, 2256)
    assert jacob_bounds(20, (0, 1, 2)) == (sap_max(20, 3), sap_max(20, 3))


@given(int_sets(min_size=3, max_size=12))
def test_sandwich_upper_bound_holds(V):
    S = LinePointSet.of(V)
    assert count_instances(S, (0, 1, 3)) <= jacob_bounds(len(S), (0, 1, 3))[1]


def test_sandwich_lower_met_on_envelope():
    for n in range(4, 40):
        lo, _ = jacob_bounds(n, (0, 1, 3))
        assert count_instances(gen_ap(n), (0, 1, 3)) >= lo


def test_decomposition_examples():
    assert orderly_decomposition(LinePointSet.of(range(6)), 5).block_sizes == (2, 1, 1, 1, 1)
    assert orderly_decomposition(LinePointSet.of(range(6)), 2).block_sizes == (3, 3)
    assert orderly_decomposition(LinePointSet.of(range(7)), 2).block_sizes == (4, 3)
    assert sorted(balanced_sizes(5, 3)) == [(1, 2, 2), (2, 1, 2), (2, 2, 1)]


def test_echelon_examples():
    D = OrderlyDecomposition((0, 1, 2, 2, 1))
    assert echelons((0, 1, 2, 3, 4, 5), D) == {4}
    D = orderly_decomposition(LinePointSet.of(range(4)), 3, sizes=(2, 1, 1))
    assert echelons((0, 1, 2, 3), D) == {1}
    D = orderly_decomposition(LinePointSet.of(range(3)), 1)
    assert echelons((0, 2), D) == {1}


@given(st.integers(3, 12), st.integers(2, 5), st.data())
def test_echelons_never_empty(n, k, data):
    assume(k <= n)
    sizes = data.draw(st.sampled_from(balanced_sizes(n, k - 1)))
    D = orderly_decomposition(LinePointSet.of(range(n)), k - 1, sizes)
    P = data.draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))
    assert echelons(sorted(P), D)


def test_reconstruction_criterion_examples():
    assert francis_check(LinePointSet.of(range(7)), 3).optimal
    assert francis_check(LinePointSet.of([-4, -2, -1, 0, 1, 2, 4]), 3).optimal
    # (0,1,2) and (0,2,4): two progressions, so this one is optimal
    assert francis_check(LinePointSet.of([0, 1, 2, 4]), 3).optimal
    res = francis_check(LinePointSet.of([0, 1, 2, 5]), 3)
    assert not res.optimal and res.violations


@given(int_sets(min_size=3, max_size=9, hi=12), st.integers(3, 4), st.data())
def test_reconstruction_criterion_matches_counting(V, k, data):
    S = LinePointSet.of(V)
    assume(len(S) >= k)
    sizes = data.draw(st.sampled_from(balanced_sizes(len(S), k - 1)))
    assert francis_check(S, k, sizes).optimal == (count_kap(S, k) == sap_max(len(S), k))


def test_classification_examples():
    c = classify_optimal(LinePointSet.of([-4, -2, -1, 0, 1, 2, 4]), 3)
    assert str(c) == "EO(5,2,concentric)" and c.optimal
    assert classify_optimal(gen_oliver(9, 4, "dropSecond"), 4).label == "AP-minus-second"
    assert classify_optimal(gen_oliver(9, 4, "dropPenultimate"), 4).label == "AP-minus-penultimate"
    assert classify_optimal(LinePointSet.of([0] + list(range(2, 11))), 4).label == "NotOptimal"
    mirrored = classify_optimal(LinePointSet.of([-1, 0, 1, 3, 5]), 3)
    assert mirrored.label in ("EO", "NotOptimal")


def test_generators():
    assert gen_eo(7, 5).points == (-4, -2, -1, 0, 1, 2, 4)
    assert gen_oliver(9, 4, "dropSecond").points == (0, 2, 3, 4, 5, 6, 7, 8, 9)
    assert gen_ap(5, 0, 1).points == (0, 1, 2, 3, 4)
    with pytest.raises(InfeasibleParameters):
        gen_oliver(10, 4, "dropSecond")
    with pytest.raises(InfeasibleParameters):
        gen_eo(5, 0)


@pytest.mark.parametrize("n", range(2, 30))
def test_eo_family_optimal_and_centered(n):
    for e in range(1, n):
        V = gen_eo(n, e)
        assert is_optimal(V, 3)
        c = classify_optimal(V, 3) if n >= 3 else None
        if c is not None and c.label == "EO":
            assert c.centering == ("concentric" if n % 2 else "nearly-concentric")


@given(int_sets(min_size=3, max_size=9, hi=15))
def test_classification_agrees_with_counting(V):
    S = LinePointSet.of(V)
    c = classify_optimal(S, 3)
    assert c.optimal == is_optimal(S, 3)
    if c.optimal:
        assert c.label in ("AP", "EO")


def test_96k_construction():
    for k in (1, 2):
        V = construction_mary(k)
        assert len(V) == 96 * k
        table = residue_table(k)
        assert len(table) == 14
        assert sum(table.values()) == 1728 * k * k - 48 * k
    t = residue_table(1)
    assert t[(0, 0, 0)] == 51 and t[(3, 3, 3)] == 442


def test_96k_construction_reflection_diagnostic():
    V = construction_mary(1)
    both = count_instances(V, (0, 1, 3), allow_reflection=True)
    mirror = count_instances(V, (0, 2, 3))
    assert both == 1680 + mirror
