import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
import hypothesis.strategies as st

from patterncount.errors import DuplicatePoint, NotOrdered
from patterncount.exact import (
    DIR_I,
    LT,
    ZETA6,
    Direction,
    Point2,
    QSqrt3,
    lex_cmp,
)
from patterncount.plane import (
    PlanePointSet,
    _binom2,
    abrego_bound,
    admits_reconstruction,
    arg_in_reconstruction_set,
    choose_rotation,
    compartments,
    count_equilateral,
    count_equilateral_methods,
    find_concurrent_direction,
    gen_triangular_disk,
    halving_line,
    helen_decomposition,
    helen_minimum,
    hexagon_with_center,
    katherine_bound,
    katherine_closed_form,
    katherine_report,
    lattice_point,
    peter_value,
    reconstruct_first,
    reconstruct_last,
    terence_bound,
    zeta_median,
)
from patterncount.search import brute_count_equilateral

from conftest import lattice_sets, plane_sets, points, rationals

S3 = QSqrt3(0, 1)


def test_reconstruction_examples():
    u, i = Point2(0), Point2(0, 1)
    assert reconstruct_first(u, i) == Point2(S3 / 2, Fraction(1, 2))
    assert reconstruct_last(u, i) == Point2(-S3 / 2, Fraction(1, 2))
    assert reconstruct_first(u, Point2(1)) is None
    assert reconstruct_last(u, Point2(1)) is None
    assert reconstruct_first(u, Point2(S3, 1)) is None
    with pytest.raises(NotOrdered):
        reconstruct_first(Point2(1), Point2(0))


@given(points(), points())
def test_first_and_last_agree_with_arg_set(u, v):
    assume(u != v)
    if lex_cmp(v, u) == LT:
        u, v = v, u
    first, last = reconstruct_first(u, v), reconstruct_last(u, v)
    assert (first is None) == (last is None)
    z = complex(v) - complex(u)
    a = math.atan2(z.imag, z.real)
    if min(abs(a - k * math.pi / 6) for k in (-5, -1, 1, 5)) > 1e-12:
        assert (first is not None) == arg_in_reconstruction_set(z)


@pytest.mark.parametrize("d,inside", [
    (Point2(S3, 1), False),
    (Point2(-S3, 1), True),
    (Point2(S3, -1), True),
    (Point2(-S3, -1), False),
    (Point2(0, 1), True),
    (Point2(1, 0), False),
])
def test_arg_set_boundaries(d, inside):
    assert admits_reconstruction(Point2(0), d) == inside
    assert admits_reconstruction(d, Point2(0)) == inside


def test_count_examples():
    assert count_equilateral(PlanePointSet.of([Point2(0), Point2(1), ZETA6])) == 1
    assert count_equilateral(hexagon_with_center()) == 8
    assert count_equilateral(PlanePointSet.of([Point2(0), Point2(1), ZETA6, ZETA6 + Point2(1)])) == 2
    assert count_equilateral(PlanePointSet.of([])) == 0


def test_duplicates_rejected():
    with pytest.raises(DuplicatePoint):
        PlanePointSet.of([Point2(1, 2), Point2(Fraction(2, 2), 2)])


@given(lattice_sets())
def test_routes_match_brute_force_on_lattice_sets(V):
    a, b = count_equilateral_methods(V)
    assert a == b == brute_count_equilateral(V)


@given(plane_sets())
def test_routes_match_brute_force_on_field_sets(V):
    a, b = count_equilateral_methods(V)
    assert a == b == brute_count_equilateral(V)


@given(lattice_sets(max_size=12), st.integers(0, 5), points())
def test_rotation_and_translation_invariance(V, j, t):
    rot = Point2(1)
    for _ in range(j):
        rot = rot * ZETA6
    assert count_equilateral(V.transformed(rot, t)) == count_equilateral(V)


def test_thread_count_does_not_change_counts():
    V = gen_triangular_disk(400)
    assert count_equilateral_methods(V, 1) == count_equilateral_methods(V, 4)


@pytest.mark.parametrize("n,value", [(7, 9), (2, 0), (1000, 221944), (4, 2)])
def test_upper_bound_values(n, value):
    assert katherine_bound(n) == value


def test_prior_bound_and_ordering():
    assert abrego_bound(7) == 9
    assert all(katherine_bound(n) <= abrego_bound(n) for n in range(2, 2000))


def _min_spread(total, parts=6):
    # brute force over compositions for the smallest pair sum
    best = None

    def rec(left, k, acc):
        nonlocal best
        if k == 1:
            v = acc + _binom2(left)
            best = v if best is None else min(best, v)
            return
        for x in range(left + 1):
            rec(left - x, k - 1, acc + _binom2(x))

    rec(total, parts, 0)
    return best


@pytest.mark.parametrize("n", range(1, 26))
def test_compartment_minimum_is_the_true_minimum(n):
    assert helen_minimum(n) == _min_spread(n - 1)


def test_closed_form_algebra():
    for n in range(1, 400):
        q, r, s = helen_decomposition(n)
        assert n - 1 == 6 * q + 2 * r + s
        assert peter_value(n) == _binom2((n + 1) // 2) + _binom2(n // 2)
        cf = katherine_closed_form(n)
        assert cf == peter_value(n) - Fraction(helen_minimum(n), 3)
        assert cf == Fraction(8 * q * (3 * q + 2 * r + s) + 3 * q + 3 * r * (r + s), 3)
        assert cf <= Fraction((4 * n - 1) * (n - 1), 18)
        assert math.floor(cf) <= katherine_bound(n)
        if n % 6 == 1:
            assert cf == Fraction((4 * n - 1) * (n - 1), 18)


def test_median_examples():
    V = PlanePointSet.of([Point2(0), Point2(1)])
    assert zeta_median(V, DIR_I) == Point2(Fraction(1, 2))
    W = PlanePointSet.of([Point2(0), Point2(2, 1), Point2(1, 5)])
    assert zeta_median(W, DIR_I) == Point2(1, 5)


def exact_direction(t):
    return Direction.from_exact(Point2((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))


@given(plane_sets(min_size=1, max_size=14), rationals(30, 30))
def test_halving_counts_exact(V, t):
    zeta = exact_direction(t)
    cert = halving_line(V, zeta)
    n = len(V)
    assert (cert.left_count, cert.right_count) == ((n + 1) // 2, n // 2)
    assert zeta_median(V, zeta) == zeta_median(V, -zeta)


def test_single_point_concurrency():
    V = PlanePointSet.of([Point2(3, 4)])
    res = find_concurrent_direction(V)
    assert res.residual == 0
    assert sum(compartments(V, res).sizes) == 1


def test_symmetric_set_meets_at_center():
    c = Point2(Fraction(5, 3), QSqrt3(1, 1))
    pts = []
    for z in (Point2(2, 1), Point2(1, 3), Point2(-3, 1)):
        for _ in range(3):
            pts.append(z + c)
            z = z * ZETA6 * ZETA6
    V = PlanePointSet.of(pts)
    res = find_concurrent_direction(V)
    assert res.residual < 1e-9
    assert abs(res.intersection - complex(c)) < 1e-9


@given(plane_sets(min_size=1, max_size=30))
def test_concurrency_certificates(V):
    res = find_concurrent_direction(V)
    n = len(V)
    assert res.residual < 1e-9
    assert all(c.left_count == (n + 1) // 2 for c in res.certificates)
    prof = compartments(V, res)
    assert sum(prof.sizes) == n and prof.sizes[6] <= 1


def test_collinear_input():
    V = PlanePointSet.of([Point2(x, 2 * x) for x in range(9)])
    rep = katherine_report(V)
    assert rep.count == 0 and rep.chain_holds()


@given(st.one_of(plane_sets(min_size=2, max_size=25), lattice_sets(min_size=2, max_size=25)))
def test_bound_chain(V):
    rep = katherine_report(V)
    assert rep.chain_holds()
    prof = rep.profile
    assert 3 * prof.intracompartmental_outside_a >= prof.intracompartmental_pairs()
    assert rep.best_rotation_bound <= rep.deducted


def test_rotation_choice_covers_every_pair_once():
    V = gen_triangular_disk(60)
    prof = choose_rotation(V, compartments(V, find_concurrent_direction(V)))
    assert sum(prof.outside_a_by_rotation) == prof.intracompartmental_pairs()
    assert terence_bound(V, prof) <= katherine_bound(60)


def test_lattice_disk():
    assert count_equilateral(gen_triangular_disk(3)) == 1
    assert count_equilateral(gen_triangular_disk(7)) == 8
    assert gen_triangular_disk(7).points == hexagon_with_center().points
    V = gen_triangular_disk(37)
    assert len(V) == 37 and all(p.norm2() <= 9 for p in V)
    assert lattice_point(0, 1) == ZETA6
