from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from patterncount.exact import Point2, QSqrt3

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(max_num=50, max_den=12):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def qs3_values(draw, max_num=30, max_den=6):
    return QSqrt3(draw(rationals(max_num, max_den)), draw(rationals(max_num, max_den)))


@st.composite
def points(draw, max_num=12, max_den=4):
    return Point2(draw(qs3_values(max_num, max_den)), draw(qs3_values(max_num, max_den)))


@st.composite
def lattice_sets(draw, min_size=0, max_size=15, radius=4):
    from patterncount.plane import PlanePointSet, lattice_point

    coords = draw(st.sets(
        st.tuples(st.integers(-radius, radius), st.integers(-radius, radius)),
        min_size=min_size, max_size=max_size,
    ))
    return PlanePointSet.of(lattice_point(a, b) for a, b in coords)


@st.composite
def plane_sets(draw, min_size=0, max_size=12):
    from patterncount.plane import PlanePointSet

    pts = draw(st.sets(points(6, 2), min_size=min_size, max_size=max_size))
    return PlanePointSet.of(pts)


def int_sets(min_size=0, max_size=14, hi=30):
    return st.sets(st.integers(-hi, hi), min_size=min_size, max_size=max_size)
