"""Exact counting of similar copies of point patterns on the line and in the plane."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .exact import (  # noqa: F401
    Direction,
    Point2,
    QSqrt3,
    dir_cmp,
    format_qs3,
    format_rat,
    is_equilateral,
    parse_qs3,
    rat,
    third_vertices,
)
from .line import (  # noqa: F401
    LinePattern,
    LinePointSet,
    OrderlyDecomposition,
    classify_optimal,
    construction_mary,
    count_instances,
    count_kap,
    echelons,
    francis_check,
    gen_ap,
    gen_eo,
    gen_oliver,
    general_upper_bound,
    hannah_property,
    is_optimal,
    jacob_bounds,
    minus_one_property,
    normalize_pattern,
    orderly_decomposition,
    residue_table,
    sap_max,
)
from .plane import (  # noqa: F401
    PlanePointSet,
    abrego_bound,
    admits_reconstruction,
    choose_rotation,
    compartments,
    count_equilateral,
    count_equilateral_methods,
    find_concurrent_direction,
    gen_triangular_disk,
    halving_line,
    hexagon_with_center,
    katherine_bound,
    katherine_report,
    terence_bound,
)
from .search import SearchSpec, SearchResult, brute_count, brute_count_equilateral  # noqa: F401
