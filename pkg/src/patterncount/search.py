"""Brute-force oracles and small exhaustive searches.

The oracles here deliberately avoid the reconstruction-based counters of
:mod:`patterncount.line` and :mod:`patterncount.plane`: they enumerate all
k-subsets and test similarity or equal side lengths directly.

Line searches run over n-subsets of ``{0..D}`` that contain 0, have
coprime gaps and (when the counted pattern is reflection symmetric) are
lexicographically no larger than their mirror image.  Every rational set is
similar to such an integer set, so only the diameter cap ``D`` limits the
search; ``exhaustive`` is reported accordingly.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import TooLarge
from .line import (
    LinePattern,
    LinePointSet,
    _scaled_integers,
    count_instances,
    count_kap,
    is_reflection_symmetric,
    normalize_pattern,
    reflect_pattern,
    sap_max,
)
from .plane import (
    PlanePointSet,
    _Encoded,
    count_equilateral,
    gen_triangular_disk,
    katherine_bound,
    lattice_point,
)

DEFAULT_BUDGET = 5_000_000


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PATTERNCOUNT_JOBS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# oracles


def brute_count(V, P, allow_reflection: bool = False, budget: int = DEFAULT_BUDGET) -> int:
    """Count k-subsets of a line set directly similar to ``P`` by full enumeration."""
    V = V if isinstance(V, LinePointSet) else LinePointSet.of(V)
    pat = [Fraction(p) for p in sorted(P.points if isinstance(P, LinePattern) else P)]
    k = len(pat)
    n = len(V)
    if math.comb(n, k) > budget:
        raise TooLarge(f"C({n},{k}) subsets exceed the budget of {budget}")
    xs = _scaled_integers(V.points)
    shapes = [[p - pat[0] for p in pat]]
    if allow_reflection:
        shapes.append(sorted(pat[-1] - p for p in pat))
    total = 0
    for sub in itertools.combinations(xs, k):
        d1 = sub[1] - sub[0]
        for shape in shapes:
            if all((sub[m] - sub[0]) * shape[1] == shape[m] * d1 for m in range(2, k)):
                total += 1
                break
    return total


def brute_count_equilateral(V, budget: int = 50_000_000) -> int:
    """Count 3-subsets with three equal squared side lengths, compared exactly."""
    V = V if isinstance(V, PlanePointSet) else PlanePointSet.of(V)
    n = len(V)
    if math.comb(n, 3) > budget:
        raise TooLarge(f"C({n},3) triples exceed the budget of {budget}")
    if n < 3:
        return 0
    enc = _Encoded.of(V.points)
    # squared distance * L^2 = r + s*sqrt(3) with integers r, s
    c = enc.coords
    if enc.small() and n > 40:
        A = np.asarray(c, dtype=np.int64)
        dx0 = A[:, None, 0] - A[None, :, 0]
        dx1 = A[:, None, 1] - A[None, :, 1]
        dy0 = A[:, None, 2] - A[None, :, 2]
        dy1 = A[:, None, 3] - A[None, :, 3]
        R = dx0 * dx0 + 3 * dx1 * dx1 + dy0 * dy0 + 3 * dy1 * dy1
        S = 2 * (dx0 * dx1 + dy0 * dy1)
        total = 0
        for i in range(n):
            same = (R[i][:, None] == R[i][None, :]) & (S[i][:, None] == S[i][None, :])
            same &= (R == R[i][:, None]) & (S == S[i][:, None])
            same &= R[i][:, None] > 0
            total += int(np.triu(same, 1)[i + 1 :, i + 1 :].sum())
        return total
    d2 = {}
    for i in range(n):
        for j in range(i + 1, n):
            dx0, dx1 = c[i][0] - c[j][0], c[i][1] - c[j][1]
            dy0, dy1 = c[i][2] - c[j][2], c[i][3] - c[j][3]
            d2[i, j] = (dx0 * dx0 + 3 * dx1 * dx1 + dy0 * dy0 + 3 * dy1 * dy1, 2 * (dx0 * dx1 + dy0 * dy1))
    total = 0
    for i, j, k in itertools.combinations(range(n), 3):
        a = d2[i, j]
        if a == d2[j, k] and a == d2[i, k]:
            total += 1
    return total


# ---------------------------------------------------------------------------
# specs and results


MODES = ("lineMaxAP", "lineMaxPattern", "lineEnumerateOptimal", "planeLatticeMax")


@dataclass(frozen=True)
class SearchSpec:
    mode: str
    n: int
    k: int | None = None
    pattern: tuple | None = None
    diameter: int = 0
    radius: int = 2
    jobs: int = 1
    budget: int = DEFAULT_BUDGET
    allow_reflection: bool = False
    max_witnesses: int = 1000

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.mode.startswith("line") and self.diameter < self.n - 1:
            raise ValueError("diameter must be at least n - 1 for line searches")


@dataclass
class SearchResult:
    maximum: int
    witnesses: list = field(default_factory=list)
    states_explored: int = 0
    exhaustive: bool = False
    formula: int | None = None
    notes: str = ""


def canonical_line(points: Sequence[int]) -> tuple[int, ...]:
    """Translate min to 0, divide by the gap gcd, take the smaller of set and mirror."""
    pts = sorted(int(p) for p in points)
    base = [p - pts[0] for p in pts]
    g = 0
    for p in base:
        g = math.gcd(g, p)
    g = g or 1
    base = tuple(p // g for p in base)
    mirror = tuple(sorted(base[-1] - p for p in base))
    return min(base, mirror)


# ---------------------------------------------------------------------------
# line search


def _count_mask(mask: int, top: int, offsets: Sequence[int]) -> int:
    """Copies ``{x + a*o}`` (a >= 1) of an integer pattern with offsets ``o`` inside ``mask``."""
    span = offsets[-1]
    total = 0
    for a in range(1, top // span + 1):
        m = mask
        for o in offsets[1:]:
            m &= mask >> (a * o)
            if not m:
                break
        total += m.bit_count()
    return total


def _line_counter(spec: SearchSpec):
    """Return (offset tuples to count, whether mirror images may be identified)."""
    if spec.mode == "lineMaxPattern":
        P = normalize_pattern(spec.pattern)
        shapes = [tuple(P.points)]
        symmetric = is_reflection_symmetric(P)
        if spec.allow_reflection and not symmetric:
            shapes.append(tuple(reflect_pattern(P).points))
        return shapes, symmetric or spec.allow_reflection
    return [tuple(range(spec.k))], True


def _search_prefix(args):
    spec, second, budget = args
    shapes, mirror_ok = _line_counter(spec)
    n, D = spec.n, spec.diameter
    best, wit, states = -1, [], 0
    complete = True
    rest_range = range(second + 1, D + 1)
    for rest in itertools.combinations(rest_range, n - 2):
        if states >= budget:
            complete = False
            break
        pts = (0, second) + rest
        g = second
        for x in rest:
            g = math.gcd(g, x)
        if g != 1:
            continue
        top = pts[-1]
        if mirror_ok:
            mirror = tuple(sorted(top - x for x in pts))
            if mirror < pts:
                continue
        states += 1
        mask = 0
        for x in pts:
            mask |= 1 << x
        c = sum(_count_mask(mask, top, s) for s in shapes)
        if c > best:
            best, wit = c, [pts]
        elif c == best and len(wit) < spec.max_witnesses:
            wit.append(pts)
    return best, wit, states, complete


def _small_line_case(spec: SearchSpec) -> SearchResult | None:
    n = spec.n
    if n >= 2:
        return None
    pts = tuple(range(n))
    return SearchResult(0, [pts], 1, True)


def line_max_search(spec: SearchSpec) -> SearchResult:
    """Maximise the pattern count over canonical n-subsets of ``{0..D}``."""
    small = _small_line_case(spec)
    if small is not None:
        return small
    jobs = max(1, spec.jobs)
    per = max(1, spec.budget)
    tasks = [(spec, second, per) for second in range(1, spec.diameter - spec.n + 3)]
    if spec.n == 2:
        tasks = [(spec, 1, per)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_search_prefix, tasks))
    else:
        parts = [_search_prefix(t) for t in tasks]
    best, wit, states, complete = -1, [], 0, True
    for b, w, s, c in parts:
        states += s
        complete &= c
        if b > best:
            best, wit = b, list(w)
        elif b == best:
            wit.extend(w)
    if states > spec.budget:
        complete = False
    wit = sorted(set(wit))[: spec.max_witnesses]
    formula = None
    if spec.mode in ("lineMaxAP", "lineEnumerateOptimal") and spec.k is not None:
        formula = sap_max(spec.n, spec.k)
    return SearchResult(
        maximum=max(best, 0),
        witnesses=wit,
        states_explored=states,
        exhaustive=complete,
        formula=formula,
        notes=f"integer sets of diameter <= {spec.diameter}; exhaustive only within that cap",
    )


def enumerate_optimal(spec: SearchSpec) -> list[tuple[int, ...]]:
    """All canonical n-sets (diameter <= D) attaining the k-AP maximum."""
    spec = SearchSpec(**{**spec.__dict__, "mode": "lineEnumerateOptimal", "max_witnesses": 10**9})
    res = line_max_search(spec)
    if res.maximum != sap_max(spec.n, spec.k):
        return []
    return res.witnesses


def verify_line_witnesses(spec: SearchSpec, result: SearchResult) -> bool:
    """Re-count every witness with the fast counter and the brute-force oracle."""
    for w in result.witnesses:
        V = LinePointSet.of(w)
        if spec.mode == "lineMaxPattern":
            fast = count_instances(V, spec.pattern, spec.allow_reflection)
            slow = brute_count(V, spec.pattern, spec.allow_reflection)
        else:
            fast = count_kap(V, spec.k)
            slow = brute_count(V, range(spec.k), True)
        if fast != result.maximum or slow != result.maximum:
            return False
    return True


# ---------------------------------------------------------------------------
# plane lattice search


def lattice_pool(radius: int) -> list[tuple[int, int]]:
    """Eisenstein integers ``a + b*z6`` of norm at most ``radius**2``, in a fixed order."""
    B = radius + radius // 2 + 1
    pool = [
        (a, b)
        for a in range(-B, B + 1)
        for b in range(-B, B + 1)
        if a * a + a * b + b * b <= radius * radius
    ]
    pool.sort(key=lambda t: (t[0] * t[0] + t[0] * t[1] + t[1] * t[1], t))
    return pool


def _pool_triangles(pool: list[tuple[int, int]]) -> list[tuple[int, int, int]]:
    """Index triples of equilateral triangles inside the pool (lattice arithmetic)."""
    where = {p: i for i, p in enumerate(pool)}
    tris = set()
    for i, (a1, b1) in enumerate(pool):
        for j in range(i + 1, len(pool)):
            a2, b2 = pool[j]
            da, db = a2 - a1, b2 - b1
            # rotate the edge by +-60 degrees: z6*(a + b z6) = -b + (a + b) z6
            for ra, rb in ((-db, da + db), (da + db, -da)):
                k = where.get((a1 + ra, b1 + rb))
                if k is not None:
                    tris.add(tuple(sorted((i, j, k))))
    return sorted(tris)


def _plane_dfs(n: int, size: int, tris, budget: int):
    pair_masks = [[] for _ in range(size)]
    for i, j, k in tris:
        pair_masks[k].append((1 << i) | (1 << j))
    best = [-1, 0]
    states = [0]
    complete = [True]

    def rec(start, chosen, depth, count):
        if states[0] >= budget:
            complete[0] = False
            return
        states[0] += 1
        if depth == n:
            if count > best[0]:
                best[0], best[1] = count, chosen
            return
        for k in range(start, size - (n - depth) + 1):
            added = sum(1 for pm in pair_masks[k] if chosen & pm == pm)
            rec(k + 1, chosen | (1 << k), depth + 1, count + added)
            if not complete[0]:
                return

    rec(0, 0, 0, 0)
    return best[0], best[1], states[0], complete[0]


def _plane_local_search(n: int, pool, tris, max_rounds: int = 20):
    size = len(pool)
    incident = [[] for _ in range(size)]
    for t in tris:
        for v in t:
            incident[v].append(t)
    chosen = set(range(n))

    def gain(v, S):
        return sum(1 for t in incident[v] if all(x in S or x == v for x in t))

    count = sum(1 for t in tris if all(x in chosen for x in t))
    states = 0
    for _ in range(max_rounds):
        improved = False
        for out in sorted(chosen):
            loss = gain(out, chosen)
            rest = chosen - {out}
            for inn in range(size):
                if inn in chosen:
                    continue
                states += 1
                delta = gain(inn, rest | {inn}) - loss
                if delta > 0:
                    chosen = rest | {inn}
                    count += delta
                    improved = True
                    break
        if not improved:
            break
    return count, chosen, states


def plane_lattice_max(spec: SearchSpec, exhaustive_limit: int = 12) -> SearchResult:
    """Best equilateral-triangle count over n-subsets of the lattice ball of radius R."""
    n = spec.n
    pool = lattice_pool(spec.radius)
    if len(pool) < n:
        raise ValueError(f"radius {spec.radius} gives only {len(pool)} lattice points")
    tris = _pool_triangles(pool)
    if n <= exhaustive_limit:
        best, mask, states, complete = _plane_dfs(n, len(pool), tris, spec.budget)
        chosen = [i for i in range(len(pool)) if mask >> i & 1]
        note = f"exhaustive over {len(pool)} lattice points of norm <= {spec.radius}^2"
    else:
        best, chosen_set, states = _plane_local_search(n, pool, tris)
        chosen, complete = sorted(chosen_set), False
        note = "heuristic: nearest lattice points then improving swaps"
    witness = tuple(pool[i] for i in chosen)
    result = SearchResult(best, [witness], states, complete, katherine_bound(n), note)
    assert best <= katherine_bound(n), "lattice search exceeded the proven upper bound"
    return result


def lattice_witness_points(witness) -> PlanePointSet:
    return PlanePointSet.of(lattice_point(a, b) for a, b in witness)


def verify_plane_witnesses(result: SearchResult) -> bool:
    for w in result.witnesses:
        V = lattice_witness_points(w)
        if count_equilateral(V) != result.maximum:
            return False
        if len(V) <= 60 and brute_count_equilateral(V) != result.maximum:
            return False
    return True


def run_search(spec: SearchSpec) -> SearchResult:
    if spec.mode == "planeLatticeMax":
        return plane_lattice_max(spec)
    return line_max_search(spec)


__all__ = [
    "SearchSpec",
    "SearchResult",
    "brute_count",
    "brute_count_equilateral",
    "canonical_line",
    "enumerate_optimal",
    "gen_triangular_disk",
    "line_max_search",
    "plane_lattice_max",
    "run_search",
]
