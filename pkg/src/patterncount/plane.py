"""Equilateral triangles in the plane over Q(sqrt 3).

Counting runs two independent routes and cross-checks them:

* every pair tests both third vertices for membership (each triangle is
  seen three times);
* every lexicographically ordered pair ``u < v`` tests only the third vertex
  that comes after ``v`` (each triangle is seen once, from its two least
  vertices).

Both routes work on an integer encoding of the coordinates, vectorised with
numpy when the integers are small and in exact Python otherwise.

The second half of the module builds the halving-line machinery behind the
``(4n-1)(n-1)/18`` upper bound: rotated orders, medians, a direction whose
three halving lines at mutual angle 2pi/3 are concurrent, the compartments
those lines cut out, and the resulting bound.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicatePoint, MethodMismatch, NoSignChange, NotOrdered
from .exact import (
    EQ,
    GT,
    LT,
    OMEGA,
    OMEGA2,
    ZETA6,
    Direction,
    Point2,
    QSqrt3,
    dir_cmp,
    lex_cmp,
    qs3_sign,
    rotation_key,
    third_vertices,
)
from .line import _pair_blocks

SQRT3 = math.sqrt(3.0)
_SMALL = 1 << 28


@dataclass(frozen=True)
class PlanePointSet:
    """Distinct points kept in lexicographic order."""

    points: tuple[Point2, ...]

    def __post_init__(self):
        for a, b in zip(self.points, self.points[1:]):
            if lex_cmp(a, b) != LT:
                raise ValueError("PlanePointSet points must be strictly increasing")

    @classmethod
    def of(cls, values: Iterable[Point2]) -> PlanePointSet:
        pts = sorted(values, key=cmp_to_key(lex_cmp))
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise DuplicatePoint(f"duplicate point {a!r}")
        return cls(tuple(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def transformed(self, mul: Point2 | None = None, add: Point2 | None = None) -> PlanePointSet:
        pts = self.points
        if mul is not None:
            pts = [p * mul for p in pts]
        if add is not None:
            pts = [p + add for p in pts]
        return PlanePointSet.of(pts)


def _as_plane(V) -> PlanePointSet:
    return V if isinstance(V, PlanePointSet) else PlanePointSet.of(V)


# ---------------------------------------------------------------------------
# reconstruction from consecutive points


def reconstruct_first(u: Point2, v: Point2) -> Point2 | None:
    """Third vertex ``w`` with ``u < v < w`` forming an equilateral triangle, if any."""
    if lex_cmp(u, v) != LT:
        raise NotOrdered("reconstruct_first needs u < v")
    found = [w for w in third_vertices(u, v) if lex_cmp(w, v) == GT]
    assert len(found) <= 1
    return found[0] if found else None


def reconstruct_last(u: Point2, v: Point2) -> Point2 | None:
    """Third vertex ``w`` with ``w < u < v`` forming an equilateral triangle, if any."""
    if lex_cmp(u, v) != LT:
        raise NotOrdered("reconstruct_last needs u < v")
    found = [w for w in third_vertices(u, v) if lex_cmp(w, u) == LT]
    assert len(found) <= 1
    return found[0] if found else None


def admits_reconstruction(u: Point2, v: Point2) -> bool:
    """Whether the unordered pair is the least two vertices of some equilateral triangle."""
    if lex_cmp(u, v) == GT:
        u, v = v, u
    return reconstruct_first(u, v) is not None


def arg_in_reconstruction_set(z: complex) -> bool:
    """Floating-point membership of ``Arg(z)`` in (-5pi/6, -pi/6] U (pi/6, 5pi/6]."""
    a = math.atan2(z.imag, z.real)
    return (-5 * math.pi / 6 < a <= -math.pi / 6) or (math.pi / 6 < a <= 5 * math.pi / 6)


# ---------------------------------------------------------------------------
# integer encoding


@dataclass
class _Encoded:
    """Point ``p`` is ``(c0 + c1*r3)/L + i*(c2 + c3*r3)/L`` with integer ``c``."""

    coords: list[tuple[int, int, int, int]]
    L: int

    @classmethod
    def of(cls, pts: Sequence[Point2]) -> _Encoded:
        L = 1
        for p in pts:
            for c in p.coords():
                L = L * c.denominator // math.gcd(L, c.denominator)
        return cls([tuple(int(c * L) for c in p.coords()) for p in pts], L)

    def small(self) -> bool:
        return all(abs(c) < _SMALL for q in self.coords for c in q)


def _sign_qs3_arrays(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Elementwise exact sign of ``p + q*sqrt(3)`` for small int64 arrays."""
    sp, sq = np.sign(p), np.sign(q)
    mixed = np.where(p * p > 3 * q * q, sp, sq)
    return np.where(sp * sq >= 0, np.where(sp != 0, sp, sq), mixed)


class _Index:
    """Membership index over encoded points using a mixed-radix int64 key."""

    def __init__(self, arr: np.ndarray):
        self.lo = arr.min(axis=0)
        self.hi = arr.max(axis=0)
        radix = (self.hi - self.lo + 1).astype(object)
        total = 1
        for r in radix:
            total *= int(r)
        if total >= 1 << 62:
            raise OverflowError("key space too large")
        self.radix = [int(r) for r in radix]
        self.keys = np.sort(self._key(arr))

    def _key(self, arr):
        k = np.zeros(len(arr), dtype=np.int64)
        for c in range(4):
            k = k * self.radix[c] + (arr[:, c] - self.lo[c])
        return k

    def contains(self, arr: np.ndarray) -> np.ndarray:
        inside = np.all((arr >= self.lo) & (arr <= self.hi), axis=1)
        out = np.zeros(len(arr), dtype=bool)
        if inside.any():
            sub = self._key(arr[inside])
            idx = np.searchsorted(self.keys, sub)
            np.clip(idx, 0, len(self.keys) - 1, out=idx)
            out[inside] = self.keys[idx] == sub
        return out


def _third_vertex_doubled(U: np.ndarray, W: np.ndarray, sign: int) -> np.ndarray:
    """``2*(third vertex)`` in encoded coordinates; ``sign=+1`` gives ``z6*u + conj(z6)*v``."""
    s = U + W
    d = U - W
    t = np.stack([-3 * d[:, 3], -d[:, 2], 3 * d[:, 1], d[:, 0]], axis=1)
    return s + sign * t


def _halve_members(index: _Index, doubled: np.ndarray, mask: np.ndarray | None = None) -> np.ndarray:
    even = np.all(doubled % 2 == 0, axis=1)
    if mask is not None:
        even &= mask
    hit = np.zeros(len(doubled), dtype=bool)
    if even.any():
        hit[even] = index.contains(doubled[even] // 2)
    return hit


def _lex_gt_doubled(doubled: np.ndarray, V2: np.ndarray) -> np.ndarray:
    """Exact ``w > v`` lexicographically where ``doubled = 2w`` and ``V2 = 2v``."""
    dx = _sign_qs3_arrays(doubled[:, 0] - V2[:, 0], doubled[:, 1] - V2[:, 1])
    dy = _sign_qs3_arrays(doubled[:, 2] - V2[:, 2], doubled[:, 3] - V2[:, 3])
    return (dx > 0) | ((dx == 0) & (dy > 0))


def _block_counts(arr, index, i, j):
    U, W = arr[i], arr[j]
    wa = _third_vertex_doubled(U, W, +1)
    wb = _third_vertex_doubled(U, W, -1)
    hit_a = _halve_members(index, wa)
    hit_b = _halve_members(index, wb)
    method_a = int(hit_a.sum() + hit_b.sum())
    # pairs are i < j in lexicographic order, so U < W
    after_a = _lex_gt_doubled(wa, 2 * W)
    after_b = _lex_gt_doubled(wb, 2 * W)
    method_b = int((hit_a & after_a).sum() + (hit_b & after_b).sum())
    return method_a, method_b


def count_equilateral_methods(V, jobs: int | None = None) -> tuple[int, int]:
    """Triangle counts from the all-pairs route and the least-two-vertices route."""
    V = _as_plane(V)
    n = len(V)
    if n < 3:
        return 0, 0
    enc = _Encoded.of(V.points)
    index = None
    if enc.small():
        arr = np.asarray(enc.coords, dtype=np.int64)
        try:
            index = _Index(arr)
        except OverflowError:
            index = None
    if index is None:
        return _count_methods_exact(V)
    blocks = list(_pair_blocks(n))
    if jobs and jobs > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(lambda b: _block_counts(arr, index, *b), blocks))
    else:
        parts = [_block_counts(arr, index, i, j) for i, j in blocks]
    triple_hits = sum(p[0] for p in parts)
    first_two = sum(p[1] for p in parts)
    if triple_hits % 3:
        raise MethodMismatch(f"pair route gave {triple_hits} hits, not a multiple of 3")
    return triple_hits // 3, first_two


def _count_methods_exact(V: PlanePointSet) -> tuple[int, int]:
    members = set(V.points)
    pts = V.points
    hits = 0
    first_two = 0
    for i, u in enumerate(pts):
        for v in pts[i + 1 :]:
            w, w2 = third_vertices(u, v)
            hits += (w in members) + (w2 in members)
            r = reconstruct_first(u, v)
            if r is not None and r in members:
                first_two += 1
    if hits % 3:
        raise MethodMismatch(f"pair route gave {hits} hits, not a multiple of 3")
    return hits // 3, first_two


def count_equilateral(V, jobs: int | None = None) -> int:
    """Exact number of equilateral triangles with all vertices in ``V``."""
    a, b = count_equilateral_methods(V, jobs)
    if a != b:
        raise MethodMismatch(f"counting routes disagree: {a} != {b}")
    return a


# ---------------------------------------------------------------------------
# bounds


def katherine_bound(n: int) -> int:
    return (4 * n - 1) * (n - 1) // 18


def abrego_bound(n: int) -> int:
    return (n - 1) ** 2 // 4


def _binom2(m: int) -> int:
    return m * (m - 1) // 2


def helen_decomposition(n: int) -> tuple[int, int, int]:
    """``(q, r, s)`` with ``n - 1 = 6q + 2r + s``, ``r`` in {0,1,2}, ``s`` in {0,1}."""
    q, t = divmod(n - 1, 6)
    return q, t // 2, t % 2


def helen_minimum(n: int) -> int:
    """Least value of the six-compartment pair sum over n - 1 points."""
    q, r, s = helen_decomposition(n)
    return q * (3 * q + 2 * r + s - 3)


def peter_value(n: int) -> int:
    q, r, s = helen_decomposition(n)
    return (3 * q + r) * (3 * q + r + s)


def katherine_closed_form(n: int) -> Fraction:
    """Piecewise quadratic in n by residue mod 6."""
    tail = {0: Fraction(-1, 3), 2: Fraction(-1, 3), 1: Fraction(1, 18),
            3: Fraction(-1, 6), 5: Fraction(-1, 6), 4: Fraction(-4, 9)}[n % 6]
    return Fraction(2, 9) * n * n - Fraction(5, 18) * n + tail


# ---------------------------------------------------------------------------
# rotated orders and halving lines


def _filtered_cmp_keys(a: Point2, fa: tuple, b: Point2, fb: tuple) -> int:
    """Lexicographic compare of exact keys, deciding from floats when safe."""
    for comp in (0, 1):
        va, ea = fa[comp]
        vb, eb = fb[comp]
        diff = va - vb
        if diff > ea + eb:
            return GT
        if diff < -(ea + eb):
            return LT
        exact = qs3_sign((a.x - b.x) if comp == 0 else (a.y - b.y))
        if exact:
            return exact
    return EQ


def _approx_key(k: Point2) -> tuple:
    return (k.x.approx(), k.y.approx())


def sort_under(V, zeta: Direction) -> list[Point2]:
    """Points of ``V`` sorted by the rotated order ``<=_zeta``."""
    pts = list(V)
    if zeta.exact is None:
        return sorted(pts, key=cmp_to_key(lambda y, z: dir_cmp(zeta, y, z)))
    keys = [rotation_key(zeta, p) for p in pts]
    fk = [_approx_key(k) for k in keys]
    order = sorted(
        range(len(pts)),
        key=cmp_to_key(lambda i, j: _filtered_cmp_keys(keys[i], fk[i], keys[j], fk[j])),
    )
    return [pts[i] for i in order]


def zeta_median(V, zeta: Direction) -> Point2:
    """Middle point under ``<=_zeta``, or the midpoint of the two middle points."""
    srt = sort_under(V, zeta)
    n = len(srt)
    if n == 0:
        raise ValueError("median of an empty set")
    if n % 2:
        return srt[n // 2]
    return (srt[n // 2 - 1] + srt[n // 2]) * Fraction(1, 2)


@dataclass
class HalvingCertificate:
    direction: Direction
    median: Point2
    left_count: int
    right_count: int
    left: frozenset = field(default_factory=frozenset, repr=False)


def halving_line(V, zeta: Direction) -> HalvingCertificate:
    """The zeta-halving line; counts are re-derived by comparing every point with the median."""
    V = _as_plane(V)
    c = zeta_median(V, zeta)
    if zeta.exact is not None:
        ck = rotation_key(zeta, c)
        fc = _approx_key(ck)
        left = frozenset(
            p for p in V
            if _filtered_cmp_keys(k := rotation_key(zeta, p), _approx_key(k), ck, fc) <= 0
        )
    else:
        left = frozenset(p for p in V if dir_cmp(zeta, p, c) <= 0)
    return HalvingCertificate(zeta, c, len(left), len(V) - len(left), left)


# ---------------------------------------------------------------------------
# concurrent halving lines (numeric search, exact certificate)


_THIRD = 2 * math.pi / 3


def _float_median(P: np.ndarray, theta: float) -> complex:
    c, s = math.cos(theta), math.sin(theta)
    re = s * P.real - c * P.imag
    im = c * P.real + s * P.imag
    order = np.lexsort((im, re))
    n = len(P)
    if n % 2:
        return complex(P[order[n // 2]])
    return complex((P[order[n // 2 - 1]] + P[order[n // 2]]) / 2)


def _intersection(cm: complex, cn: complex, theta: float) -> complex:
    a = complex(math.cos(theta + _THIRD), math.sin(theta + _THIRD))
    b = complex(math.cos(theta + 2 * _THIRD), math.sin(theta + 2 * _THIRD))
    rhs = cn - cm
    cross_ab = a.real * b.imag - a.imag * b.real
    t = (rhs.real * b.imag - rhs.imag * b.real) / cross_ab
    return cm + t * a


def _signed_offset(cl: complex, x: complex, theta: float) -> float:
    """Positive when ``x`` is to the left of the line through ``cl`` with angle ``theta``."""
    z = complex(math.cos(theta), -math.sin(theta)) * (x - cl)
    return z.imag


def _side_function(P: np.ndarray, theta: float) -> tuple[float, complex]:
    cl = _float_median(P, theta)
    cm = _float_median(P, theta + _THIRD)
    cn = _float_median(P, theta + 2 * _THIRD)
    x = _intersection(cm, cn, theta)
    return _signed_offset(cl, x, theta), x


def critical_angles(P: np.ndarray) -> np.ndarray:
    """Angles in [0, pi) where one of the three rotated orders can change."""
    n = len(P)
    if n < 2:
        return np.zeros(0)
    i, j = np.triu_indices(n, 1)
    d = P[j] - P[i]
    base = np.mod(np.arctan2(d.imag, d.real), math.pi)
    ang = np.concatenate([base, base + math.pi / 3, base + 2 * math.pi / 3])
    ang = np.sort(np.mod(ang, math.pi))
    keep = np.concatenate([[True], np.diff(ang) > 1e-13])
    return ang[keep]


@dataclass
class ConcurrencyResult:
    direction: Direction
    intersection: complex
    residual: float
    certificates: tuple
    root_angle: float
    evaluations: int = 0


def _scale(P: np.ndarray) -> float:
    if len(P) < 2:
        return 1.0
    span = max(np.ptp(P.real), np.ptp(P.imag))
    return max(1.0, float(span))


def find_concurrent_direction(V, tol: float = 1e-9) -> ConcurrencyResult:
    """A direction whose halving lines at angles 0, 2pi/3, 4pi/3 meet in one point.

    The side of ``M cap N`` relative to ``L`` changes sign between angle
    ``theta`` and ``theta + pi``.  Bracket the change on the midpoints of the
    cells between critical angles, bisect, then certify with an exact
    rational direction next to the root.
    """
    V = _as_plane(V)
    n = len(V)
    if n == 0:
        raise ValueError("empty point set")
    P = np.array([complex(p) for p in V.points])
    if n == 1:
        certs = tuple(halving_line(V, d) for d in _three(Direction.from_exact(Point2(0, 1))))
        return ConcurrencyResult(certs[0].direction, complex(P[0]), 0.0, certs, math.pi / 2)
    scale = _scale(P)
    crit = critical_angles(P)
    mids = (crit + np.append(crit[1:], crit[0] + math.pi)) / 2
    evals = 0

    def g(idx: int) -> float:
        nonlocal evals
        evals += 1
        if idx == len(mids):
            return -_side_function(P, float(mids[0]))[0]
        return _side_function(P, float(mids[idx]))[0]

    lo, hi = 0, len(mids)
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        theta_star = float(mids[0])
    else:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            gm = g(mid)
            if gm == 0.0:
                lo = hi = mid
                break
            if (gm > 0) == (glo > 0):
                lo, glo = mid, gm
            else:
                hi, ghi = mid, gm
        a = float(mids[lo])
        b = float(mids[0]) + math.pi if hi == len(mids) else float(mids[hi])
        if lo == hi:
            theta_star = a
        else:
            fa = glo
            for _ in range(200):
                m = (a + b) / 2
                fm, _ = _side_function(P, m)
                evals += 1
                if fm == 0.0 or b - a < 1e-16:
                    a = b = m
                    break
                if (fm > 0) == (fa > 0):
                    a, fa = m, fm
                else:
                    b = m
            theta_star = (a + b) / 2
    last = None
    for delta in (0.0, 1e-12, -1e-12, 1e-10, -1e-10, 1e-8, -1e-8):
        result = _certify(V, P, theta_star + delta, scale)
        last = result
        if result is not None and result.residual < tol and _v7_size(V, result) <= 1:
            result.root_angle = theta_star
            result.evaluations = evals
            return result
    raise NoSignChange(
        f"no certified concurrency near angle {theta_star!r}; "
        f"last residual {None if last is None else last.residual!r}"
    )


def _three(zeta: Direction) -> tuple[Direction, Direction, Direction]:
    return zeta, zeta.rotate(OMEGA), zeta.rotate(OMEGA2)


def _certify(V: PlanePointSet, P: np.ndarray, theta: float, scale: float) -> ConcurrencyResult | None:
    zeta = Direction.rational_near(theta)
    dirs = _three(zeta)
    certs = tuple(halving_line(V, d) for d in dirs)
    n = len(V)
    if any(c.left_count != (n + 1) // 2 for c in certs):
        return None
    cl, cm, cn = (complex(c.median) for c in certs)
    ang = zeta.approx
    x = _intersection(cm, cn, ang)
    residual = abs(_signed_offset(cl, x, ang)) / scale
    return ConcurrencyResult(zeta, x, residual, certs, theta)


# ---------------------------------------------------------------------------
# compartments


# (left of L, left of M, left of N) -> compartment number
_COMPARTMENT = {
    (True, False, True): 1,
    (True, False, False): 2,
    (True, True, False): 3,
    (False, True, False): 4,
    (False, True, True): 5,
    (False, False, True): 6,
    (True, True, True): 7,
    (False, False, False): 7,
}


@dataclass
class CompartmentProfile:
    sizes: tuple[int, ...]
    labels: dict
    direction: Direction
    rotation_chosen: int | None = None
    intracompartmental_outside_a: int | None = None
    outside_a_by_rotation: tuple[int, int, int] | None = None

    @property
    def rotation_angle(self) -> str | None:
        if self.rotation_chosen is None:
            return None
        return ("0", "2pi/3", "4pi/3")[self.rotation_chosen]

    def intracompartmental_pairs(self) -> int:
        return sum(_binom2(s) for s in self.sizes[:6])


def compartments(V, zeta: Direction | ConcurrencyResult) -> CompartmentProfile:
    """Classify every point by its formal side of the three halving lines."""
    V = _as_plane(V)
    if isinstance(zeta, ConcurrencyResult):
        certs = zeta.certificates
        zeta = zeta.direction
    else:
        certs = tuple(halving_line(V, d) for d in _three(zeta))
    labels = {}
    sizes = [0] * 7
    for p in V:
        key = tuple(p in c.left for c in certs)
        lab = _COMPARTMENT[key]
        labels[p] = lab
        sizes[lab - 1] += 1
    return CompartmentProfile(tuple(sizes), labels, zeta)


def _v7_size(V: PlanePointSet, result: ConcurrencyResult) -> int:
    return compartments(V, result).sizes[6]


def _outside_a_counts(V: PlanePointSet, profile: CompartmentProfile) -> tuple[int, int, int]:
    """For each rotation, intracompartmental pairs whose difference avoids the set A."""
    groups: dict[int, list[Point2]] = {}
    for p, lab in profile.labels.items():
        if lab <= 6:
            groups.setdefault(lab, []).append(p)
    counts = []
    for d in _three(profile.direction):
        total = 0
        for members in groups.values():
            if len(members) < 2:
                continue
            keys = [rotation_key(d, p) for p in members]
            total += _count_outside_a(keys)
        counts.append(total)
    return tuple(counts)


def _count_outside_a(keys: list[Point2]) -> int:
    """Pairs whose ordered difference has argument in (-pi/6, pi/6]."""
    fx = np.array([k.x.approx()[0] for k in keys])
    fy = np.array([k.y.approx()[0] for k in keys])
    m = len(keys)
    eps = 1e-9 * (1.0 + float(np.max(np.abs(fx))) + float(np.max(np.abs(fy))))
    i, j = np.triu_indices(m, 1)
    dx = fx[j] - fx[i]
    dy = fy[j] - fy[i]
    flip = (dx < 0) | ((dx == 0) & (dy < 0))
    dx = np.where(flip, -dx, dx)
    dy = np.where(flip, -dy, dy)
    upper = dx - SQRT3 * dy
    lower = dx + SQRT3 * dy
    unsure = (np.abs(dx) <= eps) | (np.abs(upper) <= eps) | (np.abs(lower) <= eps)
    sure = ~unsure & (dx > 0) & (upper > 0) & (lower > 0)
    total = int(sure.sum())
    for a, b in zip(i[unsure], j[unsure]):
        total += _outside_a_exact(keys[a], keys[b])
    return total


def _outside_a_exact(ka: Point2, kb: Point2) -> bool:
    d = kb - ka
    if lex_cmp(kb, ka) == LT:
        d = -d
    if qs3_sign(d.x) <= 0:
        return False
    r3y = QSqrt3(3 * d.y.b, d.y.a)
    return qs3_sign(d.x - r3y) >= 0 and qs3_sign(d.x + r3y) > 0


def choose_rotation(V, profile: CompartmentProfile) -> CompartmentProfile:
    """Pick the rotation that blocks the most intracompartmental pairs."""
    V = _as_plane(V)
    counts = _outside_a_counts(V, profile)
    best = max(range(3), key=lambda j: (counts[j], -j))
    profile.rotation_chosen = best
    profile.intracompartmental_outside_a = counts[best]
    profile.outside_a_by_rotation = counts
    return profile


def terence_bound(V, profile: CompartmentProfile) -> int:
    """Halving-pair count minus a third of the intracompartmental pairs, floored."""
    n = len(V)
    base = _binom2((n + 1) // 2) + _binom2(n // 2)
    sigma = profile.intracompartmental_pairs()
    return base - (-(-sigma // 3))


@dataclass
class KatherineReport:
    n: int
    count: int
    terence: int
    deducted: int
    best_rotation_bound: int
    katherine: int
    abrego: int
    residual: float
    profile: CompartmentProfile
    concurrency: ConcurrencyResult

    def chain_holds(self) -> bool:
        return self.count <= self.deducted <= self.terence <= self.katherine <= self.abrego


def katherine_report(V, tol: float = 1e-9, jobs: int | None = None) -> KatherineReport:
    """Run the full bound chain on ``V``.

    ``deducted`` subtracts the pairs actually blocked by the chosen rotation;
    ``terence`` subtracts only the guaranteed third.
    """
    V = _as_plane(V)
    n = len(V)
    conc = find_concurrent_direction(V, tol)
    profile = choose_rotation(V, compartments(V, conc))
    base = _binom2((n + 1) // 2) + _binom2(n // 2)
    deducted = base - profile.intracompartmental_outside_a
    return KatherineReport(
        n=n,
        count=count_equilateral(V, jobs),
        terence=terence_bound(V, profile),
        deducted=deducted,
        best_rotation_bound=min(base - c for c in profile.outside_a_by_rotation),
        katherine=katherine_bound(n),
        abrego=abrego_bound(n),
        residual=conc.residual,
        profile=profile,
        concurrency=conc,
    )


# ---------------------------------------------------------------------------
# triangular lattice


def lattice_point(a: int, b: int) -> Point2:
    """The Eisenstein integer ``a + b*z6``."""
    return Point2(Fraction(a) + Fraction(b, 2), QSqrt3(0, Fraction(b, 2)))


def gen_triangular_disk(n: int) -> PlanePointSet:
    """The n lattice points ``a + b*z6`` nearest the origin.

    Ties in distance go by angle measured counterclockwise from the positive
    real axis, then lexicographically.
    """
    if n < 1:
        raise ValueError("n must be positive")
    R = 1
    while True:
        # norm <= R^2 forces |a|, |b| <= 2R/sqrt(3) < B
        B = R + R // 2 + 1
        cand = [
            (a * a + a * b + b * b, a, b)
            for a in range(-B, B + 1)
            for b in range(-B, B + 1)
            if a * a + a * b + b * b <= R * R
        ]
        if len(cand) >= n:
            break
        R *= 2
    def key(t):
        norm, a, b = t
        x, y = a + b / 2, b * SQRT3 / 2
        ang = math.atan2(y, x) % (2 * math.pi)
        return (norm, ang, x, y)

    cand.sort(key=key)
    return PlanePointSet.of(lattice_point(a, b) for _, a, b in cand[:n])


def hexagon_with_center() -> PlanePointSet:
    pts = [Point2(0, 0)]
    z = Point2(1, 0)
    for _ in range(6):
        pts.append(z)
        z = z * ZETA6
    return PlanePointSet.of(pts)
