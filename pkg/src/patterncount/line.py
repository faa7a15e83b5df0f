"""Patterns on the line: arithmetic progressions, commensurable patterns, bounds.

Point sets are sorted tuples of :class:`fractions.Fraction`.  Counting uses
the first-two-points reconstruction: every instance of a pattern is fixed by
its two smallest points, so a count is one membership probe per remaining
term for each ordered pair.  When the scaled coordinates fit in int64 the
pair loop runs vectorised in numpy, otherwise in plain Python.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    BadArity,
    DuplicatePoint,
    Incommensurable,
    InfeasibleParameters,
)
from .exact import QSqrt3, rat

_INT64_SAFE = 1 << 61
_PAIR_BLOCK = 1 << 21


@dataclass(frozen=True)
class LinePointSet:
    points: tuple[Fraction, ...]

    def __post_init__(self):
        pts = tuple(rat(p) for p in self.points)
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise ValueError("LinePointSet points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, values: Iterable) -> LinePointSet:
        """Sort ``values``; duplicates are an error rather than silently merged."""
        pts = sorted(rat(v) for v in values)
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise DuplicatePoint(f"duplicate point {a}")
        return cls(tuple(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return rat(x) in self._members

    @property
    def _members(self) -> frozenset:
        cached = self.__dict__.get("_member_cache")
        if cached is None:
            cached = frozenset(self.points)
            object.__setattr__(self, "_member_cache", cached)
        return cached

    def affine(self, a, b) -> LinePointSet:
        a, b = rat(a), rat(b)
        if a == 0:
            raise ValueError("scale must be nonzero")
        return LinePointSet.of(a * p + b for p in self.points)


def _as_set(V) -> LinePointSet:
    return V if isinstance(V, LinePointSet) else LinePointSet.of(V)


def _scaled_integers(points: Sequence[Fraction]) -> list[int]:
    """Integers proportional to ``points`` (common denominator cleared)."""
    den = 1
    for p in points:
        den = den * p.denominator // math.gcd(den, p.denominator)
    return [int(p * den) for p in points]


def _pair_blocks(n: int, max_pairs: int = _PAIR_BLOCK):
    """Yield ``(i, j)`` index arrays covering all pairs ``i < j`` in row blocks."""
    start = 0
    while start < n - 1:
        stop = start
        count = 0
        while stop < n - 1 and count + (n - 1 - stop) <= max_pairs:
            count += n - 1 - stop
            stop += 1
        stop = max(stop, start + 1)
        rows = np.arange(start, stop)
        lengths = n - 1 - rows
        i = np.repeat(rows, lengths)
        offsets = np.arange(lengths.sum()) - np.repeat(np.cumsum(lengths) - lengths, lengths)
        j = i + 1 + offsets
        yield i, j
        start = stop


def _member_mask(xs: np.ndarray, t: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(xs, t)
    np.clip(idx, 0, len(xs) - 1, out=idx)
    return xs[idx] == t


# ---------------------------------------------------------------------------
# arithmetic progressions


def sap_max(n: int, k: int) -> int:
    """Maximum number of k-term APs in an n-point subset of the line."""
    if k < 2:
        raise BadArity(f"k must be at least 2, got {k}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    r = n % (k - 1)
    num = (n - r) * (n + r - k + 1)
    assert num % (2 * k - 2) == 0
    return num // (2 * k - 2)


def general_upper_bound(n: int, k: int) -> int:
    """Upper bound for any k-pattern on the line; coincides with :func:`sap_max`."""
    return sap_max(n, k)


def count_kap(V, k: int) -> int:
    """Number of k-subsets of ``V`` that form an arithmetic progression."""
    if k < 2:
        raise BadArity(f"k must be at least 2, got {k}")
    V = _as_set(V)
    n = len(V)
    if n < k:
        return 0
    if k == 2:
        return n * (n - 1) // 2
    return _count_ratio_instances(V.points, [Fraction(m) for m in range(2, k)])


def _count_ratio_instances(points: Sequence[Fraction], ratios: Sequence[Fraction]) -> int:
    """Count pairs ``u < v`` for which every ``u + r*(v-u)`` lies in the set."""
    xs = _scaled_integers(points)
    bound = max(abs(x) for x in xs) * (2 + max(abs(r.numerator) for r in ratios))
    if bound < _INT64_SAFE:
        return _count_ratio_numpy(np.asarray(xs, dtype=np.int64), ratios)
    members = set(xs)
    total = 0
    n = len(xs)
    for i in range(n - 1):
        u = xs[i]
        for j in range(i + 1, n):
            d = xs[j] - u
            for r in ratios:
                q, rem = divmod(d * r.numerator, r.denominator)
                if rem or (u + q) not in members:
                    break
            else:
                total += 1
    return total


def _count_ratio_numpy(xs: np.ndarray, ratios: Sequence[Fraction]) -> int:
    total = 0
    for i, j in _pair_blocks(len(xs)):
        u = xs[i]
        d = xs[j] - u
        ok = np.ones(len(i), dtype=bool)
        for r in ratios:
            num = d * r.numerator
            if r.denominator != 1:
                ok &= num % r.denominator == 0
            ok &= _member_mask(xs, u + num // r.denominator)
        total += int(ok.sum())
    return total


# ---------------------------------------------------------------------------
# general patterns


@dataclass(frozen=True)
class LinePattern:
    """Canonical pattern: min 0, coprime integer entries when commensurable.

    ``points = (original - shift) / scale`` entrywise.
    """

    points: tuple
    commensurable: bool
    scale: object = 1
    shift: object = 0

    @property
    def k(self) -> int:
        return len(self.points)


def normalize_pattern(P) -> LinePattern:
    """Translate the minimum to 0 and, if gap ratios are rational, scale to coprime integers."""
    raw = [_as_qs3(p) for p in P]
    vals = sorted(set(raw))
    if len(vals) != len(raw):
        raise DuplicatePoint("pattern has repeated points")
    if len(vals) < 2:
        raise BadArity("a pattern needs at least two points")
    shift = vals[0]
    rel = [v - shift for v in vals]
    unit = rel[1]
    ratios = [r / unit for r in rel]
    if all(r.is_rational() for r in ratios):
        fr = [r.a for r in ratios]
        den = 1
        for f in fr:
            den = den * f.denominator // math.gcd(den, f.denominator)
        ints = [int(f * den) for f in fr]
        g = 0
        for x in ints:
            g = math.gcd(g, x)
        ints = [x // g for x in ints]
        scale = unit * Fraction(g, den)
        return LinePattern(tuple(ints), True, _plain(scale), _plain(shift))
    return LinePattern(tuple(_plain(r) for r in ratios), False, _plain(unit), _plain(shift))


def _as_qs3(p) -> QSqrt3:
    if isinstance(p, QSqrt3):
        return p
    return QSqrt3(rat(p), 0)


def _plain(v: QSqrt3):
    return v.a if v.is_rational() else v


def _pattern(P) -> LinePattern:
    return P if isinstance(P, LinePattern) else normalize_pattern(P)


def reflect_pattern(P) -> LinePattern:
    P = _pattern(P)
    return normalize_pattern([-x for x in P.points])


def is_reflection_symmetric(P) -> bool:
    P = _pattern(P)
    return reflect_pattern(P).points == P.points


def count_instances(V, P, allow_reflection: bool = False) -> int:
    """Number of subsets of ``V`` of the form ``a*P + b`` with ``a > 0``.

    With ``allow_reflection`` copies with ``a < 0`` are counted as well; a
    subset matching both orientations (only possible for symmetric ``P``)
    is counted once.
    """
    P = _pattern(P)
    V = _as_set(V)
    if P.k < 2:
        raise BadArity("pattern must have at least two points")
    if not P.commensurable:
        # a rational set has rational gap ratios, so it cannot hold an instance
        return 0
    total = _count_direct(V, P)
    if allow_reflection and not is_reflection_symmetric(P):
        total += _count_direct(V, reflect_pattern(P))
    return total


def _count_direct(V: LinePointSet, P: LinePattern) -> int:
    n = len(V)
    if n < P.k:
        return 0
    if P.k == 2:
        return n * (n - 1) // 2
    p1 = P.points[1]
    ratios = [Fraction(p, p1) for p in P.points[2:]]
    return _count_ratio_instances(V.points, ratios)


def enveloping_length(P) -> int:
    """Number of terms of the shortest arithmetic progression containing ``P``."""
    P = _pattern(P)
    if not P.commensurable:
        raise Incommensurable("pattern has irrational gap ratios")
    g = 0
    for a, b in zip(P.points, P.points[1:]):
        g = math.gcd(g, b - a)
    return (P.points[-1] - P.points[0]) // g + 1


def jacob_bounds(n: int, P) -> tuple[int, int]:
    """Lower and upper bounds on the maximum count of a commensurable pattern."""
    P = _pattern(P)
    ell = enveloping_length(P)
    return sap_max(n, ell), sap_max(n, P.k)


# ---------------------------------------------------------------------------
# orderly decompositions


@dataclass(frozen=True)
class OrderlyDecomposition:
    block_sizes: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.block_sizes)

    @property
    def ell(self) -> int:
        return len(self.block_sizes)

    def is_balanced(self) -> bool:
        lo, hi = self.n // self.ell, -(-self.n // self.ell)
        return all(lo <= s <= hi for s in self.block_sizes)

    def block_index(self) -> list[int]:
        """0-based block number for each 0-based position in the sorted set."""
        out = []
        for b, s in enumerate(self.block_sizes):
            out.extend([b] * s)
        return out

    def blocks(self, V) -> list[tuple]:
        pts = list(V)
        out, pos = [], 0
        for s in self.block_sizes:
            out.append(tuple(pts[pos : pos + s]))
            pos += s
        return out


def balanced_sizes(n: int, ell: int) -> list[tuple[int, ...]]:
    """Every balanced size vector for ``n`` points in ``ell`` blocks."""
    q, r = divmod(n, ell)
    out = []
    for big in itertools.combinations(range(ell), r):
        bs = set(big)
        out.append(tuple(q + 1 if b in bs else q for b in range(ell)))
    return out


def orderly_decomposition(V, ell: int, sizes: Sequence[int] | None = None) -> OrderlyDecomposition:
    """Balanced orderly ``ell``-decomposition; larger blocks first unless ``sizes`` is given."""
    if ell < 1:
        raise ValueError("ell must be positive")
    n = len(V) if not isinstance(V, int) else V
    if sizes is None:
        q, r = divmod(n, ell)
        sizes = [q + 1] * r + [q] * (ell - r)
    dec = OrderlyDecomposition(tuple(int(s) for s in sizes))
    if dec.ell != ell or dec.n != n:
        raise ValueError(f"size vector {tuple(sizes)} does not split {n} points into {ell} blocks")
    if not dec.is_balanced():
        raise ValueError(f"size vector {tuple(sizes)} is not balanced")
    return dec


def echelons(P_indices: Sequence[int], D: OrderlyDecomposition) -> frozenset[int]:
    """All ``j`` (1-based) such that the j-th and (j+1)-th points of P lie in block j."""
    idx = sorted(P_indices)
    if len(idx) != D.ell + 1:
        raise ArityMismatch(f"{len(idx)} points do not match {D.ell} blocks")
    where = D.block_index()
    return frozenset(
        j + 1 for j in range(D.ell) if where[idx[j]] == j and where[idx[j + 1]] == j
    )


@dataclass
class FrancisResult:
    optimal: bool
    violations: list = field(default_factory=list)
    sizes: tuple = ()


def francis_check(V, k: int, sizes: Sequence[int] | None = None) -> FrancisResult:
    """Decide optimality for k-term APs through reconstructions from consecutive points.

    Each violation is ``(j, v, w, reason)`` with ``reason`` one of
    ``"missing"`` (reconstruction leaves ``V``) or ``"echelons"`` (the
    reconstruction is also of another echelon).
    """
    V = _as_set(V)
    n = len(V)
    if n < k:
        raise ValueError("francis_check needs n >= k")
    D = orderly_decomposition(V, k - 1, sizes)
    pos = {p: i for i, p in enumerate(V.points)}
    violations = []
    start = 0
    for j0, size in enumerate(D.block_sizes):
        block = V.points[start : start + size]
        start += size
        for v, w in itertools.combinations(block, 2):
            d = w - v
            terms = [v + (m - j0) * d for m in range(k)]
            if not all(t in pos for t in terms):
                violations.append((j0 + 1, v, w, "missing"))
                continue
            if echelons([pos[t] for t in terms], D) != {j0 + 1}:
                violations.append((j0 + 1, v, w, "echelons"))
    return FrancisResult(not violations, violations, D.block_sizes)


# ---------------------------------------------------------------------------
# generators


def gen_ap(n: int, start=0, gap=1) -> LinePointSet:
    if n < 0 or rat(gap) <= 0:
        raise InfeasibleParameters("need n >= 0 and a positive gap")
    start, gap = rat(start), rat(gap)
    return LinePointSet(tuple(start + i * gap for i in range(n)))


def gen_eo(n: int, e_size: int) -> LinePointSet:
    """Union of ``e_size`` consecutive evens and ``n - e_size`` consecutive odds.

    Concentric about 0 or 1 when ``n`` is odd, barycentres one apart when
    ``n`` is even.
    """
    if not 1 <= e_size <= n - 1:
        raise InfeasibleParameters("need 1 <= e_size <= n - 1")
    o_size = n - e_size
    c_even = (e_size - 1) % 2
    c_odd = c_even if n % 2 else c_even + 1
    evens = [c_even - (e_size - 1) + 2 * i for i in range(e_size)]
    odds = [c_odd - (o_size - 1) + 2 * i for i in range(o_size)]
    return LinePointSet.of(evens + odds)


def gen_oliver(n: int, k: int, variant: str = "full") -> LinePointSet:
    """AP of n points, optionally with its second or penultimate point removed."""
    if variant == "full":
        return gen_ap(n)
    if n < 3 or (n % (k - 1)) != 0:
        raise InfeasibleParameters(f"variant {variant!r} requires (k-1) | n")
    if variant == "dropSecond":
        return LinePointSet.of([0] + list(range(2, n + 1)))
    if variant == "dropPenultimate":
        return LinePointSet.of(list(range(n - 1)) + [n])
    raise InfeasibleParameters(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# classification of optimal sets


@dataclass(frozen=True)
class Classification:
    label: str
    optimal: bool
    e_size: int | None = None
    o_size: int | None = None
    centering: str | None = None
    reflected: bool = False

    def __str__(self):
        if self.label == "EO":
            return f"EO({self.e_size},{self.o_size},{self.centering})"
        return self.label


def _unit_gaps(V: LinePointSet) -> list[Fraction]:
    pts = V.points
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    g = min(gaps)
    return [x / g for x in gaps]


def _eo_structure(V: LinePointSet):
    pts = V.points
    g = min(b - a for a, b in zip(pts, pts[1:]))
    xs = [(p - pts[0]) / g for p in pts]
    if any(x.denominator != 1 for x in xs):
        return None
    xs = [int(x) for x in xs]
    evens = [x for x in xs if x % 2 == 0]
    odds = [x for x in xs if x % 2 == 1]
    if not evens or not odds:
        return None
    for part in (evens, odds):
        if any(b - a != 2 for a, b in zip(part, part[1:])):
            return None
    ce = Fraction(evens[0] + evens[-1], 2)
    co = Fraction(odds[0] + odds[-1], 2)
    if len(xs) % 2:
        if ce != co:
            return None
        centering = "concentric"
    else:
        if abs(ce - co) != 1:
            return None
        centering = "nearly-concentric"
    e, o = len(evens), len(odds)
    reflected = e < o
    return max(e, o), min(e, o), centering, reflected


def classify_optimal(V, k: int) -> Classification:
    """Label ``V`` by its structure and decide optimality for k-term APs."""
    V = _as_set(V)
    n = len(V)
    if not n >= k >= 3:
        raise ValueError("classify_optimal needs n >= k >= 3")
    optimal = count_kap(V, k) == sap_max(n, k)
    gaps = _unit_gaps(V)
    if all(x == 1 for x in gaps):
        return Classification("AP", optimal)
    if not optimal:
        return Classification("NotOptimal", False)
    if k == 3:
        eo = _eo_structure(V)
        if eo is not None:
            e, o, centering, reflected = eo
            return Classification("EO", True, e, o, centering, reflected)
    else:
        if gaps[0] == 2 and all(x == 1 for x in gaps[1:]):
            return Classification("AP-minus-second", True)
        if gaps[-1] == 2 and all(x == 1 for x in gaps[:-1]):
            return Classification("AP-minus-penultimate", True)
    return Classification("Unclassified", True)


def is_optimal(V, k: int) -> bool:
    V = _as_set(V)
    return count_kap(V, k) == sap_max(len(V), k)


def hannah_property(V) -> bool:
    """Deleting the leftmost or the rightmost point keeps a 3-AP-optimal set optimal."""
    V = _as_set(V)
    if len(V) < 2:
        return True
    left = LinePointSet(V.points[1:])
    right = LinePointSet(V.points[:-1])
    return is_optimal(left, 3) or is_optimal(right, 3)


def minus_one_property(V, k: int, sizes: Sequence[int] | None = None) -> bool:
    """Dropping the last or first block of a balanced (k-1)-decomposition stays (k-1)-optimal."""
    V = _as_set(V)
    if k < 3:
        raise BadArity("needs k >= 3")
    D = orderly_decomposition(V, k - 1, sizes)
    blocks = D.blocks(V.points)
    head = LinePointSet(tuple(p for b in blocks[:-1] for p in b))
    tail = LinePointSet(tuple(p for b in blocks[1:] for p in b))
    return is_optimal(head, k - 1) and is_optimal(tail, k - 1)


# ---------------------------------------------------------------------------
# the 96k-point construction for the pattern {0, 1, 3}


MARY_PATTERN = (0, 1, 3)

# residue triple (p1, p2, p3) mod 6  ->  (c2, c1, c0) for c2*k^2 + c1*k + c0
MARY_TABLE: dict[tuple[int, int, int], tuple[int, int, int]] = {
    (0, 0, 0): (54, -3, 0),
    (0, 1, 3): (171, 6, 0),
    (0, 3, 3): (270, 9, 0),
    (0, 5, 3): (171, 3, -1),
    (1, 1, 1): (24, -6, 0),
    (1, 3, 1): (24, 2, 0),
    (1, 5, 1): (24, -2, 0),
    (3, 0, 0): (54, 3, 0),
    (3, 1, 3): (189, -6, 0),
    (3, 3, 3): (486, -45, 1),
    (3, 5, 3): (189, -3, 0),
    (5, 1, 5): (24, 2, 0),
    (5, 3, 5): (24, -2, 0),
    (5, 5, 5): (24, -6, 0),
}


def mary_closed_form(triple: tuple[int, int, int], k: int) -> int:
    c2, c1, c0 = MARY_TABLE[triple]
    return c2 * k * k + c1 * k + c0


def construction_mary(k: int) -> LinePointSet:
    """The 96k-point set built from residue classes 0, 1, 3, 5 mod 6."""
    if k < 1:
        raise InfeasibleParameters("k must be a positive integer")
    m0 = [6 * a for a in range(0, 18 * k + 1)]
    m1 = [6 * a + 1 for a in range(12 * k, 24 * k)]
    m3 = [6 * a + 3 for a in range(0, 54 * k - 1)]
    m5 = [6 * a - 1 for a in range(12 * k, 24 * k)]
    V = LinePointSet.of(m0 + m1 + m3 + m5)
    assert len(V) == 96 * k
    return V


def residue_table(k: int) -> dict[tuple[int, int, int], int]:
    """Instances of {0,1,3} in the construction, tallied by residues of (p1,p2,p3) mod 6."""
    V = construction_mary(k)
    xs = np.asarray([int(p) for p in V.points], dtype=np.int64)
    tally: Counter = Counter()
    for i, j in _pair_blocks(len(xs)):
        u, v = xs[i], xs[j]
        w = 3 * v - 2 * u
        hit = _member_mask(xs, w)
        codes = (u[hit] % 6) * 36 + (v[hit] % 6) * 6 + (w[hit] % 6)
        for code, c in zip(*np.unique(codes, return_counts=True)):
            code = int(code)
            tally[(code // 36, (code // 6) % 6, code % 6)] += int(c)
    return {t: tally.get(t, 0) for t in MARY_TABLE} | {
        t: c for t, c in tally.items() if t not in MARY_TABLE
    }
