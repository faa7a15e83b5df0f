"""Verification suites.

Each ``criterion_*`` function checks one acceptance criterion and returns
a list of :class:`Case` records.  Suites group criteria by the result they
exercise; the CLI prints one line per case and exits nonzero on any failure.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .exact import Point2, QSqrt3
from .line import (
    LinePointSet,
    MARY_TABLE,
    classify_optimal,
    construction_mary,
    count_instances,
    count_kap,
    gen_ap,
    gen_eo,
    gen_oliver,
    hannah_property,
    is_optimal,
    jacob_bounds,
    mary_closed_form,
    minus_one_property,
    residue_table,
    sap_max,
)
from .plane import (
    PlanePointSet,
    abrego_bound,
    admits_reconstruction,
    arg_in_reconstruction_set,
    compartments,
    count_equilateral_methods,
    find_concurrent_direction,
    gen_triangular_disk,
    hexagon_with_center,
    katherine_bound,
    katherine_report,
)
from .search import SearchSpec, brute_count_equilateral, canonical_line, enumerate_optimal, line_max_search

LATTICE_CONSTANT = 1 / 3 - math.sqrt(3) / (4 * math.pi)


@dataclass
class Case:
    criterion: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{tag} [{self.criterion}] {self.name}{extra}"


def random_qs3(rng: random.Random, size: int = 6) -> QSqrt3:
    den = rng.choice((1, 1, 2, 3))
    return QSqrt3(Fraction(rng.randint(-size, size), den), Fraction(rng.randint(-size // 2, size // 2), den))


def random_plane_set(rng: random.Random, n: int, size: int = 6) -> PlanePointSet:
    pts: set = set()
    while len(pts) < n:
        pts.add(Point2(random_qs3(rng, size), random_qs3(rng, size)))
    return PlanePointSet.of(pts)


def random_lattice_set(rng: random.Random, n: int, size: int = 4) -> PlanePointSet:
    """Random subsets of a small triangular lattice: dense in equilateral triangles."""
    from .plane import lattice_point

    pool = [(a, b) for a in range(-size, size + 1) for b in range(-size, size + 1)]
    return PlanePointSet.of(lattice_point(a, b) for a, b in rng.sample(pool, n))


# ---------------------------------------------------------------------------
# line criteria


def criterion_1(max_n: int = 200, max_k: int = 8, time_limit: float = 30.0) -> list[Case]:
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for k in range(2, max_k + 1):
        for n in range(k, max_n + 1):
            checked += 1
            c = count_kap(gen_ap(n), k)
            if c != sap_max(n, k):
                bad.append((n, k, c))
    dt = time.perf_counter() - t0
    return [
        Case(1, f"AP counts equal the formula for 2<=k<={max_k}, k<=n<={max_n}", not bad,
             f"{checked} pairs" if not bad else f"mismatches {bad[:5]}"),
        Case(1, f"runtime under {time_limit:g} s", dt < time_limit, f"{dt:.2f} s"),
    ]


def criterion_2(max_n: int = 10, jobs: int = 1, settings=((3, 20), (4, 18)), time_limit: float = 600.0) -> list[Case]:
    cases = []
    t0 = time.perf_counter()
    for k, D in settings:
        for n in range(k, max_n + 1):
            res = line_max_search(SearchSpec("lineMaxAP", n, k=k, diameter=D, jobs=jobs, budget=10**9))
            ok = res.exhaustive and res.maximum == sap_max(n, k)
            cases.append(Case(2, f"exhaustive maximum k={k} n={n} D={D}", ok,
                              f"found {res.maximum}, formula {sap_max(n, k)}, {res.states_explored} sets"))
    dt = time.perf_counter() - t0
    cases.append(Case(2, f"runtime under {time_limit:g} s", dt < time_limit, f"{dt:.2f} s"))
    return cases


def generated_optimal(n: int, k: int) -> dict[str, LinePointSet]:
    """Every member of the generator families that is claimed optimal for k-APs."""
    out = {"AP": gen_ap(n)}
    if k == 3:
        for e in range(1, n):
            out[f"EO({e},{n - e})"] = gen_eo(n, e)
    elif k >= 4 and n >= 3 and n % (k - 1) == 0:
        out["dropSecond"] = gen_oliver(n, k, "dropSecond")
        out["dropPenultimate"] = gen_oliver(n, k, "dropPenultimate")
    return out


def _canon(V: LinePointSet) -> tuple[int, ...]:
    return canonical_line([int(p * math.lcm(*(q.denominator for q in V.points))) for p in V.points])


def criterion_3(settings=((3, range(3, 9), 20), (4, (8, 9), 18)), jobs: int = 1) -> list[Case]:
    cases = []
    for k, ns, D in settings:
        for n in ns:
            found = set(enumerate_optimal(SearchSpec("lineEnumerateOptimal", n, k=k, diameter=D, jobs=jobs, budget=10**9)))
            expected = {_canon(V) for V in generated_optimal(n, k).values()}
            expected = {c for c in expected if c[-1] <= D}
            labels = sorted({str(classify_optimal(LinePointSet.of(w), k)) for w in found})
            ok = found == expected and "Unclassified" not in labels
            detail = f"{len(found)} sets: {', '.join(labels)}"
            if found != expected:
                detail += f"; unexplained {sorted(found - expected)[:3]}, missing {sorted(expected - found)[:3]}"
            cases.append(Case(3, f"optimal sets k={k} n={n} D={D} match the families", ok, detail))
    return cases


def criterion_4(max_k: int = 6, max_n: int = 60) -> list[Case]:
    bad_opt, bad_h, bad_m, checked = [], [], [], 0
    for k in range(3, max_k + 1):
        for n in range(k, max_n + 1):
            for name, V in generated_optimal(n, k).items():
                checked += 1
                if not is_optimal(V, k):
                    bad_opt.append((k, n, name))
                    continue
                if k == 3 and not hannah_property(V):
                    bad_h.append((n, name))
                if not minus_one_property(V, k):
                    bad_m.append((k, n, name))
    return [
        Case(4, "generated sets are optimal", not bad_opt, f"{checked} sets" if not bad_opt else str(bad_opt[:5])),
        Case(4, "end-point deletion keeps 3-AP optimality", not bad_h, str(bad_h[:5]) if bad_h else ""),
        Case(4, "outer blocks of the balanced decomposition stay (k-1)-optimal", not bad_m, str(bad_m[:5]) if bad_m else ""),
    ]


def criterion_5(ks=(1, 2, 3), time_limit: float = 60.0) -> list[Case]:
    cases = []
    t0 = time.perf_counter()
    for k in ks:
        V = construction_mary(k)
        total = count_instances(V, (0, 1, 3))
        cases.append(Case(5, f"construction k={k} count", total == 1728 * k * k - 48 * k,
                          f"{total} vs {1728 * k * k - 48 * k}"))
        table = residue_table(k)
        wrong = {t: c for t, c in table.items() if t not in MARY_TABLE or c != mary_closed_form(t, k)}
        cases.append(Case(5, f"construction k={k} residue table ({len(MARY_TABLE)} rows)",
                          not wrong and sum(table.values()) == total, str(wrong) if wrong else ""))
    dt = time.perf_counter() - t0
    cases.append(Case(5, f"runtime under {time_limit:g} s", dt < time_limit, f"{dt:.2f} s"))
    return cases


def criterion_6(ns=(96, 192, 288)) -> list[Case]:
    cases = []
    for n in ns:
        k = n // 96
        c = count_instances(construction_mary(k), (0, 1, 3))
        lo, hi = jacob_bounds(n, (0, 1, 3))
        ratio_ok = Fraction(c, n * n) == Fraction(3, 16) - Fraction(1, 2 * n)
        cases.append(Case(6, f"sandwich n={n}", lo <= c <= hi and ratio_ok,
                          f"{lo} <= {c} <= {hi}, count/n^2 = {Fraction(c, n * n)}"))
    return cases


# ---------------------------------------------------------------------------
# plane criteria


def criterion_7(trials: int = 1000, max_n: int = 15, disk_max: int = 200, seed: int = 7, jobs=None) -> list[Case]:
    rng = random.Random(seed)
    bad = []
    for t in range(trials):
        n = rng.randint(0, max_n)
        V = random_lattice_set(rng, n) if t % 2 else random_plane_set(rng, n)
        a, b = count_equilateral_methods(V, jobs)
        c = brute_count_equilateral(V)
        if not a == b == c:
            bad.append((t, a, b, c))
    disk_bad = []
    for n in range(1, disk_max + 1):
        V = gen_triangular_disk(n)
        a, b = count_equilateral_methods(V, jobs)
        c = brute_count_equilateral(V)
        if not a == b == c:
            disk_bad.append((n, a, b, c))
    hexa = count_equilateral_methods(hexagon_with_center(), jobs)
    rhombus = PlanePointSet.of([Point2(0, 0), Point2(1, 0), Point2(Fraction(1, 2), QSqrt3(0, Fraction(1, 2))),
                                Point2(Fraction(3, 2), QSqrt3(0, Fraction(1, 2)))])
    rh = count_equilateral_methods(rhombus, jobs)
    return [
        Case(7, f"both routes agree with brute force on {trials} random sets", not bad, str(bad[:3]) if bad else ""),
        Case(7, f"both routes agree with brute force on lattice disks n<={disk_max}", not disk_bad,
             str(disk_bad[:3]) if disk_bad else ""),
        Case(7, "hexagon with center has 8", hexa == (8, 8), str(hexa)),
        Case(7, "rhombus has 2", rh == (2, 2), str(rh)),
    ]


def criterion_8(ns=(7, 50, 200, 1000), time_limit: float = 60.0, jobs=None) -> list[Case]:
    cases = []
    for n in ns:
        V = gen_triangular_disk(n)
        t0 = time.perf_counter()
        rep = katherine_report(V, jobs=jobs)
        dt = time.perf_counter() - t0
        ok = rep.count <= rep.terence <= rep.katherine <= rep.abrego and rep.chain_holds()
        cases.append(Case(8, f"bound chain n={n}", ok,
                          f"{rep.count} <= {rep.deducted} <= {rep.terence} <= {rep.katherine} <= {rep.abrego}, {dt:.2f} s"))
        if n >= 1000:
            cases.append(Case(8, f"n={n} under {time_limit:g} s", dt < time_limit, f"{dt:.2f} s"))
    return cases


def criterion_9(ns=(500, 1000, 2000, 3000), band=(0.17, 0.21), slack: float = 0.002, jobs=None) -> list[Case]:
    ratios = []
    for n in ns:
        a, b = count_equilateral_methods(gen_triangular_disk(n), jobs)
        ratios.append((n, a, Fraction(a, n * n)))
    last_n, _, last = ratios[-1]
    in_band = band[0] <= last <= band[1]
    mono = all(float(r2) >= float(r1) - slack for (_, _, r1), (_, _, r2) in zip(ratios, ratios[1:]))
    shown = ", ".join(f"{n}:{float(r):.6f}" for n, _, r in ratios)
    return [
        Case(9, f"ratio at n={last_n} within [{band[0]}, {band[1]}]", in_band,
             f"{float(last):.6f}, limit {LATTICE_CONSTANT:.6f}"),
        Case(9, "ratio nondecreasing within slack", mono, shown),
    ]


def criterion_10(trials: int = 200, max_n: int = 50, seed: int = 10, tol: float = 1e-9) -> list[Case]:
    rng = random.Random(seed)
    bad = []
    worst = 0.0
    for t in range(trials):
        n = rng.randint(1, max_n)
        V = random_plane_set(rng, n, size=rng.choice((3, 6, 20)))
        res = find_concurrent_direction(V, tol)
        prof = compartments(V, res)
        worst = max(worst, res.residual)
        halves = all(c.left_count == (n + 1) // 2 and c.right_count == n // 2 for c in res.certificates)
        ok = res.residual < tol and halves and sum(prof.sizes) == n and prof.sizes[6] <= 1
        if not ok:
            bad.append((t, n, res.residual, prof.sizes))
    return [Case(10, f"concurrent halving lines on {trials} random sets", not bad,
                 f"worst residual {worst:.2e}" + (f"; failures {bad[:3]}" if bad else ""))]


def _boundary_pairs():
    s3 = QSqrt3(0, 1)
    return [
        ("pi/6", Point2(s3, 1), False),
        ("5pi/6", Point2(-s3, 1), True),
        ("-pi/6", Point2(s3, -1), True),
        ("-5pi/6", Point2(-s3, -1), False),
    ]


def criterion_11(trials: int = 10_000, seed: int = 11, margin: float = 1e-9) -> list[Case]:
    rng = random.Random(seed)
    ends = [k * math.pi / 6 for k in (-5, -1, 1, 5)]
    bad, used = [], 0
    while used < trials:
        u = Point2(random_qs3(rng, 20), random_qs3(rng, 20))
        v = Point2(random_qs3(rng, 20), random_qs3(rng, 20))
        if u == v:
            continue
        z = complex(v) - complex(u)
        a = math.atan2(z.imag, z.real)
        if min(abs(a - e) for e in ends) < margin:
            continue
        used += 1
        if admits_reconstruction(u, v) != arg_in_reconstruction_set(z):
            bad.append((u, v))
    cases = [Case(11, f"exact predicate matches Arg membership on {trials} pairs", not bad, str(bad[:2]) if bad else "")]
    rng2 = random.Random(seed + 1)
    for name, d, expected in _boundary_pairs():
        ok = True
        for _ in range(20):
            u = Point2(random_qs3(rng2), random_qs3(rng2))
            scale = Fraction(rng2.randint(1, 9), rng2.randint(1, 9))
            v = u + d * scale
            ok &= admits_reconstruction(u, v) == expected
        cases.append(Case(11, f"boundary Arg = {name} {'included' if expected else 'excluded'}", ok))
    return cases


# ---------------------------------------------------------------------------
# suites


def suite_cases(suite: str, max_n: int | None = None, jobs: int = 1):
    """Yield Case records for one named suite; ``max_n`` caps the sizes checked."""
    def cap(default):
        return default if max_n is None else min(default, max_n)

    if suite == "eustace":
        yield from criterion_1(max_n=cap(200))
    elif suite == "thomas":
        yield from criterion_1(max_n=cap(200))
        yield from criterion_2(max_n=cap(10), jobs=jobs)
    elif suite == "imogene":
        yield from criterion_3(settings=((3, range(3, cap(8) + 1), 20),), jobs=jobs)
        yield from criterion_4(max_k=3, max_n=cap(60))
    elif suite == "oliver":
        yield from criterion_3(settings=((4, [n for n in (8, 9) if n <= cap(9)], 18),), jobs=jobs)
        yield from criterion_4(max_n=cap(60))
    elif suite == "mary":
        yield from criterion_5(ks=tuple(k for k in (1, 2, 3) if 96 * k <= cap(288)) or (1,))
    elif suite == "jacob":
        yield from criterion_6(ns=tuple(n for n in (96, 192, 288) if n <= cap(288)) or (96,))
    elif suite == "katherine":
        yield from criterion_7(disk_max=cap(200), jobs=jobs)
        yield from criterion_8(ns=tuple(n for n in (7, 50, 200, 1000) if n <= cap(1000)), jobs=jobs)
        if max_n is None or max_n >= 3000:
            yield from criterion_9(jobs=jobs)
        yield from criterion_10(max_n=cap(50))
        yield from criterion_11()
    else:
        raise ValueError(f"unknown suite {suite!r}")


SUITES = ("eustace", "thomas", "imogene", "oliver", "mary", "jacob", "katherine")
