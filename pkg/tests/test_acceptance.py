"""Acceptance criteria, one test each, at the stated sizes and tolerances.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible even under
pytest's output capture).  Run directly with ``python3 tests/test_acceptance.py``
for the same lines without pytest.
"""
import sys
import time

import pytest

from patterncount import verify

CRITERIA = {
    1: ("AP counts equal the formula, k<=8, n<=200, < 30 s", lambda: verify.criterion_1(200, 8, 30.0)),
    2: ("exhaustive line maxima, k=3 D=20 and k=4 D=18, n<=10", lambda: verify.criterion_2(10)),
    3: ("optimal sets are exactly the generator families", lambda: verify.criterion_3()),
    4: ("end-point and outer-block properties, k<=6, n<=60", lambda: verify.criterion_4(6, 60)),
    5: ("96k-point construction totals and residue table, k<=3", lambda: verify.criterion_5((1, 2, 3), 60.0)),
    6: ("sandwich bounds and exact 3/16 - 1/(2n) ratio", lambda: verify.criterion_6((96, 192, 288))),
    7: ("equilateral routes agree with brute force", lambda: verify.criterion_7(1000, 15, 200)),
    8: ("bound chain on lattice disks, n=1000 < 60 s", lambda: verify.criterion_8((7, 50, 200, 1000), 60.0)),
    9: ("lattice-disk ratio band and monotonicity", lambda: verify.criterion_9((500, 1000, 2000, 3000), (0.17, 0.21), 0.002)),
    10: ("concurrent halving lines on 200 random sets", lambda: verify.criterion_10(200, 50, tol=1e-9)),
    11: ("exact reconstruction predicate vs Arg membership", lambda: verify.criterion_11(10_000)),
}


def evaluate(number):
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    cases = fn()
    dt = time.perf_counter() - t0
    ok = bool(cases) and all(c.passed for c in cases)
    failing = [c.line() for c in cases if not c.passed]
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  [{dt:.1f} s]"
    return ok, line, cases, failing


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line, cases, failing = evaluate(number)
    with capsys.disabled():
        print(f"\n{line}")
        for c in cases:
            print(f"    {c.line()}")
    assert ok, "\n".join(failing)


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for ok, line, cases, failing in results:
        print(line)
        for f in failing:
            print(f"    {f}")
    sys.exit(0 if all(r[0] for r in results) else 1)
