"""Command-line entry point.

Every run prints one JSON report on stdout.  Exact quantities are strings.
Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import Incommensurable, MethodMismatch, PatternCountError
from .exact import format_qs3, format_rat
from .formats import parse_pattern_arg, read_points, render_points, write_points
from .line import (
    LinePointSet,
    classify_optimal,
    construction_mary,
    count_instances,
    count_kap,
    gen_ap,
    gen_eo,
    gen_oliver,
    general_upper_bound,
    jacob_bounds,
    sap_max,
)
from .plane import (
    PlanePointSet,
    abrego_bound,
    choose_rotation,
    compartments,
    count_equilateral,
    count_equilateral_methods,
    find_concurrent_direction,
    gen_triangular_disk,
    katherine_bound,
    terence_bound,
)
from .search import MODES, SearchSpec, default_jobs, run_search, verify_line_witnesses, verify_plane_witnesses
from .verify import SUITES, suite_cases

SCHEMA = 1
BOUND_KEYS = ("general", "apMax", "jacobLower", "jacobUpper", "terence", "katherine", "abrego")


class UsageError(PatternCountError):
    pass


def _s(v):
    """Serialise an exact value."""
    if v is None:
        return None
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return format_rat(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _digest(args: argparse.Namespace, inputs: list[str]) -> str:
    h = hashlib.sha256()
    skip = {"func", "jobs", "output", "emit_plot"}
    for key in sorted(vars(args)):
        if key not in skip:
            h.update(f"{key}={getattr(args, key)!r}\n".encode())
    for body in inputs:
        h.update(body.encode())
    return "sha256:" + h.hexdigest()


def _report(command: str) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "inputs": None,
        "n": None,
        "k": None,
        "pattern": None,
        "counts": {},
        "bounds": {k: None for k in BOUND_KEYS},
        "optimal": None,
        "classification": None,
        "witnesses": [],
        "residuals": {},
        "timing": None,
    }


def _pattern_strings(P) -> list[str]:
    return [format_rat(Fraction(p)) for p in P]


def _line_input(path) -> LinePointSet:
    V = read_points(path, "line")
    return V


def _plane_input(path) -> PlanePointSet:
    return read_points(path, "plane")


# ---------------------------------------------------------------------------
# subcommands


def cmd_count_ap(args, rep):
    V = _line_input(args.input)
    n, k = len(V), args.k
    c = count_kap(V, k)
    rep.update(inputs=[render_points(V)], n=n, k=k)
    rep["counts"]["kap"] = c
    if n >= 1:
        rep["bounds"]["general"] = general_upper_bound(n, k)
        rep["bounds"]["apMax"] = sap_max(n, k)
        rep["optimal"] = c == sap_max(n, k)
    if n >= k >= 3:
        rep["classification"] = str(classify_optimal(V, k))
    return 0


def cmd_count_pattern(args, rep):
    V = _line_input(args.input)
    P = parse_pattern_arg(args.pattern)
    n = len(V)
    c = count_instances(V, P, args.allow_reflection)
    rep.update(inputs=[render_points(V)], n=n, k=len(P), pattern=_pattern_strings(sorted(P)))
    rep["counts"]["pattern"] = c
    rep["bounds"]["general"] = general_upper_bound(n, len(P)) if n >= 1 else None
    try:
        lo, hi = jacob_bounds(n, P)
        rep["bounds"]["jacobLower"], rep["bounds"]["jacobUpper"] = lo, hi
    except Incommensurable:
        pass
    return 0


def cmd_count_eq(args, rep):
    V = _plane_input(args.input)
    n = len(V)
    a, b = count_equilateral_methods(V, args.jobs)
    rep.update(inputs=[render_points(V)], n=n, k=3)
    rep["counts"].update(equilateral=a, methodA=a, methodB=b)
    rep["bounds"]["katherine"] = katherine_bound(n)
    rep["bounds"]["abrego"] = abrego_bound(n)
    if a != b:
        raise MethodMismatch(f"route (a) gave {a}, route (b) gave {b}")
    return 0


def _plot_bound(args, path):
    N = args.n
    with open(path, "w", encoding="utf-8") as fh:
        if args.eq:
            step = 1 if N <= 500 else max(1, N // 50)
            fh.write("n\tkatherine\tabrego\tlattice_disk\n")
            for n in range(1, N + 1):
                lat = ""
                if n % step == 0 or n == N:
                    lat = str(count_equilateral(gen_triangular_disk(n), args.jobs))
                fh.write(f"{n}\t{katherine_bound(n)}\t{abrego_bound(n)}\t{lat}\n")
        elif args.pattern:
            P = parse_pattern_arg(args.pattern)
            fh.write("n\tjacob_lower\tjacob_upper\n")
            for n in range(1, N + 1):
                lo, hi = jacob_bounds(n, P)
                fh.write(f"{n}\t{lo}\t{hi}\n")
        else:
            fh.write("n\tap_max\n")
            for n in range(1, N + 1):
                fh.write(f"{n}\t{sap_max(n, args.k)}\n")


def cmd_bound(args, rep):
    n = args.n
    if n < 0:
        raise UsageError("--n must be nonnegative")
    chosen = sum(x is not None and x is not False for x in (args.k, args.eq or None, args.pattern))
    if chosen != 1:
        raise UsageError("bound needs exactly one of --k, --eq, --pattern")
    rep["n"] = n
    if args.eq:
        rep["k"] = 3
        rep["bounds"]["katherine"] = katherine_bound(n)
        rep["bounds"]["abrego"] = abrego_bound(n)
    elif args.pattern:
        P = parse_pattern_arg(args.pattern)
        rep["k"], rep["pattern"] = len(P), _pattern_strings(sorted(P))
        rep["bounds"]["general"] = general_upper_bound(n, len(P))
        try:
            rep["bounds"]["jacobLower"], rep["bounds"]["jacobUpper"] = jacob_bounds(n, P)
        except Incommensurable:
            pass
    else:
        rep["k"] = args.k
        rep["bounds"]["general"] = general_upper_bound(n, args.k)
        rep["bounds"]["apMax"] = sap_max(n, args.k)
    if args.emit_plot:
        _plot_bound(args, args.emit_plot)
    return 0


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for --kind {args.kind}")


def cmd_gen(args, rep):
    kind = args.kind
    if kind == "ap":
        _need(args, "n")
        V = gen_ap(args.n, Fraction(args.start), Fraction(args.gap))
    elif kind == "eo":
        _need(args, "n", "e_size")
        V = gen_eo(args.n, args.e_size)
    elif kind == "oliver":
        _need(args, "n", "k")
        V = gen_oliver(args.n, args.k, args.variant)
    elif kind == "mary":
        _need(args, "k")
        V = construction_mary(args.k)
    else:
        _need(args, "n")
        V = gen_triangular_disk(args.n)
    header = [f"patterncount gen --kind {kind}"]
    body = render_points(V, header)
    rep.update(n=len(V), k=args.k)
    rep["inputs"] = [body]
    if args.output:
        write_points(args.output, V, header)
        rep["witnesses"] = [args.output]
        return 0
    sys.stdout.write(body)
    return None


def cmd_search(args, rep):
    pattern = tuple(parse_pattern_arg(args.pattern)) if args.pattern else None
    mode = args.mode
    if mode == "lineMaxPattern" and pattern is None:
        raise UsageError("lineMaxPattern needs --pattern")
    if mode in ("lineMaxAP", "lineEnumerateOptimal") and args.k is None:
        raise UsageError(f"{mode} needs --k")
    diameter = args.diameter if args.diameter is not None else (args.n - 1 if mode.startswith("line") else 0)
    spec = SearchSpec(
        mode=mode, n=args.n, k=args.k if args.k is not None else (len(pattern) if pattern else None),
        pattern=pattern, diameter=diameter, radius=args.radius, jobs=args.jobs,
        budget=args.budget, allow_reflection=args.allow_reflection,
    )
    res = run_search(spec)
    if mode == "planeLatticeMax":
        ok = verify_plane_witnesses(res)
        rep["witnesses"] = [[[str(a), str(b)] for a, b in w] for w in res.witnesses]
        rep["bounds"]["katherine"] = katherine_bound(args.n)
        rep["bounds"]["abrego"] = abrego_bound(args.n)
    else:
        ok = verify_line_witnesses(spec, res)
        rep["witnesses"] = [[str(x) for x in w] for w in res.witnesses]
        if spec.k is not None and spec.k >= 2:
            rep["bounds"]["general"] = general_upper_bound(args.n, spec.k)
        if mode != "lineMaxPattern":
            rep["bounds"]["apMax"] = sap_max(args.n, args.k)
            rep["optimal"] = res.maximum == sap_max(args.n, args.k)
    rep.update(n=args.n, k=spec.k, pattern=_pattern_strings(pattern) if pattern else None)
    rep["counts"].update(maximum=res.maximum, statesExplored=res.states_explored)
    rep["search"] = {
        "mode": mode,
        "diameter": _s(diameter) if mode.startswith("line") else None,
        "radius": _s(args.radius) if mode == "planeLatticeMax" else None,
        "exhaustive": res.exhaustive, "witnessesVerified": ok, "notes": res.notes,
    }
    return 0 if ok else 1


def cmd_halving(args, rep):
    V = _plane_input(args.input)
    n = len(V)
    res = find_concurrent_direction(V, args.tolerance)
    prof = choose_rotation(V, compartments(V, res))
    rep.update(inputs=[render_points(V)], n=n)
    d = res.direction
    rep["halving"] = {
        "direction": {"angle": repr(d.approx),
                      "exact": [format_qs3(d.exact.x), format_qs3(d.exact.y)] if d.exact else None},
        "intersection": [repr(res.intersection.real), repr(res.intersection.imag)],
        "certificates": [
            {"median": [format_qs3(c.median.x), format_qs3(c.median.y)],
             "left": _s(c.left_count), "right": _s(c.right_count)}
            for c in res.certificates
        ],
        "compartments": [_s(s) for s in prof.sizes],
        "rotation": prof.rotation_angle,
        "outsideAByRotation": [_s(c) for c in prof.outside_a_by_rotation],
    }
    rep["residuals"]["concurrency"] = repr(res.residual)
    rep["bounds"]["terence"] = terence_bound(V, prof)
    rep["bounds"]["katherine"] = katherine_bound(n)
    rep["bounds"]["abrego"] = abrego_bound(n)
    ok = res.residual < args.tolerance and sum(prof.sizes) == n and prof.sizes[6] <= 1
    return 0 if ok else 1


def cmd_verify(args, rep):
    cases = []
    for case in suite_cases(args.suite, args.max_n, args.jobs):
        print(case.line(), file=sys.stderr, flush=True)
        cases.append(case)
    rep["verify"] = {
        "suite": args.suite,
        "maxN": _s(args.max_n),
        "cases": [{"criterion": _s(c.criterion), "name": c.name, "passed": c.passed, "detail": c.detail}
                  for c in cases],
        "passed": _s(sum(c.passed for c in cases)),
        "failed": _s(sum(not c.passed for c in cases)),
    }
    return 0 if all(c.passed for c in cases) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="patterncount", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def jobs(sp):
        sp.add_argument("--jobs", type=int, default=default_jobs(),
                        help="worker count (default: $PATTERNCOUNT_JOBS or 1)")

    s = sub.add_parser("count-ap", help="count k-term arithmetic progressions in a line point file")
    s.add_argument("--input", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_count_ap)

    s = sub.add_parser("count-pattern", help="count similar copies of a line pattern")
    s.add_argument("--input", required=True)
    s.add_argument("--pattern", required=True, help="pattern file or inline set such as {0,1,3}")
    s.add_argument("--allow-reflection", action="store_true")
    s.set_defaults(func=cmd_count_pattern)

    s = sub.add_parser("count-eq", help="count equilateral triangles in a plane point file")
    s.add_argument("--input", required=True)
    jobs(s)
    s.set_defaults(func=cmd_count_eq)

    s = sub.add_parser("bound", help="closed-form bounds for n points")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--eq", action="store_true")
    s.add_argument("--pattern")
    s.add_argument("--emit-plot", metavar="PATH", help="write n-vs-bound curves (1..n) as TSV")
    jobs(s)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("gen", help="write an extremal configuration as a point file")
    s.add_argument("--kind", required=True, choices=("ap", "eo", "oliver", "mary", "tridisk"))
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--e-size", type=int)
    s.add_argument("--variant", default="full", choices=("full", "dropSecond", "dropPenultimate"))
    s.add_argument("--start", default="0")
    s.add_argument("--gap", default="1")
    s.add_argument("--output", help="point file to write; without it the file goes to stdout")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("search", help="exhaustive or heuristic extremal search")
    s.add_argument("--mode", required=True, choices=MODES)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--pattern")
    s.add_argument("--allow-reflection", action="store_true")
    s.add_argument("--diameter", type=int)
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--budget", type=int, default=5_000_000)
    jobs(s)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("halving", help="three concurrent halving lines and the compartment bound")
    s.add_argument("--input", required=True)
    s.add_argument("--tolerance", type=float, default=1e-9)
    s.set_defaults(func=cmd_halving)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", required=True, choices=SUITES)
    s.add_argument("--max-n", type=int)
    jobs(s)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = _report(args.command)
    t0 = time.perf_counter()
    try:
        code = args.func(args, rep)
    except MethodMismatch as exc:
        print(f"patterncount: {exc}", file=sys.stderr)
        return 1
    except (PatternCountError, ValueError, OSError) as exc:
        print(f"patterncount: {exc}", file=sys.stderr)
        return 2
    if code is None:
        return 0
    rep["inputs"] = {"digest": _digest(args, rep["inputs"] or [])}
    rep["counts"] = {k: _s(v) for k, v in rep["counts"].items()}
    rep["bounds"] = {k: _s(v) for k, v in rep["bounds"].items()}
    rep["n"], rep["k"] = _s(rep["n"]), _s(rep["k"])
    rep["timing"] = {"seconds": f"{time.perf_counter() - t0:.6f}"}
    json.dump(rep, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
