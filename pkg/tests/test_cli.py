import json
from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from patterncount.cli import main
from patterncount.errors import ParseError
from patterncount.exact import Point2, QSqrt3
from patterncount.formats import parse_pattern_arg, parse_points, read_points, render_points
from patterncount.line import LinePointSet, construction_mary, gen_eo
from patterncount.plane import PlanePointSet, gen_triangular_disk

from conftest import points, rationals


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_construction_round_trip_count(tmp_path, capsys):
    f = tmp_path / "mary.txt"
    code, rep = report(capsys, "gen", "--kind", "mary", "--k", "1", "--output", str(f))
    assert code == 0 and rep["n"] == "96"
    assert read_points(f) == construction_mary(1)
    code, rep = report(capsys, "count-pattern", "--input", str(f), "--pattern", "{0,1,3}")
    assert code == 0
    assert rep["counts"]["pattern"] == "1680"
    assert (rep["bounds"]["jacobLower"], rep["bounds"]["jacobUpper"]) == ("1488", "2256")


def test_bound_eq(capsys):
    code, rep = report(capsys, "bound", "--n", "7", "--eq")
    assert code == 0
    assert rep["bounds"]["katherine"] == "9" and rep["bounds"]["abrego"] == "9"


def test_bound_needs_one_family(capsys):
    code, out, err = run(capsys, "bound", "--n", "7")
    assert code == 2 and "exactly one" in err


def test_gen_to_stdout_reparses(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "tridisk", "--n", "19")
    assert code == 0
    assert parse_points(out) == gen_triangular_disk(19)
    code, out, _ = run(capsys, "gen", "--kind", "eo", "--n", "9", "--e-size", "3")
    assert parse_points(out) == gen_eo(9, 3)
    code, out, _ = run(capsys, "gen", "--kind", "ap", "--n", "4", "--start", "1/2", "--gap", "2/3")
    assert parse_points(out).points == (Fraction(1, 2), Fraction(7, 6), Fraction(11, 6), Fraction(5, 2))


def test_count_ap_report(tmp_path, capsys):
    f = tmp_path / "v.txt"
    f.write_text("# seven points\n-4\n-2\n-1\n0\n1\n2\n4  # last\n")
    code, rep = report(capsys, "count-ap", "--input", str(f), "--k", "3")
    assert code == 0
    assert rep["counts"]["kap"] == "9" and rep["optimal"] is True
    assert rep["classification"] == "EO(5,2,concentric)"


def test_count_eq_deterministic(tmp_path, capsys):
    f = tmp_path / "d.txt"
    f.write_text(render_points(gen_triangular_disk(50)))
    code, a = report(capsys, "count-eq", "--input", str(f))
    code2, b = report(capsys, "count-eq", "--input", str(f), "--jobs", "3")
    assert code == code2 == 0
    assert a["counts"]["equilateral"] == "471"
    a.pop("timing"), b.pop("timing")
    assert a == b


def test_parse_errors_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("0\n1/2\n2/4\n")
    code, out, err = run(capsys, "count-ap", "--input", str(f), "--k", "3")
    assert code == 2 and f"{f}:3" in err and "duplicate" in err
    f.write_text("0\n1/0\n")
    code, out, err = run(capsys, "count-ap", "--input", str(f), "--k", "3")
    assert code == 2 and f"{f}:2" in err
    code, out, err = run(capsys, "count-eq", "--input", str(tmp_path / "missing.txt"))
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_plane_file_needs_four_fields(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("0 0 0 0\n1 0 0\n")
    with pytest.raises(ParseError) as exc:
        read_points(f, "plane")
    assert exc.value.line == 2


def test_halving_command(tmp_path, capsys):
    f = tmp_path / "d.txt"
    f.write_text(render_points(gen_triangular_disk(30)))
    code, rep = report(capsys, "halving", "--input", str(f))
    assert code == 0
    h = rep["halving"]
    assert sum(int(s) for s in h["compartments"]) == 30
    assert all(c["left"] == "15" for c in h["certificates"])
    assert int(rep["bounds"]["terence"]) <= int(rep["bounds"]["katherine"])


def test_search_command(capsys):
    code, rep = report(capsys, "search", "--mode", "lineMaxAP", "--n", "7", "--k", "3", "--diameter", "12")
    assert code == 0
    assert rep["counts"]["maximum"] == "9"
    assert rep["search"]["exhaustive"] is True and rep["search"]["witnessesVerified"] is True
    code, rep = report(capsys, "search", "--mode", "planeLatticeMax", "--n", "4", "--radius", "2")
    assert rep["counts"]["maximum"] == "2"


def test_verify_command(capsys):
    code, out, err = run(capsys, "verify", "--suite", "jacob")
    assert code == 0
    rep = json.loads(out)
    assert rep["verify"]["failed"] == "0"
    assert err.count("PASS") == 3


def test_jobs_env_default(monkeypatch):
    from patterncount.cli import build_parser

    monkeypatch.setenv("PATTERNCOUNT_JOBS", "3")
    args = build_parser().parse_args(["count-eq", "--input", "x"])
    assert args.jobs == 3


def test_emit_plot(tmp_path, capsys):
    f = tmp_path / "plot.tsv"
    code, _ = report(capsys, "bound", "--n", "12", "--eq", "--emit-plot", str(f))
    rows = f.read_text().splitlines()
    assert rows[0].split("\t") == ["n", "katherine", "abrego", "lattice_disk"]
    assert rows[7].split("\t") == ["7", "9", "9", "8"]


def test_inline_pattern_forms():
    assert parse_pattern_arg("{0,1,3}") == [0, 1, 3]
    assert parse_pattern_arg("0, 1/2, 3") == [0, Fraction(1, 2), 3]


@given(st.sets(rationals(10**6, 10**3), max_size=20))
def test_line_render_round_trip(xs):
    V = LinePointSet.of(xs)
    assert parse_points(render_points(V), "line") == V


@given(st.sets(points(10**3, 50), max_size=15))
def test_plane_render_round_trip(pts):
    V = PlanePointSet.of(pts)
    assert parse_points(render_points(V, ["header"]), "plane") == V
