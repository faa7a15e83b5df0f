"""Point files.

Line mode holds one rational per line (``p/q`` or ``p``).  Plane mode holds
four rationals ``xr xs yr ys`` per line for the point
``(xr + xs*sqrt3) + i*(yr + ys*sqrt3)``.  ``#`` starts a comment.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import ParseError
from .exact import Point2, QSqrt3, format_rat
from .line import LinePointSet
from .plane import PlanePointSet


def _parse_rat(tok: str, path, lineno: int) -> Fraction:
    try:
        num, _, den = tok.partition("/")
        if not num.lstrip("+-").isdigit() or (den and not den.isdigit()):
            raise ValueError
        return Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ParseError(path, lineno, f"not a rational: {tok!r}") from None


def _records(text: str, path):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def detect_mode(text: str) -> str:
    for _, toks in _records(text, "<text>"):
        return "plane" if len(toks) == 4 else "line"
    return "line"


def parse_points(text: str, mode: str | None = None, path="<text>"):
    """Parse a point file body into a LinePointSet or PlanePointSet."""
    mode = mode or detect_mode(text)
    width = 4 if mode == "plane" else 1
    seen: dict = {}
    for lineno, toks in _records(text, path):
        if len(toks) != width:
            raise ParseError(path, lineno, f"expected {width} field(s) in {mode} mode, got {len(toks)}")
        vals = [_parse_rat(t, path, lineno) for t in toks]
        if mode == "plane":
            pt = Point2(QSqrt3(vals[0], vals[1]), QSqrt3(vals[2], vals[3]))
        else:
            pt = vals[0]
        if pt in seen:
            raise ParseError(path, lineno, f"duplicate point (first seen on line {seen[pt]})")
        seen[pt] = lineno
    if mode == "plane":
        return PlanePointSet.of(seen)
    return LinePointSet.of(seen)


def read_points(path, mode: str | None = None):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(path), 0, exc.strerror or str(exc)) from None
    return parse_points(text, mode, str(path))


def parse_pattern_arg(arg: str):
    """A pattern given inline as ``{0,1,3}`` / ``0,1,3``, or as a line-mode file."""
    body = arg.strip()
    if body.startswith("{") or ("," in body and not Path(body).exists()):
        toks = [t.strip() for t in body.strip("{}").split(",") if t.strip()]
        return [_parse_rat(t, "<pattern>", 1) for t in toks]
    return list(read_points(body, "line").points)


def render_points(V, header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    if isinstance(V, PlanePointSet):
        for p in V.points:
            lines.append(" ".join(format_rat(c) for c in p.coords()))
    else:
        for x in V.points:
            lines.append(format_rat(Fraction(x)))
    return "\n".join(lines) + "\n"


def write_points(path, V, header: Iterable[str] = ()) -> None:
    Path(path).write_text(render_points(V, header), encoding="utf-8")
