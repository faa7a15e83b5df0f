"""Exact scalars, plane points and order relations over Q(sqrt 3).

Rationals are :class:`fractions.Fraction` (always reduced, hashable on the
reduced form).  :class:`QSqrt3` holds ``a + b*sqrt(3)`` and :class:`Point2`
holds a complex number whose real and imaginary parts are ``QSqrt3``.  This
field is closed under rotation by sixth roots of unity, so every equilateral
triangle computation stays exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import AmbiguousComparison, DegeneratePair

Rat = Fraction

LT, EQ, GT = -1, 0, 1

SQRT3_FLOAT = math.sqrt(3.0)
APPROX_REL_TOL = 1e-9


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _sgn(q) -> int:
    return (q > 0) - (q < 0)


@total_ordering
class QSqrt3:
    """An element ``a + b*sqrt(3)`` of the real quadratic field Q(sqrt 3)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = rat(a)
        self.b = rat(b)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        return None

    def __repr__(self):
        return f"QSqrt3({format_rat(self.a)!r}, {format_rat(self.b)!r})"

    def __str__(self):
        return format_qs3(self)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt3(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def conjugate_field(self) -> QSqrt3:
        """Galois conjugate ``a - b*sqrt(3)``."""
        return QSqrt3(self.a, -self.b)

    def inverse(self) -> QSqrt3:
        norm = self.a * self.a - 3 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return QSqrt3(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return qs3_sign(self - o) < 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT3_FLOAT

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        return qs3_sign(self)

    def approx(self) -> tuple[float, float]:
        """Float value together with a conservative absolute error bound."""
        fa, fb = float(self.a), float(self.b)
        return fa + fb * SQRT3_FLOAT, 1e-15 * (abs(fa) + 2.0 * abs(fb)) + 1e-300


def qs3_sign(v: QSqrt3) -> int:
    """Exact sign of ``a + b*sqrt(3)`` without floating point."""
    sa, sb = _sgn(v.a), _sgn(v.b)
    if sa >= 0 and sb >= 0:
        return 1 if (sa or sb) else 0
    if sa <= 0 and sb <= 0:
        return -1
    # opposite signs: compare a^2 with 3 b^2 (never equal, sqrt 3 is irrational)
    if sa > 0:
        return 1 if v.a * v.a > 3 * v.b * v.b else -1
    return 1 if 3 * v.b * v.b > v.a * v.a else -1


def qs3(value) -> QSqrt3:
    if isinstance(value, QSqrt3):
        return value
    return QSqrt3(value, 0)


def format_qs3(v: QSqrt3) -> str:
    if v.b == 0:
        return format_rat(v.a)
    sign = "-" if v.b < 0 else "+"
    return f"{format_rat(v.a)}{sign}{format_rat(abs(v.b))}√3"


def parse_qs3(text: str) -> QSqrt3:
    """Inverse of :func:`format_qs3`; also accepts ``r3`` or ``sqrt3`` for the radical."""
    s = text.strip().replace(" ", "")
    for tag in ("sqrt3", "r3"):
        s = s.replace(tag, "√3")
    if not s.endswith("√3"):
        return QSqrt3(Fraction(s), 0)
    body = s[: -len("√3")]
    # split at the last +/- that is not a leading sign or an exponent-free fraction sign
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        coef = body if body not in ("", "+", "-") else body + "1"
        return QSqrt3(0, Fraction(coef))
    a_part, b_part = body[:cut], body[cut:]
    if b_part in ("+", "-"):
        b_part += "1"
    return QSqrt3(Fraction(a_part), Fraction(b_part))


SQRT3 = QSqrt3(0, 1)
ZERO = QSqrt3(0, 0)
ONE = QSqrt3(1, 0)
HALF = Fraction(1, 2)


@total_ordering
class Point2:
    """The complex number ``x + i*y`` with ``x, y`` in Q(sqrt 3).

    Comparison operators implement the lexicographic order (real part first).
    """

    __slots__ = ("x", "y")

    def __init__(self, x=0, y=0):
        self.x = qs3(x) if not isinstance(x, QSqrt3) else x
        self.y = qs3(y) if not isinstance(y, QSqrt3) else y

    def __repr__(self):
        return f"Point2({self.x}, {self.y})"

    def __add__(self, other):
        if not isinstance(other, Point2):
            return NotImplemented
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        if not isinstance(other, Point2):
            return NotImplemented
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return Point2(-self.x, -self.y)

    def __mul__(self, other):
        if isinstance(other, Point2):
            return Point2(
                self.x * other.x - self.y * other.y,
                self.x * other.y + self.y * other.x,
            )
        if isinstance(other, (int, Fraction, QSqrt3)):
            return Point2(self.x * other, self.y * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QSqrt3)):
            inv = qs3(other).inverse()
            return Point2(self.x * inv, self.y * inv)
        return NotImplemented

    def conj(self) -> Point2:
        return Point2(self.x, -self.y)

    def norm2(self) -> QSqrt3:
        return self.x * self.x + self.y * self.y

    def __eq__(self, other):
        if not isinstance(other, Point2):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __lt__(self, other):
        if not isinstance(other, Point2):
            return NotImplemented
        return lex_cmp(self, other) == LT

    def __complex__(self):
        return complex(float(self.x), float(self.y))

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x.a, self.x.b, self.y.a, self.y.b)


I_UNIT = Point2(0, 1)
ZETA6 = Point2(HALF, QSqrt3(0, HALF))
ZETA6_CONJ = ZETA6.conj()
OMEGA = Point2(-HALF, QSqrt3(0, HALF))
OMEGA2 = OMEGA.conj()


def lex_cmp(y: Point2, z: Point2) -> int:
    """Lexicographic order on C: real parts first, imaginary parts break ties."""
    s = qs3_sign(y.x - z.x)
    if s:
        return s
    return qs3_sign(y.y - z.y)


@dataclass(frozen=True)
class Direction:
    """A unit complex number, exact when possible.

    ``approx`` is the angle in radians, always populated.  ``exact`` is a
    :class:`Point2` of exact modulus one, or ``None``.
    """

    approx: float
    exact: Point2 | None = None

    @classmethod
    def from_exact(cls, z: Point2) -> Direction:
        if z.norm2() != ONE:
            raise ValueError(f"{z!r} is not a unit vector")
        c = complex(z)
        return cls(math.atan2(c.imag, c.real), z)

    @classmethod
    def from_angle(cls, theta: float) -> Direction:
        return cls(float(theta), None)

    @classmethod
    def rational_near(cls, theta: float, max_denominator: int = 10**7) -> Direction:
        """Exact direction with rational components close to angle ``theta``.

        Uses the rational parametrisation of the unit circle through the
        half-angle tangent.  The tangent is a best rational approximation, so
        the angle error is at most ``2/max_denominator`` and usually far smaller.
        """
        theta = math.remainder(theta, 2 * math.pi)
        if abs(abs(theta) - math.pi) < 1e-300:
            return cls.from_exact(Point2(-1, 0))
        flip = abs(theta) > math.pi / 2
        half = (theta - math.copysign(math.pi, theta)) / 2 if flip else theta / 2
        t = Fraction(math.tan(half)).limit_denominator(max_denominator)
        den = 1 + t * t
        z = Point2((1 - t * t) / den, 2 * t / den)
        if flip:
            z = -z
        return cls.from_exact(z)

    def complex(self) -> complex:
        if self.exact is not None:
            return complex(self.exact)
        return complex(math.cos(self.approx), math.sin(self.approx))

    def rotate(self, factor: Point2) -> Direction:
        """Multiply by an exact unit ``factor`` (e.g. OMEGA)."""
        c = complex(factor)
        ang = math.remainder(self.approx + math.atan2(c.imag, c.real), 2 * math.pi)
        if self.exact is None:
            return Direction(ang)
        return Direction(ang, self.exact * factor)

    def __neg__(self) -> Direction:
        ang = math.remainder(self.approx + math.pi, 2 * math.pi)
        return Direction(ang, None if self.exact is None else -self.exact)


DIR_I = Direction.from_exact(I_UNIT)
DIR_ONE = Direction.from_exact(Point2(1, 0))


def rotation_key(zeta: Direction, y: Point2) -> Point2:
    """``i * conj(zeta) * y``: the image under which ``<=_zeta`` becomes lexicographic."""
    if zeta.exact is None:
        raise AmbiguousComparison("exact key requested for an approximate direction")
    return I_UNIT * zeta.exact.conj() * y


def dir_cmp(zeta: Direction, y: Point2, z: Point2, rel_tol: float = APPROX_REL_TOL) -> int:
    """Compare ``y`` and ``z`` under the rotated order ``<=_zeta``."""
    if zeta.exact is not None:
        d = rotation_key(zeta, y - z)
        s = qs3_sign(d.x)
        return s if s else qs3_sign(d.y)
    if y == z:
        return EQ
    d = complex(y) - complex(z)
    c, s = math.cos(zeta.approx), math.sin(zeta.approx)
    re = s * d.real - c * d.imag
    im = c * d.real + s * d.imag
    if abs(re) <= rel_tol * abs(d):
        raise AmbiguousComparison(
            f"points {y!r} and {z!r} are within tolerance of a tie under angle {zeta.approx!r}"
        )
    return GT if re > 0 else LT


def third_vertices(u: Point2, v: Point2) -> tuple[Point2, Point2]:
    """Third vertices ``w = z6*u + conj(z6)*v`` and ``w' = conj(z6)*u + z6*v``."""
    if u == v:
        raise DegeneratePair("an equilateral triangle needs two distinct vertices")
    return ZETA6 * u + ZETA6_CONJ * v, ZETA6_CONJ * u + ZETA6 * v


def is_equilateral(p: Point2, q: Point2, r: Point2) -> bool:
    a, b, c = (p - q).norm2(), (q - r).norm2(), (r - p).norm2()
    return bool(a) and a == b == c
