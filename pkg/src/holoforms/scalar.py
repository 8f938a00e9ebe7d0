"""Exact Gaussian rationals.

Rationals are plain :class:`fractions.Fraction` values, which already keep
a positive denominator and a reduced numerator.  :class:`Scalar` pairs two
of them into ``re + im*i`` and is the coefficient type used everywhere else
in the package.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction

ScalarLike = Union["Scalar", int, Fraction, str]


class ScalarError(ZeroDivisionError):
    """Raised for division by an exact zero."""


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RAT_RE = _re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ScalarError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


class Scalar:
    """An exact complex number ``re + im*i`` with rational parts.

    Instances are immutable and always stored in canonical form, so equality
    and hashing are structural.  Plain ints and Fractions mix freely with
    Scalars in arithmetic and compare equal to the corresponding real Scalar.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("Scalar(re=Scalar, im=...) is ambiguous")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        if isinstance(re, str) and not im:
            s = parse_scalar(re)
            object.__setattr__(self, "re", s.re)
            object.__setattr__(self, "im", s.im)
            return
        object.__setattr__(self, "re", to_fraction(re))
        object.__setattr__(self, "im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.re, self.im))

    # -- construction helpers -------------------------------------------
    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar._raw(to_fraction(value), _ZERO)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Scalar):
            return Scalar._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return Scalar._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(other - self.re, -self.im)
        return NotImplemented

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if not other.im:
                if not self.im:
                    return Scalar._raw(self.re * other.re, _ZERO)
                return Scalar._raw(self.re * other.re, self.im * other.re)
            if not self.im:
                return Scalar._raw(self.re * other.re, self.re * other.im)
            return Scalar._raw(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other) if not isinstance(other, Scalar) else other
        if not other:
            raise ScalarError("division by zero scalar")
        if not other.im:
            return Scalar._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def inverse(self) -> "Scalar":
        n = self.abs2()
        if not n:
            raise ScalarError("inverse of zero scalar")
        return Scalar._raw(self.re / n, -self.im / n)

    def conj(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im) if self.im else self

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar('{format_scalar(self)}')"


_ZERO = Fraction(0)
ZERO = Scalar._raw(_ZERO, _ZERO)
ONE = Scalar._raw(Fraction(1), _ZERO)
I = Scalar._raw(_ZERO, Fraction(1))


def format_scalar(z: Scalar) -> str:
    """Text encoding: ``re``, ``im i`` or ``re+im i`` (e.g. ``1/2-3/4i``)."""
    if not z.im:
        return format_rational(z.re)
    if z.im == 1:
        im = "i"
    elif z.im == -1:
        im = "-i"
    else:
        im = format_rational(z.im) + "i"
    if not z.re:
        return im
    sep = "" if im.startswith("-") else "+"
    return format_rational(z.re) + sep + im


_SCALAR_RE = _re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?\d+(?:/\d+)?)
        (?:\s*(?P<sign>[+-])\s*(?P<im1>\d+(?:/\d+)?)?\s*i)?
      |
        (?P<im2>[+-]?(?:\d+(?:/\d+)?)?)\s*i
    )\s*$""",
    _re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar`."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"not a scalar: {text!r}")
    if m.group("re") is not None:
        re_part = parse_rational(m.group("re"))
        if m.group("sign") is None:
            return Scalar._raw(re_part, _ZERO)
        mag = parse_rational(m.group("im1")) if m.group("im1") else Fraction(1)
        return Scalar._raw(re_part, mag if m.group("sign") == "+" else -mag)
    im = m.group("im2")
    if im in ("", "+"):
        return Scalar._raw(_ZERO, Fraction(1))
    if im == "-":
        return Scalar._raw(_ZERO, Fraction(-1))
    return Scalar._raw(_ZERO, parse_rational(im))


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def scalar_arith(a: ScalarLike, b: ScalarLike | None, op: str) -> Scalar:
    """Apply ``op`` in {add, sub, mul, div, conj, neg}; unary ops ignore ``b``."""
    a = Scalar.coerce(a if not isinstance(a, str) else parse_scalar(a))
    if op == "conj":
        return a.conj()
    if op == "neg":
        return -a
    if op not in _OPS:
        raise ValueError(f"unknown scalar operation {op!r}")
    b = Scalar.coerce(b if not isinstance(b, str) else parse_scalar(b))
    return _OPS[op](a, b)
