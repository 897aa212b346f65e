"""Exact Gaussian rationals a + bi with a, b in Q."""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt
from typing import Union

Number = Union[int, Fraction, "Scalar"]

_ZERO = Fraction(0)


class Scalar:
    """Immutable Gaussian rational."""

    __slots__ = ("re", "im", "_nz", "_hash")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0) -> None:
        if type(re) is not Fraction:
            re = Fraction(re)
        if type(im) is not Fraction:
            im = Fraction(im)
        self.re = re
        self.im = im
        self._nz = re._numerator != 0 or im._numerator != 0
        self._hash = None

    @staticmethod
    def of(x: Number) -> Scalar:
        if type(x) is Scalar:
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        raise TypeError(f"cannot convert {x!r} to Scalar")

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: Number) -> Scalar:
        if type(other) is not Scalar:
            if isinstance(other, (int, Fraction)):
                return Scalar(self.re + other, self.im)
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Number) -> Scalar:
        if type(other) is not Scalar:
            if isinstance(other, (int, Fraction)):
                return Scalar(self.re - other, self.im)
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Number) -> Scalar:
        return Scalar.of(other) - self

    def __neg__(self) -> Scalar:
        return Scalar(-self.re, -self.im)

    def __pos__(self) -> Scalar:
        return self

    def __mul__(self, other: Number) -> Scalar:
        if type(other) is not Scalar:
            if isinstance(other, (int, Fraction)):
                return Scalar(self.re * other, self.im * other)
            return NotImplemented
        if not other._nz or not self._nz:
            return ZERO
        if not self.im._numerator and not other.im._numerator:
            return Scalar(self.re * other.re)
        return Scalar(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other: Number) -> Scalar:
        if type(other) is not Scalar:
            if isinstance(other, (int, Fraction)):
                if not other:
                    raise ZeroDivisionError("Scalar division by zero")
                return Scalar(self.re / other, self.im / other)
            return NotImplemented
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> Scalar:
        return Scalar.of(other) * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> Scalar:
        return Scalar(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2."""
        return self.re * self.re + self.im * self.im

    # predicates -------------------------------------------------------------

    def __bool__(self) -> bool:
        return self._nz

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other: object) -> bool:
        if type(other) is Scalar:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.re, self.im)) if self.im else hash(self.re)
        return self._hash

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    # formatting -------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)})"

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z: Scalar) -> str:
    """Canonical text: ``p/q``, ``p/qi`` or ``p/q+r/si``."""
    if not z.im:
        return format_fraction(z.re)
    im = format_fraction(abs(z.im)) + "i"
    if im == "1i":
        im = "i"
    if not z.re:
        return ("-" if z.im < 0 else "") + im
    return format_fraction(z.re) + ("-" if z.im < 0 else "+") + im


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?P<im>[+-](?:\d+(?:/\d+)?)?i)?|(?P<pure>[+-]?(?:\d+(?:/\d+)?)?i))$")


def parse_scalar(text: str | int) -> Scalar:
    """Inverse of :func:`format_scalar`; also accepts plain integers."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Scalar(text)
    if not isinstance(text, str):
        raise ValueError(f"not a scalar: {text!r}")
    s = text.replace(" ", "")
    m = _SCALAR_RE.match(s)
    if not m:
        raise ValueError(f"not a scalar: {text!r}")

    def imag(part: str) -> Fraction:
        body = part[:-1]
        if body in ("", "+"):
            return Fraction(1)
        if body == "-":
            return Fraction(-1)
        return Fraction(body)

    if m.group("pure") is not None:
        return Scalar(0, imag(m.group("pure")))
    re_part = Fraction(m.group("re"))
    im_part = imag(m.group("im")) if m.group("im") else Fraction(0)
    return Scalar(re_part, im_part)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z: Scalar) -> Scalar | None:
    """A square root of ``z`` in Q(i) when one exists.

    The returned root has positive real part, or zero real part and
    nonnegative imaginary part, so the choice is deterministic.
    """
    if not z:
        return ZERO
    modulus = rational_sqrt(z.norm2())
    if modulus is None:
        return None
    x = rational_sqrt((modulus + z.re) / 2)
    y = rational_sqrt((modulus - z.re) / 2)
    if x is None or y is None:
        return None
    if z.im < 0:
        y = -y
    root = Scalar(x, y)
    if root.re < 0 or (root.re == 0 and root.im < 0):
        root = -root
    return root


def gaussian_with_norm(q: Fraction, search_limit: int = 10 ** 6) -> Scalar | None:
    """Some y in Q(i) with |y|^2 = q, found by a bounded two-squares search."""
    q = Fraction(q)
    if q < 0:
        return None
    if q == 0:
        return ZERO
    # q = m / d^2 with m = numerator * denominator
    d = q.denominator
    m = q.numerator * d
    r = rational_sqrt(Fraction(m))
    if r is not None:
        return Scalar(Fraction(r) / d)
    top = isqrt(m)
    if top > search_limit:
        return None
    for a in range(1, top + 1):
        b2 = m - a * a
        b = isqrt(b2)
        if b * b == b2:
            return Scalar(Fraction(a, d), Fraction(b, d))
    return None
