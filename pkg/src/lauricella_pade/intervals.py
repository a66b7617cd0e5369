"""Outward-rounded real intervals with exact dyadic endpoints.

Arithmetic on endpoints is exact (Fraction) and the result is then widened
to ``prec`` significant bits.  Transcendental functions go through mpmath's
interval context, which is itself outward rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import iv, libmp

Number = Union[int, Fraction]


def _round(x: Fraction, prec: int, up: bool) -> Fraction:
    """Nearest dyadic with ``prec`` significant bits, rounding down or up."""
    if x == 0:
        return x
    num, den = x.numerator, x.denominator
    e = num.bit_length() - den.bit_length()  # 2^(e-1) < |x| < 2^(e+1)
    shift = prec - e
    if shift >= 0:
        scaled_num, scaled_den = num << shift, den
    else:
        scaled_num, scaled_den = num, den << -shift
    q, r = divmod(scaled_num, scaled_den)  # floor
    if up and r:
        q += 1
    return Fraction(q, 1 << shift) if shift >= 0 else Fraction(q << -shift)


def _from_mpf(x) -> Fraction:
    p, q = libmp.to_rational(x)
    return Fraction(int(p), int(q))


def _decimal(x: Fraction, digits: int, up: bool) -> str:
    """Scientific notation of x rounded toward +inf (up) or -inf."""
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    a = abs(x)
    e = len(str(a.numerator)) - len(str(a.denominator))
    while Fraction(10) ** e > a:
        e -= 1
    while Fraction(10) ** (e + 1) <= a:
        e += 1
    scaled = a * Fraction(10) ** (digits - 1 - e)
    q, r = divmod(scaled.numerator, scaled.denominator)
    # magnitude rounds away from zero when the endpoint moves outward
    if r and (up != (x < 0)):
        q += 1
    ds = str(q)
    if len(ds) > digits:  # carry, e.g. 9.99 -> 10.0
        e += 1
        ds = ds[:digits]
    return f"{sign}{ds[0]}.{ds[1:]}e{e:+d}" if digits > 1 else f"{sign}{ds}e{e:+d}"


class _Prec:
    """Temporarily set mpmath's interval precision."""

    def __init__(self, prec: int):
        self.prec = prec

    def __enter__(self):
        self.saved = iv.prec
        iv.prec = self.prec

    def __exit__(self, *exc):
        iv.prec = self.saved


@dataclass(frozen=True)
class BigInterval:
    lower: Fraction
    upper: Fraction
    prec: int = 256

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    # -- constructors -----------------------------------------------------
    @classmethod
    def exact(cls, x: Number, prec: int = 256) -> "BigInterval":
        x = Fraction(x)
        return cls(x, x, prec)

    @classmethod
    def around(cls, x: Number, radius: Number, prec: int = 256) -> "BigInterval":
        x, r = Fraction(x), Fraction(radius)
        if r < 0:
            raise ValueError("negative radius")
        return cls(x - r, x + r, prec)._rounded()

    @classmethod
    def from_iv(cls, value, prec: int) -> "BigInterval":
        lo, hi = value._mpi_
        return cls(_from_mpf(lo), _from_mpf(hi), prec)

    def to_iv(self):
        with _Prec(self.prec + 10):
            lo = iv.mpf(self.lower.numerator) / self.lower.denominator
            hi = iv.mpf(self.upper.numerator) / self.upper.denominator
            return iv.mpf([lo.a, hi.b])

    def _rounded(self) -> "BigInterval":
        return BigInterval(_round(self.lower, self.prec, False), _round(self.upper, self.prec, True), self.prec)

    # -- queries ------------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def mid(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def contains(self, x: Number | "BigInterval") -> bool:
        if isinstance(x, BigInterval):
            return self.lower <= x.lower and x.upper <= self.upper
        return self.lower <= x <= self.upper

    def overlaps(self, other: "BigInterval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def contains_zero(self) -> bool:
        return self.lower <= 0 <= self.upper

    def positive(self) -> bool:
        return self.lower > 0

    def negative(self) -> bool:
        return self.upper < 0

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"BigInterval([{float(self.lower):.17g}, {float(self.upper):.17g}], prec={self.prec})"

    def to_strings(self, digits: int = 30) -> tuple[str, str]:
        """Decimal endpoints rounded outward to ``digits`` significant digits."""
        return (_decimal(self.lower, digits, up=False), _decimal(self.upper, digits, up=True))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "BigInterval":
        if isinstance(other, BigInterval):
            return other
        return BigInterval.exact(other, self.prec)

    def _p(self, other: "BigInterval") -> int:
        return max(self.prec, other.prec)

    def __add__(self, other) -> "BigInterval":
        o = self._coerce(other)
        return BigInterval(self.lower + o.lower, self.upper + o.upper, self._p(o))._rounded()

    __radd__ = __add__

    def __neg__(self) -> "BigInterval":
        return BigInterval(-self.upper, -self.lower, self.prec)

    def __sub__(self, other) -> "BigInterval":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BigInterval":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BigInterval":
        o = self._coerce(other)
        ps = (self.lower * o.lower, self.lower * o.upper, self.upper * o.lower, self.upper * o.upper)
        return BigInterval(min(ps), max(ps), self._p(o))._rounded()

    __rmul__ = __mul__

    def reciprocal(self) -> "BigInterval":
        if self.contains_zero():
            raise ZeroDivisionError("interval contains zero")
        return BigInterval(1 / self.upper, 1 / self.lower, self.prec)._rounded()

    def __truediv__(self, other) -> "BigInterval":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "BigInterval":
        return self._coerce(other) * self.reciprocal()

    def __abs__(self) -> "BigInterval":
        if self.lower >= 0:
            return self
        if self.upper <= 0:
            return -self
        return BigInterval(Fraction(0), max(-self.lower, self.upper), self.prec)

    def hull(self, other: "BigInterval") -> "BigInterval":
        return BigInterval(min(self.lower, other.lower), max(self.upper, other.upper), self._p(other))

    def log(self) -> "BigInterval":
        if self.lower <= 0:
            raise ValueError("log of an interval reaching zero")
        with _Prec(self.prec + 10):
            return BigInterval.from_iv(iv.log(self.to_iv()), self.prec)._rounded()

    def exp(self) -> "BigInterval":
        with _Prec(self.prec + 10):
            return BigInterval.from_iv(iv.exp(self.to_iv()), self.prec)._rounded()


def log_interval(x: Number, prec: int = 256) -> BigInterval:
    """Enclosure of log x for a positive rational x."""
    return BigInterval.exact(x, prec).log()


__all__ = ["BigInterval", "log_interval"]
