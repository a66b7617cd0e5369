"""Rational helpers on top of :class:`fractions.Fraction`.

Fractions are always in lowest terms with a positive denominator, which is
exactly the canonical form we need; this module only adds parsing,
canonical string output and a few number-theoretic helpers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

RationalLike = Union[int, Fraction, str]


class RationalParseError(ValueError):
    """Raised for malformed rational literals such as ``"1/0"``."""


def to_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise RationalParseError("empty rational literal")
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            p, q = int(num), int(den)
        except ValueError as exc:
            raise RationalParseError(f"malformed rational {text!r}") from exc
        if q == 0:
            raise RationalParseError(f"zero denominator in {text!r}")
        return Fraction(p, q)
    try:
        return Fraction(int(s))
    except ValueError as exc:
        raise RationalParseError(f"malformed rational {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical ``"p/q"`` (or ``"p"`` when q = 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def den(xs: Iterable[RationalLike] | RationalLike) -> int:
    """Least positive integer clearing every denominator in ``xs``."""
    if isinstance(xs, (int, Fraction, str)):
        xs = [xs]
    d = 1
    for x in xs:
        d = math.lcm(d, to_rational(x).denominator)
    return d


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of ``|n|``; fine for desk-scale inputs."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n)) if abs(n) > 1 else []


def euler_phi(n: int) -> int:
    result = n
    for p in prime_divisors(n):
        result = result // p * (p - 1)
    return result


def valuation(x: RationalLike, p: int) -> float | int:
    """p-adic valuation; ``math.inf`` for zero."""
    x = to_rational(x)
    if x == 0:
        return math.inf
    v = 0
    num, dn = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while dn % p == 0:
        dn //= p
        v -= 1
    return v


def pochhammer(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def general_binomial(x: Fraction, k: int) -> Fraction:
    """binom(x, k) = x(x-1)...(x-k+1)/k! for rational x."""
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out
