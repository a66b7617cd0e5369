"""Truncated formal Laurent series in 1/z.

A :class:`LaurentSeries` with coefficients ``(f_0, ..., f_{T-1})`` stands for
``sum_{k<T} f_k / z**(k+1)``; every coefficient beyond ``T`` is *unknown*,
not zero.  Each operation documents the length over which its output is valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly
from .rational import RationalLike, to_rational


@dataclass(frozen=True)
class OrdLowerBound:
    """``ord_inf >= bound``: all stored coefficients vanished."""

    bound: int

    def __ge__(self, other) -> bool:
        return self.bound >= other

    def __gt__(self, other) -> bool:
        return self.bound > other

    def __str__(self) -> str:
        return f">= {self.bound}"


class LaurentSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike]):
        cs = tuple(to_rational(c) for c in coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @classmethod
    def _raw(cls, cs: Sequence[Fraction]) -> "LaurentSeries":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @property
    def T(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:4])
        return f"LaurentSeries([{head}{', ...' if self.T > 4 else ''}], T={self.T})"

    def truncate(self, T: int) -> "LaurentSeries":
        if T > self.T:
            raise ValueError(f"cannot extend a series of length {self.T} to {T}")
        return LaurentSeries._raw(self.coeffs[:T])

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        T = min(self.T, other.T)
        return LaurentSeries._raw([self.coeffs[i] + other.coeffs[i] for i in range(T)])

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries._raw([-c for c in self.coeffs])

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, c: RationalLike) -> "LaurentSeries":
        c = to_rational(c)
        return LaurentSeries._raw([c * x for x in self.coeffs])

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        """Series product; valid length ``min(T_f, T_g) + 1``."""
        T = min(self.T, other.T) + 1
        out = [Fraction(0)] * T
        for i in range(1, T):
            s = Fraction(0)
            for k in range(i):
                s += self.coeffs[k] * other.coeffs[i - 1 - k]
            out[i] = s
        return LaurentSeries._raw(out)

    def mul_poly(self, p: Poly) -> tuple[Poly, "LaurentSeries | None"]:
        """Split ``p * f`` into its polynomial part and its 1/z tail.

        The tail is valid for ``T - deg p`` coefficients; ``None`` when no
        tail coefficient is determined.
        """
        if p.is_zero():
            return Poly(), LaurentSeries._raw([Fraction(0)] * self.T)
        d = int(p.degree)
        f = self.coeffs
        poly_part = []
        for e in range(d):
            s = Fraction(0)
            for i in range(e + 1, d + 1):
                if i - 1 - e < self.T:
                    s += p.coeffs[i] * f[i - 1 - e]
                else:
                    raise ValueError("truncation too short for the polynomial part")
            poly_part.append(s)
        L = self.T - d
        if L <= 0:
            return Poly(poly_part), None
        tail = []
        for K in range(L):
            s = Fraction(0)
            for i, c in enumerate(p.coeffs):
                if c:
                    s += c * f[i + K]
            tail.append(s)
        return Poly(poly_part), LaurentSeries._raw(tail)

    def derivative(self) -> "LaurentSeries":
        """d/dz; the result has a zero ``f_0`` and valid length ``T + 1``."""
        out = [Fraction(0)] + [-(k + 1) * c for k, c in enumerate(self.coeffs)]
        return LaurentSeries._raw(out)

    def ord_inf(self) -> "int | OrdLowerBound":
        return ord_inf(self)


def ord_inf(f: LaurentSeries) -> "int | OrdLowerBound":
    """Order at infinity: 1 + index of the first nonzero stored coefficient.

    Never claims an exact infinity: an all-zero truncation returns
    ``OrdLowerBound(T + 1)``.
    """
    for k, c in enumerate(f.coeffs):
        if c != 0:
            return k + 1
    return OrdLowerBound(f.T + 1)
