"""Fixed relative precision p-adic numbers over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact.rational import valuation


@dataclass(frozen=True)
class PadicValue:
    """unit * p^valuation + O(p^(valuation + N)).

    ``unit`` is a p-adic unit reduced mod p^N.  An element known only to be
    O(p^k) is stored with unit 0, valuation k and N = 0.
    """

    p: int
    unit: int
    valuation: int
    N: int

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.N

    def is_zero(self) -> bool:
        return self.unit == 0

    @classmethod
    def zero(cls, p: int, absolute_precision: int) -> "PadicValue":
        return cls(p, 0, absolute_precision, 0)

    @classmethod
    def from_rational(cls, x: Fraction | int, p: int, N: int) -> "PadicValue":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, N)
        v = int(valuation(x, p))
        num, den = x.numerator, x.denominator
        if v > 0:
            num //= p**v
        elif v < 0:
            den //= p ** (-v)
        mod = p**N
        return cls(p, num * pow(den, -1, mod) % mod, v, N)

    @classmethod
    def _normalize(cls, p: int, s: int, v: int, abs_prec: int) -> "PadicValue":
        mod = p ** (abs_prec - v)
        s %= mod
        if s == 0:
            return cls.zero(p, abs_prec)
        while s % p == 0:
            s //= p
            v += 1
        return cls(p, s % p ** (abs_prec - v), v, abs_prec - v)

    def _check(self, other: "PadicValue") -> None:
        if self.p != other.p:
            raise ValueError("mixing different primes")

    def __add__(self, other: "PadicValue") -> "PadicValue":
        self._check(other)
        ap = min(self.absolute_precision, other.absolute_precision)
        v = min(self.valuation, other.valuation, ap)
        s = self.unit * self.p ** (self.valuation - v) if self.valuation < ap else 0
        if other.valuation < ap:
            s += other.unit * self.p ** (other.valuation - v)
        return PadicValue._normalize(self.p, s, v, ap)

    def __neg__(self) -> "PadicValue":
        if self.is_zero():
            return self
        return PadicValue(self.p, (-self.unit) % self.p**self.N, self.valuation, self.N)

    def __sub__(self, other: "PadicValue") -> "PadicValue":
        return self + (-other)

    def __mul__(self, other: "PadicValue") -> "PadicValue":
        self._check(other)
        if self.is_zero() or other.is_zero():
            # O(p^a) * (u p^b + ...) is only known to be O(p^(a+b))
            return PadicValue.zero(self.p, self.valuation + other.valuation)
        N = min(self.N, other.N)
        return PadicValue(self.p, self.unit * other.unit % self.p**N, self.valuation + other.valuation, N)

    def agrees_with(self, x: Fraction | int) -> bool:
        """x lies in the ball this value represents."""
        return valuation(Fraction(x) - self.residue(), self.p) >= self.absolute_precision

    def residue(self) -> Fraction:
        """The rational unit * p^valuation (0 <= unit < p^N)."""
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def __repr__(self) -> str:
        return f"PadicValue({self.unit} * {self.p}^{self.valuation} + O({self.p}^{self.absolute_precision}))"


__all__ = ["PadicValue"]
