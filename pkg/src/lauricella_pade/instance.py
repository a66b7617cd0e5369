"""Operator data (a, b) with roots, exponents and hypothesis flags."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Poly, format_rational, rational_roots, to_rational
from .exact.rational import RationalLike


class InstanceError(ValueError):
    """Input that cannot describe an instance at all (e.g. a does not split over Q)."""


class HypothesisViolation(ArithmeticError):
    """A construction hit a division by zero that a hypothesis would have excluded."""

    def __init__(self, hypothesis: str, detail: str):
        super().__init__(f"hypothesis ({hypothesis}) violated: {detail}")
        self.hypothesis = hypothesis
        self.detail = detail


def _is_negative_integer(x: Fraction, below: int) -> bool:
    """x in Z with x <= below."""
    return x.denominator == 1 and x <= below


@dataclass(frozen=True)
class Instance:
    """a monic of degree m >= 2 with rational roots alpha, b of degree <= m-1.

    ``s[i] = b(alpha_i) / a'(alpha_i)``; ``None`` where a'(alpha_i) = 0.
    """

    a: Poly
    b: Poly
    alpha: tuple[Fraction, ...]
    s: tuple[Fraction | None, ...]
    flags: dict[str, bool] = field(compare=False, hash=False)
    witnesses: dict[str, str] = field(compare=False, hash=False)

    @property
    def m(self) -> int:
        return int(self.a.degree)

    @property
    def w(self) -> int:
        return self.m - 2

    @property
    def b_top(self) -> Fraction:
        return self.b.coeff(self.m - 1)

    @property
    def valid(self) -> bool:
        return all(self.flags.values())

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_roots(cls, alpha: Sequence[RationalLike], s: Sequence[RationalLike]) -> "Instance":
        alpha_q = tuple(to_rational(x) for x in alpha)
        s_q = tuple(to_rational(x) for x in s)
        if len(alpha_q) != len(s_q):
            raise InstanceError("alpha and s must have the same length")
        if len(alpha_q) < 2:
            raise InstanceError("m >= 2 is required")
        a = Poly.from_roots(alpha_q)
        b = Poly()
        for i, si in enumerate(s_q):
            b = b + Poly.from_roots(alpha_q[:i] + alpha_q[i + 1 :]) * si
        return cls._build(a, b, alpha_q)

    @classmethod
    def from_coeffs(cls, a_coeffs: Sequence[RationalLike], b_coeffs: Sequence[RationalLike]) -> "Instance":
        a, b = Poly(a_coeffs), Poly(b_coeffs)
        if a.degree < 2:
            raise InstanceError("a must have degree m >= 2")
        if a.lc() != 1:
            raise InstanceError("a must be monic")
        if b.degree > a.degree - 1:
            raise InstanceError("deg b must be at most m - 1")
        roots = rational_roots(a)
        if len(roots) != a.degree:
            raise InstanceError(f"a = {a} does not split over Q")
        return cls._build(a, b, tuple(roots))

    @classmethod
    def _build(cls, a: Poly, b: Poly, alpha: tuple[Fraction, ...]) -> "Instance":
        da = a.derivative()
        s = tuple((b(x) / da(x)) if da(x) != 0 else None for x in alpha)
        flags: dict[str, bool] = {}
        wit: dict[str, str] = {}
        dup = sorted({x for x in alpha if alpha.count(x) > 1})
        flags["first"] = not dup
        if dup:
            wit["first"] = "repeated roots: " + ", ".join(format_rational(x) for x in dup)
        bad = [
            (i, si) for i, si in enumerate(s) if si is None or _is_negative_integer(si, -1)
        ]
        flags["second"] = not bad
        if bad:
            wit["second"] = "; ".join(
                f"s_{i + 1} undefined (a'(alpha) = 0)" if si is None else f"s_{i + 1} = {format_rational(si)} in Z_<=-1"
                for i, si in bad
            )
        bt = b.coeff(int(a.degree) - 1)
        flags["third"] = not _is_negative_integer(bt, -2)
        if not flags["third"]:
            wit["third"] = f"b_(m-1) = {format_rational(bt)} in Z_<-1"
        return cls(a=a, b=b, alpha=alpha, s=s, flags=flags, witnesses=wit)

    # -- derived data ----------------------------------------------------
    def require(self, *names: str) -> None:
        for name in names:
            if not self.flags.get(name, False):
                raise HypothesisViolation(name, self.witnesses.get(name, "failed"))

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "a_coeffs": [format_rational(c) for c in self.a.coeffs],
            "b_coeffs": [format_rational(c) for c in self.b.coeffs],
            "alpha": [format_rational(x) for x in self.alpha],
            "s": [None if x is None else format_rational(x) for x in self.s],
            "b_top": format_rational(self.b_top),
        }

    def fingerprint(self) -> str:
        key = "a=" + ",".join(map(format_rational, self.a.coeffs)) + ";b=" + ",".join(
            map(format_rational, self.b.coeffs)
        )
        return hashlib.sha256(key.encode()).hexdigest()[:16]


# Reference instances used throughout the tests and notebooks.
def instance_I1() -> Instance:
    return Instance.from_roots([0, 1], ["1/2", "1/2"])


def instance_I2() -> Instance:
    return Instance.from_roots([0, 1, -1], ["1/3", "1/4", "1/5"])
