"""Dense univariate polynomials over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import RationalLike, format_rational, to_rational

NEG_INF = float("-inf")


class Poly:
    """Immutable dense polynomial; ``coeffs[i]`` is the coefficient of z**i.

    The zero polynomial has an empty coefficient tuple and degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, cs: list[Fraction]) -> "Poly":
        # trusted constructor: cs already Fractions
        while cs and cs[-1] == 0:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def const(cls, c: RationalLike) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence[RationalLike]) -> "Poly":
        out = cls([1])
        for r in roots:
            out = out * cls([-to_rational(r), 1])
        return out

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = format_rational(c)
            if i == 0:
                terms.append(cs)
            else:
                mon = "z" if i == 1 else f"z^{i}"
                terms.append(mon if c == 1 else ("-" + mon if c == -1 else f"({cs})*{mon}"))
        return " + ".join(terms).replace("+ -", "- ")

    # -- ring operations -------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly([x])

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] += c
        return Poly._raw(cs)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_rational(other)
            if c == 0:
                return Poly()
            return Poly._raw([x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by z**k."""
        if not self.coeffs:
            return self
        return Poly._raw([Fraction(0)] * k + list(self.coeffs))

    def derivative(self, k: int = 1) -> "Poly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return Poly._raw(cs)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, q: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    # -- Euclidean structure ----------------------------------------------
    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lc = other.coeffs[-1]
        if len(r) - 1 < dq:
            return Poly(), self
        q = [Fraction(0)] * (len(r) - dq)
        for i in range(len(r) - 1, dq - 1, -1):
            c = r[i] / lc
            if c:
                q[i - dq] = c
                for j, oc in enumerate(other.coeffs):
                    r[i - dq + j] -= c * oc
        return Poly._raw(q), Poly._raw(r[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def content_primitive(self) -> tuple[Fraction, list[int]]:
        """Return (c, ints) with self = c * Poly(ints) and ints a primitive integer vector."""
        import math

        if self.is_zero():
            return Fraction(0), []
        d = 1
        for c in self.coeffs:
            d = math.lcm(d, c.denominator)
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, d), [v // g for v in ints]


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; rejects the pair (0, 0)."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of ``p`` listed with multiplicity."""
    from .rational import factorize

    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots: list[Fraction] = []
    while p.degree >= 1 and p.coeff(0) == 0:
        roots.append(Fraction(0))
        p = Poly._raw(list(p.coeffs[1:]))
    if p.degree < 1:
        return roots
    _, ints = p.content_primitive()
    c0, cn = abs(ints[0]), abs(ints[-1])

    def divisors(n: int) -> list[int]:
        ds = [1]
        for prime, e in factorize(n).items():
            ds = [d * prime**k for d in ds for k in range(e + 1)]
        return ds

    cands = sorted(
        {Fraction(s * a, b) for a in divisors(c0) for b in divisors(cn) for s in (1, -1)}
    )
    for r in cands:
        lin = Poly([-r, 1])
        while p.degree >= 1:
            q, rem = p.divmod(lin)
            if not rem.is_zero():
                break
            roots.append(r)
            p = q
    return sorted(roots)
