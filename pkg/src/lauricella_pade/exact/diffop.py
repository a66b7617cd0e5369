"""Linear differential operators with polynomial coefficients.

``DiffOperator((c_0, ..., c_r), var)`` is ``sum_i c_i(var) (d/dvar)**i`` in
normal form (coefficients to the left of the derivations).  The variable
name only records orientation: operators in ``z`` act on the Laurent side,
adjoints live in ``t``.
"""

from __future__ import annotations

from typing import Sequence

from .poly import Poly
from .rational import binomial
from .series import LaurentSeries


class DiffOperator:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence[Poly], var: str = "z"):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOperator is immutable")

    @classmethod
    def d(cls, var: str = "z") -> "DiffOperator":
        return cls([Poly(), Poly([1])], var)

    @classmethod
    def mult(cls, p: Poly, var: str = "z") -> "DiffOperator":
        return cls([p], var)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Poly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Poly()

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOperator) and self.coeffs == other.coeffs and self.var == other.var

    def __hash__(self) -> int:
        return hash((self.coeffs, self.var))

    def __repr__(self) -> str:
        parts = [f"({c})*D^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return f"DiffOperator[{self.var}](" + " + ".join(parts or ["0"]) + ")"

    def _check(self, other: "DiffOperator") -> None:
        if self.var != other.var:
            raise ValueError(f"mixing operators in {self.var} and {other.var}")

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOperator([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator([-c for c in self.coeffs], self.var)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def __mul__(self, other: "DiffOperator") -> "DiffOperator":
        """Composition ``self o other`` using D^i p = sum_k C(i,k) p^(k) D^(i-k)."""
        self._check(other)
        out: dict[int, Poly] = {}
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                for k in range(i + 1):
                    term = a * b.derivative(k) * binomial(i, k)
                    if not term.is_zero():
                        idx = i - k + j
                        out[idx] = out.get(idx, Poly()) + term
        n = max(out) + 1 if out else 0
        return DiffOperator([out.get(i, Poly()) for i in range(n)], self.var)

    def apply(self, p: Poly) -> Poly:
        out = Poly()
        for i, c in enumerate(self.coeffs):
            out = out + c * p.derivative(i)
        return out

    def apply_series(self, f: LaurentSeries) -> tuple[Poly, LaurentSeries | None]:
        """Generic action on a truncated Laurent series (polynomial part, tail)."""
        poly = Poly()
        tail: LaurentSeries | None = None
        g = f
        for i, c in enumerate(self.coeffs):
            if i:
                g = g.derivative().truncate(f.T)
            if c.is_zero():
                continue
            pp, tt = g.mul_poly(c)
            poly = poly + pp
            if tt is None:
                continue
            tail = tt if tail is None else (tail + tt)
        return poly, tail


def adjoint(op: DiffOperator) -> DiffOperator:
    """Formal adjoint sum_j P_j D^j -> sum_j (-1)^j D^j o P_j, in the dual variable."""
    var = "t" if op.var == "z" else "z"
    out = DiffOperator([], var)
    for j, p in enumerate(op.coeffs):
        dj = DiffOperator([Poly()] * j + [Poly([(-1) ** j])], var)
        out = out + dj * DiffOperator.mult(p, var)
    return out
