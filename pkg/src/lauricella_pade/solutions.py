"""Laurent-series solutions f_j of L.f in Q[z] for L = -a d/dz + b.

Two independent constructions are provided: the linear recurrence read off
from L acting on a generic series (:func:`build_by_recurrence`) and the
closed Lauricella form (:func:`build_closed_form`).  They must agree
coefficient for coefficient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import DiffOperator, LaurentSeries, Poly, det_rational, format_rational
from .exact.rational import general_binomial
from .instance import HypothesisViolation, Instance


def default_truncation(m: int, n_max: int) -> int:
    return 8 * m * (n_max + 1)


@dataclass(frozen=True)
class SolutionFamily:
    instance: Instance
    T: int
    f: tuple[LaurentSeries, ...]
    provenance: tuple[str, ...]

    def coeff(self, j: int, k: int) -> Fraction:
        return self.f[j].coeffs[k]

    def initial_matrix(self) -> list[list[Fraction]]:
        w = self.instance.w
        return [[self.f[j].coeffs[k] for k in range(w + 1)] for j in range(w + 1)]

    def to_dict(self) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "T": self.T,
            "provenance": list(self.provenance),
            "coefficients": [[format_rational(c) for c in fj.coeffs] for fj in self.f],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# -- closed form -------------------------------------------------------------


class _ClosedForm:
    """Cached convolution sums for the Lauricella coefficients of one instance.

    ``A[w]`` is the sum over k_1+...+k_m = w of prod (-s_i)_{k_i}/k_i! alpha_i^{k_i},
    ``B[l]`` the same with (1+s_i)_{l_i}/l_i!.
    """

    def __init__(self, inst: Instance):
        inst.require("first")
        self.inst = inst
        self.A: list[Fraction] = [Fraction(1)]
        self.B: list[Fraction] = [Fraction(1)]
        self._extend(64)

    def _extend(self, K: int) -> None:
        if len(self.A) >= K:
            return
        self.A = self._product([(-si, ai) for si, ai in zip(self.inst.s, self.inst.alpha)], K)
        self.B = self._product([(1 + si, ai) for si, ai in zip(self.inst.s, self.inst.alpha)], K)

    @staticmethod
    def _product(params: Sequence[tuple[Fraction, Fraction]], K: int) -> list[Fraction]:
        out = [Fraction(1)] + [Fraction(0)] * (K - 1)
        for c, alpha in params:
            seq = [Fraction(1)]
            for k in range(1, K):
                seq.append(seq[-1] * (c + k - 1) / k * alpha)
            new = [Fraction(0)] * K
            for i, x in enumerate(out):
                if x:
                    for k in range(K - i):
                        new[i + k] += x * seq[k]
            out = new
        return out

    def coeff(self, j: int, k: int) -> Fraction:
        """f_{j,k}; zero for k < j."""
        if k < j:
            return Fraction(0)
        kk = k - j
        if kk + 1 > len(self.A):
            self._extend(max(2 * len(self.A), kk + 1))
        bj = self.inst.b_top + j + 1
        total = Fraction(0)
        for w in range(kk + 1):
            if kk - w == 0:
                ratio = Fraction(1)
            else:
                d = bj + kk - w
                if d == 0:
                    raise HypothesisViolation("third", f"b_(m-1)+j+k-w+1 = 0 at j={j}, k-w={kk - w}")
                ratio = bj / d
            total += self.A[w] * self.B[kk - w] * ratio
        return total


@lru_cache(maxsize=32)
def _closed_form(inst: Instance) -> _ClosedForm:
    return _ClosedForm(inst)


def lauricella_coeff(inst: Instance, j: int, k: int) -> Fraction:
    """k-th coefficient of f_j from the closed Lauricella form.

    >>> from lauricella_pade.instance import instance_I1
    >>> lauricella_coeff(instance_I1(), 0, 0)
    Fraction(1, 1)
    """
    if not 0 <= j <= inst.m - 2:
        raise ValueError(f"j must lie in [0, {inst.m - 2}]")
    if k < 0:
        raise ValueError("k must be non-negative")
    return _closed_form(inst).coeff(j, k)


def build_closed_form(inst: Instance, T: int) -> SolutionFamily:
    inst.require("first", "third")
    cf = _closed_form(inst)
    fs = tuple(
        LaurentSeries._raw([cf.coeff(j, k) for k in range(T)]) for j in range(inst.m - 1)
    )
    return SolutionFamily(inst, T, fs, ("closed-form",) * len(fs))


# -- recurrence ---------------------------------------------------------------


def canonical_seeds(inst: Instance) -> list[list[Fraction]]:
    """First w+1 coefficients of each f_j, normalized to the closed form."""
    w = inst.w
    return [[lauricella_coeff(inst, j, k) for k in range(w + 1)] for j in range(w + 1)]


def extend_by_recurrence(inst: Instance, seed: Sequence[Fraction], T: int) -> list[Fraction]:
    """Extend ``seed`` (length w+1) to T coefficients using the recurrence.

    For K >= 0 the coefficient of 1/z^(K+1) in L.f must vanish; its top term is
    (K + m + b_(m-1)) f_{K+m-1}, which fixes f_{K+m-1}.
    """
    m = inst.m
    a, b = inst.a.coeffs, inst.b.coeffs
    f = [Fraction(x) for x in seed]
    if len(f) != m - 1:
        raise ValueError(f"expected {m - 1} seed coefficients, got {len(f)}")
    if T <= len(f):
        return f[:T]
    bt = inst.b_top
    for K in range(T - m + 1):
        lead = K + m + bt
        if lead == 0:
            raise HypothesisViolation("third", f"leading recurrence coefficient vanishes at k={K}")
        acc = Fraction(0)
        for i in range(min(len(a), m)):
            if a[i] and K + i - 1 >= 0:
                acc += a[i] * (K + i) * f[K + i - 1]
        for j in range(min(len(b), m - 1)):
            if b[j]:
                acc += b[j] * f[K + j]
        f.append(-acc / lead)
    return f


def build_by_recurrence(
    inst: Instance, T: int, seeds: Sequence[Sequence[Fraction]] | None = None
) -> SolutionFamily:
    inst.require("third")
    if seeds is None:
        seeds = canonical_seeds(inst)
    if len(seeds) != inst.m - 1:
        raise ValueError("one seed vector per f_j is required")
    fs = tuple(LaurentSeries._raw(extend_by_recurrence(inst, sd, T)) for sd in seeds)
    return SolutionFamily(inst, T, fs, ("recurrence",) * len(fs))


def build_family(inst: Instance, T: int) -> SolutionFamily:
    """Default construction (recurrence with closed-form seeds)."""
    return build_by_recurrence(inst, T)


def linear_independence_witness(fam: SolutionFamily) -> Fraction:
    """det (f_{j,k})_{0<=j,k<=w}; nonzero iff the f_j are independent."""
    return det_rational(fam.initial_matrix())


# -- the operator L and the f-integration map -----------------------------------


def operator_L(inst: Instance) -> DiffOperator:
    return DiffOperator([inst.b, -inst.a], "z")


def apply_L(inst: Instance, f: LaurentSeries) -> tuple[Poly, LaurentSeries]:
    """L.f = A(z) + sum_K c_K / z^(K+1); returns (A, tail).

    The tail is valid for T - m + 1 coefficients.
    """
    m = inst.m
    a, b = inst.a.coeffs, inst.b.coeffs
    fc = f.coeffs
    T = f.T
    if T < m:
        raise ValueError(f"need at least {m} coefficients to produce a tail")

    def fk(k: int) -> Fraction:
        return fc[k] if k >= 0 else Fraction(0)

    # polynomial part: exponent e >= 0 gets a_i (i-1-e) f_{i-2-e} + b_j f_{j-1-e}
    poly = []
    for e in range(m):
        s = Fraction(0)
        for i, ai in enumerate(a):
            if ai and i - 2 - e >= 0:
                s += ai * (i - 1 - e) * fk(i - 2 - e)
        for j, bj in enumerate(b):
            if bj and j - 1 - e >= 0:
                s += bj * fk(j - 1 - e)
        poly.append(s)
    tail = []
    for K in range(T - m + 1):
        s = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                s += ai * (K + i) * fk(K + i - 1)
        for j, bj in enumerate(b):
            if bj:
                s += bj * fk(K + j)
        tail.append(s)
    return Poly(poly), LaurentSeries._raw(tail)


def phi_f(f: LaurentSeries, p: Poly) -> Fraction:
    """Formal f-integration: t^k -> f_k, extended linearly."""
    if p.is_zero():
        return Fraction(0)
    if p.degree >= f.T:
        raise ValueError(f"deg p = {p.degree} exceeds the truncation T = {f.T}")
    fc = f.coeffs
    return sum((c * fc[k] for k, c in enumerate(p.coeffs) if c), Fraction(0))


def phi_f_bivariate(f: LaurentSeries, P: Poly) -> Poly:
    """phi_f applied in t to (P(z) - P(t)) / (z - t)."""
    if P.is_zero() or P.degree == 0:
        return Poly()
    N = int(P.degree)
    if N - 1 >= f.T:
        raise ValueError(f"deg P = {N} exceeds the truncation T = {f.T}")
    p, fc = P.coeffs, f.coeffs
    out = []
    for k in range(N):
        s = Fraction(0)
        for i in range(k + 1, N + 1):
            if p[i]:
                s += p[i] * fc[i - 1 - k]
        out.append(s)
    return Poly._raw(out)


# -- Jordan-Pochhammer form ----------------------------------------------------


@dataclass(frozen=True)
class JPExpansion:
    composed: DiffOperator
    jordan_pochhammer: DiffOperator

    @property
    def equal(self) -> bool:
        return self.composed == self.jordan_pochhammer

    def table(self) -> list[dict]:
        order = max(self.composed.order, self.jordan_pochhammer.order)
        return [
            {
                "derivative_order": i,
                "composed": [format_rational(c) for c in self.composed.coeff(i).coeffs],
                "jordan_pochhammer": [format_rational(c) for c in self.jordan_pochhammer.coeff(i).coeffs],
            }
            for i in range(order + 1)
        ]


def jordan_pochhammer_operator(Q: Poly, R: Poly, mu: Fraction, order: int) -> DiffOperator:
    """sum_i C(-mu,i) Q^(i) D^(order-i) - sum_j C(-mu-1,j) R^(j) D^(order-1-j)."""
    coeffs = [Poly() for _ in range(order + 1)]
    for i in range(order + 1):
        coeffs[order - i] = coeffs[order - i] + Q.derivative(i) * general_binomial(-mu, i)
    for j in range(order):
        coeffs[order - 1 - j] = coeffs[order - 1 - j] - R.derivative(j) * general_binomial(-mu - 1, j)
    return DiffOperator(coeffs, "z")


def jp_expand(inst: Instance) -> JPExpansion:
    m = inst.m
    d = DiffOperator.d("z")
    dm1 = DiffOperator([Poly([1])], "z")
    for _ in range(m - 1):
        dm1 = dm1 * d
    composed = dm1 * DiffOperator([-inst.b, inst.a], "z")
    jp = jordan_pochhammer_operator(inst.a, inst.a.derivative() + inst.b, Fraction(-m), m)
    return JPExpansion(composed, jp)


def check_sum_of_exponents(inst: Instance) -> bool:
    """sum s_i = b_(m-1) (partial fractions of z b(z)/a(z))."""
    if any(si is None for si in inst.s):
        return False
    return sum(inst.s, Fraction(0)) == inst.b_top


def binomial_series_model(inst: Instance, T: int) -> LaurentSeries:
    """z^-1 prod (1 - alpha_i/z)^{s_i}, truncated to T coefficients."""
    coeffs = [Fraction(1)] + [Fraction(0)] * (T - 1)
    for si, ai in zip(inst.s, inst.alpha):
        seq = [general_binomial(si, k) * (-ai) ** k for k in range(T)]
        new = [Fraction(0)] * T
        for i, x in enumerate(coeffs):
            if x:
                for k in range(T - i):
                    new[i + k] += x * seq[k]
        coeffs = new
    return LaurentSeries._raw(coeffs)


__all__ = [
    "JPExpansion",
    "SolutionFamily",
    "apply_L",
    "binomial_series_model",
    "build_by_recurrence",
    "build_closed_form",
    "build_family",
    "canonical_seeds",
    "check_sum_of_exponents",
    "default_truncation",
    "extend_by_recurrence",
    "jordan_pochhammer_operator",
    "jp_expand",
    "lauricella_coeff",
    "linear_independence_witness",
    "operator_L",
    "phi_f",
    "phi_f_bivariate",
]
