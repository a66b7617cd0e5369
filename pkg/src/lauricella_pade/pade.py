"""Explicit Pade-type approximants P_{n,l}, Q_{n,j,l} and their remainders.

P_{n,l} is the Rodrigues operator applied to z^l.  It is computed three ways:
the first-order factorization (default), the n-fold power of d/dz + b/a on
a^n z^l with rational-function arithmetic, and the Leibniz closed form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import LaurentSeries, Poly, RationalFunction, format_rational, nullspace, ord_inf
from .exact.rational import binomial, pochhammer
from .instance import Instance
from .solutions import SolutionFamily, phi_f, phi_f_bivariate


def _check_indices(inst: Instance, n: int, ell: int) -> None:
    if inst.m < 2:
        raise ValueError("m >= 2 is required")
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0 <= ell <= inst.m - 1:
        raise ValueError(f"l must lie in [0, {inst.m - 1}]")


def rodrigues_apply(inst: Instance, n: int, ell: int) -> Poly:
    """P_{n,l} = R_n z^l via R_n = (1/n!) R_1 (R_1 + a') ... (R_1 + (n-1) a').

    R_1 + k a' = a d/dz + (k+1) a' + b maps polynomials to polynomials; the
    rightmost factor acts first.
    """
    _check_indices(inst, n, ell)
    a, b = inst.a, inst.b
    da = a.derivative()
    p = Poly.monomial(ell)
    for k in range(n - 1, -1, -1):
        p = a * p.derivative() + (da * (k + 1) + b) * p
    return p * Fraction(1, math.factorial(n))


def rodrigues_power_form(inst: Instance, n: int, ell: int) -> Poly:
    """(1/n!) (d/dz + b/a)^n (a^n z^l), with a cancellation check at every step."""
    _check_indices(inst, n, ell)
    ratio = RationalFunction(inst.b, inst.a)
    g = RationalFunction(inst.a**n * Poly.monomial(ell))
    for step in range(n):
        g = g.derivative() + ratio * g
        if not g.is_polynomial():
            raise ArithmeticError(f"denominator {g.den} survived step {step + 1}")
    return g.to_poly() * Fraction(1, math.factorial(n))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def leibniz_expand(inst: Instance, n: int, ell: int) -> Poly:
    """Closed Leibniz form of P_{n,l} as a finite multi-index sum.

    sum_k (-1)^k sum_{k_1..k_m} sum_{j_1..j_{m+1}} C(l, j_{m+1})
        prod_i (-s_i)_{k_i}/k_i! C(n, j_i) (z - alpha_i)^{n-j_i-k_i}  z^{l-j_{m+1}}
    """
    _check_indices(inst, n, ell)
    inst.require("first")
    m = inst.m
    s, alpha = inst.s, inst.alpha
    poch = [[pochhammer(-si, k) / math.factorial(k) for k in range(n + 1)] for si in s]
    # group scalar weights by the exponent pattern, then expand each pattern once
    buckets: dict[tuple[int, ...], Fraction] = {}
    for k in range(n + 1):
        sign = -1 if k % 2 else 1
        for ks in _compositions(k, m):
            wk = Fraction(sign)
            for i in range(m):
                wk *= poch[i][ks[i]]
            if wk == 0:
                continue
            for js in _compositions(n - k, m + 1):
                jl = js[m]
                if jl > ell:
                    continue
                c = wk * binomial(ell, jl)
                for i in range(m):
                    c *= binomial(n, js[i])
                if c == 0:
                    continue
                key = tuple(n - js[i] - ks[i] for i in range(m)) + (ell - jl,)
                buckets[key] = buckets.get(key, Fraction(0)) + c
    lin_pows = [[Poly([-ai, 1]) ** e for e in range(n + 1)] for ai in alpha]
    out = Poly()
    for key, c in buckets.items():
        if c == 0:
            continue
        term = Poly.monomial(key[m], c)
        for i in range(m):
            term = term * lin_pows[i][key[i]]
        out = out + term
    return out


def expected_degree(inst: Instance, n: int, ell: int) -> int:
    return ell + n * (inst.w + 1)


# -- the approximant system ------------------------------------------------------


@dataclass(frozen=True)
class PadeSystem:
    instance: Instance
    n: int
    P: tuple[Poly, ...]
    Q: tuple[tuple[Poly, ...], ...]  # Q[j][l]
    R: tuple[tuple[LaurentSeries, ...], ...]  # R[j][l]
    verified: bool
    orders: tuple[tuple[object, ...], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "instance": self.instance.to_dict(),
            "n": self.n,
            "P": [[format_rational(c) for c in p.coeffs] for p in self.P],
            "Q": [[[format_rational(c) for c in q.coeffs] for q in row] for row in self.Q],
            "remainder_ord": [[str(o) for o in row] for row in self.orders],
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def required_truncation(inst: Instance, n: int) -> int:
    return expected_degree(inst, n, inst.m - 1) + n + 2


def build_system(fam: SolutionFamily, n: int) -> PadeSystem:
    inst = fam.instance
    need = required_truncation(inst, n)
    if fam.T < need:
        raise ValueError(f"truncation T = {fam.T} too short for weight {n}; need T >= {need}")
    P = tuple(rodrigues_apply(inst, n, ell) for ell in range(inst.m))
    Q = []
    R = []
    orders = []
    ok = True
    for fj in fam.f:
        qrow, rrow, orow = [], [], []
        for p in P:
            q = phi_f_bivariate(fj, p)
            poly_part, tail = fj.mul_poly(p)
            if not (poly_part - q).is_zero():
                raise ArithmeticError("P f - Q has a nonzero polynomial part")
            o = ord_inf(tail)
            ok = ok and (o >= n + 1)
            qrow.append(q)
            rrow.append(tail)
            orow.append(o)
        Q.append(tuple(qrow))
        R.append(tuple(rrow))
        orders.append(tuple(orow))
    return PadeSystem(inst, n, P, tuple(Q), tuple(R), ok, tuple(orders))


def remainder_closed_form(fam: SolutionFamily, n: int, j: int, ell: int, K: int) -> LaurentSeries:
    """First K coefficients of (-1)^n sum_{k>=n} C(k,n) phi_j(t^{k+l-n} a^n) / z^{k+1}."""
    inst = fam.instance
    an = inst.a**n
    top = K - 1 + ell - n + int(an.degree)
    if K > n and top >= fam.T:
        raise ValueError(f"truncation T = {fam.T} too short; need T > {top}")
    sign = -1 if n % 2 else 1
    fj = fam.f[j]
    out = []
    for k in range(K):
        if k < n:
            out.append(Fraction(0))
        else:
            out.append(sign * binomial(k, n) * phi_f(fj, an.shift(k + ell - n)))
    return LaurentSeries._raw(out)


def kernel_membership(fam: SolutionFamily, q: Poly) -> list[bool]:
    return [phi_f(fj, q) == 0 for fj in fam.f]


# -- generic linear-algebra Pade solver (independent oracle) ---------------------


def pade_conditions(
    series: Sequence[LaurentSeries], weights: Sequence[int], M: int
) -> list[list[Fraction]]:
    """Linear conditions on (p_0..p_M, q_{1,0..M-1}, ..., q_{r,0..M-1}).

    Row blocks per series j: vanishing of z^e (M-1 >= e >= 0) in P f_j - Q_j
    and of 1/z^(K+1) for K < n_j.
    """
    r = len(series)
    ncols = (M + 1) + r * M
    rows: list[list[Fraction]] = []
    for j, (f, nj) in enumerate(zip(series, weights)):
        if M + nj > f.T:
            raise ValueError(f"series {j} is too short for degree {M} and weight {nj}")
        qoff = (M + 1) + j * M
        for e in range(M):
            row = [Fraction(0)] * ncols
            for i in range(e + 1, M + 1):
                row[i] = f.coeffs[i - 1 - e]
            row[qoff + e] = Fraction(-1)
            rows.append(row)
        for K in range(nj):
            row = [Fraction(0)] * ncols
            for i in range(M + 1):
                row[i] = f.coeffs[i + K]
            rows.append(row)
    return rows


def _pack(P: Poly, Qs: Sequence[Poly], M: int) -> list[Fraction]:
    vec = [P.coeff(i) for i in range(M + 1)]
    for q in Qs:
        vec += [q.coeff(i) for i in range(M)]
    return vec


def pade_residual(
    series: Sequence[LaurentSeries], weights: Sequence[int], M: int, P: Poly, Qs: Sequence[Poly]
) -> list[Fraction]:
    if P.degree > M or any(q.degree > M - 1 for q in Qs):
        raise ValueError("degrees exceed the bound M")
    rows = pade_conditions(series, weights, M)
    vec = _pack(P, Qs, M)
    return [sum((a * x for a, x in zip(row, vec) if a and x), Fraction(0)) for row in rows]


def solve_pade_linear_system(
    series: Sequence[LaurentSeries], weights: Sequence[int], M: int
) -> tuple[Poly, list[Poly], int]:
    """A nonzero approximant of degree <= M; returns (P, [Q_j], nullity)."""
    if sum(weights) > M:
        raise ValueError("the weights must satisfy sum n_j <= M")
    r = len(series)
    rows = pade_conditions(series, weights, M)
    basis = nullspace(rows, ncols=(M + 1) + r * M)
    if not basis:
        raise ArithmeticError("empty nullspace contradicts the dimension count")
    v = basis[0]
    P = Poly(v[: M + 1])
    Qs = [Poly(v[M + 1 + j * M : M + 1 + (j + 1) * M]) for j in range(r)]
    return P, Qs, len(basis)


__all__ = [
    "PadeSystem",
    "build_system",
    "expected_degree",
    "kernel_membership",
    "leibniz_expand",
    "pade_conditions",
    "pade_residual",
    "remainder_closed_form",
    "required_truncation",
    "rodrigues_apply",
    "rodrigues_power_form",
    "solve_pade_linear_system",
]
