"""Evaluation of the series and of the approximants at a rational point.

Real values are enclosed by :class:`BigInterval`; p-adic values are
:class:`PadicValue`.  In both cases an exact rational partial sum is combined
with a tail bound derived from the closed form of the coefficients, so no
asymptotic constant is needed.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import Poly, det_rational
from .exact.rational import den, pochhammer, to_rational, valuation
from .heights import (
    INF,
    LogLinear,
    MeasureReport,
    Place,
    A_v,
    F_v,
    U_v,
    convergence_condition,
    height_v,
    measure,
)
from .instance import Instance
from .intervals import BigInterval, log_interval
from .padic import PadicValue
from .pade import PadeSystem, build_system, required_truncation
from .solutions import SolutionFamily, build_family


class ConvergenceError(ValueError):
    """The point lies outside the region where the series is known to converge."""


class TruncationError(ValueError):
    """More coefficients are needed than the family carries."""


# -- coefficient majorants ----------------------------------------------------------


@dataclass(frozen=True)
class ArchMajorant:
    """|f_{j, j+k}| <= rho * (E)_k / k! * r^k.

    From the closed form: |(-s)_k/k!| <= (|s|)_k/k!, |(1+s)_k/k!| <= (1+|s|)_k/k!,
    so both convolution factors are dominated by coefficients of
    (1 - r x)^(-E) with E = m + 2 sum|s_i|, r = max|alpha_i|, and rho bounds the
    ratio |c|/|c + i| with c = b_{m-1} + j + 1.
    """

    j: int
    E: Fraction
    r: Fraction
    rho: Fraction

    @classmethod
    def for_instance(cls, inst: Instance, j: int) -> "ArchMajorant":
        inst.require("first", "second", "third")
        E = inst.m + 2 * sum(abs(s) for s in inst.s)
        r = max(abs(a) for a in inst.alpha)
        c = inst.b_top + j + 1
        rho = Fraction(1)
        if c != 0:
            for i in range(1, math.ceil(abs(c)) + 2):
                if c + i != 0:
                    rho = max(rho, abs(c) / abs(c + i))
        return cls(j, Fraction(E), Fraction(r), rho)

    def bound(self, K: int) -> Fraction:
        if K < self.j:
            return Fraction(0)
        k = K - self.j
        return self.rho * pochhammer(self.E, k) / math.factorial(k) * self.r**k

    def tail(self, T: int, beta: Fraction) -> Fraction | None:
        """Bound on sum_{K >= T} |f_{j,K}| |beta|^{-K-1}, or None if the ratio test fails at T."""
        T = max(T, self.j)
        k0 = T - self.j
        b = abs(beta)
        q = (self.E + k0) / (k0 + 1) * self.r / b
        if q >= 1:
            return None
        return self.bound(T) / b ** (T + 1) / (1 - q)


def _check_arch(inst: Instance, beta: Fraction) -> None:
    r = max(abs(a) for a in inst.alpha)
    if abs(beta) <= r:
        raise ConvergenceError(f"|beta| = {abs(beta)} must exceed max|alpha_i| = {r}")


def _enclose(S: Fraction, tail: Fraction, prec: int) -> BigInterval:
    return BigInterval(S - tail, S + tail, prec + 8)._rounded()


def eval_series_arch(
    coeffs: Sequence[Fraction],
    beta: Fraction,
    prec: int = 256,
    tail_bound=None,
) -> BigInterval:
    """Enclose sum_K coeffs[K] / beta^(K+1).

    ``tail_bound(T)`` must bound the absolute tail from index T on (or return
    None when it cannot).  Without it the coefficients are taken as the
    complete, finitely supported series.
    """
    beta = to_rational(beta)
    if beta == 0:
        raise ConvergenceError("beta = 0")
    inv = 1 / beta
    S = Fraction(0)
    powk = inv
    if tail_bound is None:
        for c in coeffs:
            S += c * powk
            powk *= inv
        return BigInterval.exact(S, prec)
    scale = Fraction(1, 2 ** (prec + 1))
    for T, c in enumerate(coeffs):
        S += c * powk
        powk *= inv
        t = tail_bound(T + 1)
        if t is not None and S != 0 and t <= scale * abs(S):
            return _enclose(S, t, prec)
    raise TruncationError(f"tail bound not reached with {len(coeffs)} coefficients; increase T")


def eval_arch(fam: SolutionFamily, j: int, beta, prec: int = 256) -> BigInterval:
    """Enclosure of f_j(beta) of relative width at most 2^-prec."""
    beta = to_rational(beta)
    inst = fam.instance
    _check_arch(inst, beta)
    maj = ArchMajorant.for_instance(inst, j)
    return eval_series_arch(fam.f[j].coeffs, beta, prec, lambda T: maj.tail(T, beta))


def eval_remainder_arch(fam: SolutionFamily, P: Poly, j: int, beta, prec: int = 256) -> BigInterval:
    """Enclosure of (P f_j - Q)(beta) = sum_k r_k beta^(-k-1), r_k = sum_i p_i f_{j,i+k}.

    Summing the remainder series directly avoids the cancellation in
    P(beta) f_j(beta) - Q(beta).
    """
    beta = to_rational(beta)
    inst = fam.instance
    _check_arch(inst, beta)
    maj = ArchMajorant.for_instance(inst, j)
    p = P.coeffs
    fc = fam.f[j].coeffs
    K = fam.T - len(p) + 1
    if K <= 0:
        raise TruncationError("family too short for this polynomial")
    r = [sum((pi * fc[i + k] for i, pi in enumerate(p) if pi), Fraction(0)) for k in range(K)]
    b = abs(beta)

    def tail(T: int) -> Fraction | None:
        total = Fraction(0)
        for i, pi in enumerate(p):
            if not pi:
                continue
            t = maj.tail(T + i, beta)
            if t is None:
                return None
            total += abs(pi) * b**i * t
        return total

    return eval_series_arch(r, beta, prec, tail)


# -- p-adic -----------------------------------------------------------------------------


def _floor_log(x: int, p: int) -> int:
    e, y = 0, p
    while y <= x:
        e += 1
        y *= p
    return e


@dataclass(frozen=True)
class PadicTail:
    """v_p(f_{j,K} beta^(-K-1)) >= (K+1) b0 - k (D + h + eps/(p-1)) - log_p(|u| + k |d|), k = K - j.

    D = max v_p(den s_i), eps = 1 when p divides some den s_i, h = max(0, -min v_p(alpha_i)),
    c = b_{m-1} + j + 1 = u/d.  The bound is convex in K, so once its
    derivative is nonnegative its value at T bounds every later term.
    """

    p: int
    j: int
    b0: int
    D: int
    eps: int
    h: int
    u: int
    d: int

    @classmethod
    def for_instance(cls, inst: Instance, j: int, beta: Fraction, p: int) -> "PadicTail":
        dens = [den(s) for s in inst.s]
        D = max(int(valuation(x, p)) for x in dens)
        eps = 1 if D > 0 else 0
        h = max([0] + [-int(valuation(a, p)) for a in inst.alpha if a != 0])
        c = inst.b_top + j + 1
        return cls(p, j, -int(valuation(beta, p)), D, eps, h, abs(c.numerator), c.denominator)

    @property
    def slope(self) -> Fraction:
        return self.b0 - self.D - self.h - Fraction(self.eps, self.p - 1)

    def tail_valuation(self, T: int) -> int | None:
        T = max(T, self.j)
        k = T - self.j
        p = self.p
        A = self.u + k * self.d
        # d/dK of log_p(A + K d) is d / ((A + K d) ln p) and ln p >= 2 (p-1)/(p+1)
        if A == 0 or self.slope * A * 2 * (p - 1) < self.d * (p + 1):
            return None
        lin = (T + 1) * self.b0 - k * (self.D + self.h) - Fraction(k * self.eps, p - 1)
        return math.ceil(lin - (_floor_log(A, p) + 1))


def eval_padic_series(
    coeffs: Sequence[Fraction], beta, p: int, N: int = 64, tail_valuation=None
) -> PadicValue:
    """sum_K coeffs[K] beta^(-K-1) in Q_p to relative precision N.

    ``tail_valuation(T)`` lower-bounds the valuation of every term from index
    T on; without it the series is taken to be finite.
    """
    beta = to_rational(beta)
    if beta == 0:
        raise ConvergenceError("beta = 0")
    inv = 1 / beta
    terms = []
    powk = inv
    for c in coeffs:
        terms.append(c * powk)
        powk *= inv
    if tail_valuation is None:
        return PadicValue.from_rational(sum(terms, Fraction(0)), p, N)
    S = Fraction(0)
    for T, t in enumerate(terms):
        S += t
        tv = tail_valuation(T + 1)
        if tv is None or S == 0:
            continue
        target = int(valuation(S, p)) + N
        if tv >= target:
            return _padic_sum(terms[: T + 1], p, target)
    raise TruncationError(f"precision O(p^{N}) unreachable with {len(coeffs)} coefficients; increase T")


def _padic_sum(terms: Iterable[Fraction], p: int, abs_prec: int) -> PadicValue:
    acc = PadicValue.zero(p, abs_prec)
    for t in terms:
        if t == 0:
            continue
        rel = abs_prec - int(valuation(t, p))
        if rel <= 0:
            continue
        acc = acc + PadicValue.from_rational(t, p, rel)
    return acc


def _check_padic(inst: Instance, beta: Fraction, p: int) -> None:
    ok, detail = convergence_condition(inst, beta, Place(p))
    if not ok:
        raise ConvergenceError(f"p-adic convergence condition fails at p = {p}: {detail}")


def eval_padic(fam: SolutionFamily, j: int, beta, p: int, N: int = 64) -> PadicValue:
    beta = to_rational(beta)
    inst = fam.instance
    _check_padic(inst, beta, p)
    tail = PadicTail.for_instance(inst, j, beta, p)
    if tail.slope <= 0:
        raise TruncationError("precision unreachable: the valuation bound does not grow")
    return eval_padic_series(fam.f[j].coeffs, beta, p, N, tail.tail_valuation)


def padic_partial_sums(fam: SolutionFamily, j: int, beta, p: int, N: int, K: int) -> list[tuple[PadicValue, Fraction]]:
    """For k < K: (partial sum accumulated in Q_p mod p^N, exact rational partial sum)."""
    beta = to_rational(beta)
    inv = 1 / beta
    acc = PadicValue.zero(p, N)
    S = Fraction(0)
    out = []
    powk = inv
    for k in range(K):
        t = fam.f[j].coeffs[k] * powk
        powk *= inv
        S += t
        if t != 0 and N - int(valuation(t, p)) > 0:
            acc = acc + PadicValue.from_rational(t, p, N - int(valuation(t, p)))
        out.append((acc, S))
    return out


# -- estimates -----------------------------------------------------------------------------


def _log_abs_interval(x: Fraction, prec: int = 128) -> BigInterval:
    return log_interval(abs(x), prec)


def _slope(xs: Sequence[int], ys: Sequence[float]) -> float:
    return statistics.linear_regression(xs, ys).slope


@dataclass(frozen=True)
class EstimateRow:
    n: int
    log_R: float
    log_PQ: float
    bound_R: float
    bound_PQ: float


@dataclass(frozen=True)
class EstimateReport:
    place: Place
    beta: Fraction
    rows: tuple[EstimateRow, ...]
    slope_R: float
    slope_PQ: float
    minus_A: float
    U: float
    pq_coefficient: float  # linear coefficient of the bound on |P|, |Q| (m log 4 per step)
    slack: float

    @property
    def remainder_ok(self) -> bool:
        return self.slope_R <= self.minus_A + self.slack

    @property
    def pq_vs_U_ok(self) -> bool:
        return self.slope_PQ <= self.U + self.slack

    @property
    def pq_vs_estimate_ok(self) -> bool:
        return self.slope_PQ <= self.pq_coefficient + self.slack

    def to_dict(self) -> dict:
        return {
            "place": str(self.place),
            "beta": str(self.beta),
            "slope_log_R": self.slope_R,
            "slope_log_PQ": self.slope_PQ,
            "minus_A": self.minus_A,
            "U": self.U,
            "PQ_estimate_coefficient": self.pq_coefficient,
            "slack": self.slack,
            "remainder_ok": self.remainder_ok,
            "PQ_vs_U_ok": self.pq_vs_U_ok,
            "PQ_vs_estimate_ok": self.pq_vs_estimate_ok,
            "rows": [r.__dict__ for r in self.rows],
        }


def _log_abs_v_float(x: Fraction, v: Place) -> float:
    if x == 0:
        return float("-inf")
    if v.archimedean:
        return float(_log_abs_interval(x).mid)
    return -int(valuation(x, v.p)) * math.log(v.p)


def check_estimates(
    inst: Instance, beta, v: Place | str = INF, n_range: Iterable[int] = range(5, 26), slack: float = 0.05
) -> EstimateReport:
    """Exact |P(beta)|_v, |Q(beta)|_v, |R_{n,0,0}(beta)|_v against the linear bounds."""
    beta = to_rational(beta)
    v = Place.parse(v)
    ns = list(n_range)
    T = required_truncation(inst, max(ns)) + 64
    fam = build_family(inst, T)
    m = inst.m
    rows = []
    for n in ns:
        sys = build_system(fam, n)
        vals = [P(beta) for P in sys.P] + [q(beta) for row in sys.Q for q in row]
        log_pq = max(_log_abs_v_float(x, v) for x in vals)
        if v.archimedean:
            R = eval_remainder_arch(fam, sys.P[0], 0, beta, prec=64)
            log_R = float(abs(R).log().mid)
        else:
            R = eval_remainder_padic(fam, sys.P[0], 0, beta, v.p, N=8)
            log_R = -R.valuation * math.log(v.p)
        rows.append(
            EstimateRow(n, log_R, log_pq, -float(A_v(inst, beta, v)) * n, float(F_v(inst, beta, v, n, log4_per_step=True)))
        )
    slope_R = _slope(ns, [r.log_R for r in rows])
    slope_PQ = _slope(ns, [r.log_PQ for r in rows])
    pq_coeff = height_v(inst.alpha, v) * (m - 1) + height_v(beta, v) * (m - 1)
    for a in inst.alpha:
        pq_coeff = pq_coeff + height_v(a, v)
    if v.archimedean:
        pq_coeff = pq_coeff + LogLinear.log(4) * m
    return EstimateReport(
        v, beta, tuple(rows), slope_R, slope_PQ, -float(A_v(inst, beta, v)), float(U_v(inst, beta, v)), float(pq_coeff), slack
    )


def eval_remainder_padic(fam: SolutionFamily, P: Poly, j: int, beta, p: int, N: int = 16) -> PadicValue:
    beta = to_rational(beta)
    inst = fam.instance
    _check_padic(inst, beta, p)
    tail = PadicTail.for_instance(inst, j, beta, p)
    pc = P.coeffs
    fc = fam.f[j].coeffs
    K = fam.T - len(pc) + 1
    r = [sum((pi * fc[i + k] for i, pi in enumerate(pc) if pi), Fraction(0)) for k in range(K)]
    # p_i f_{i+k} beta^{-k-1} = p_i beta^i * (f_{i+k} beta^{-(i+k)-1})
    def tv(T: int) -> int | None:
        vals = []
        for i, pi in enumerate(pc):
            if not pi:
                continue
            t = tail.tail_valuation(T + i)
            if t is None:
                return None
            vals.append(t + int(valuation(pi, p)) - i * tail.b0)
        return min(vals)

    return eval_padic_series(r, beta, p, N, tv)


# -- numeric matrices ---------------------------------------------------------------------


def numeric_matrix(sys: PadeSystem, beta) -> list[list[Fraction]]:
    beta = to_rational(beta)
    return [[P(beta) for P in sys.P]] + [[q(beta) for q in row] for row in sys.Q]


def numeric_det(sys: PadeSystem, beta, prec: int = 256) -> BigInterval:
    return BigInterval.exact(det_rational(numeric_matrix(sys, beta)), prec)


# -- Perron ------------------------------------------------------------------------------------


@dataclass(frozen=True)
class PerronReport:
    sup: float
    bound: float
    window: tuple[int, int]
    passed: bool
    vacuous: bool = False


def _log_abs_fraction(x: Fraction) -> float:
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def perron_check(coeffs: Sequence[Fraction], max_root, lo: int = 900, hi: int = 1000, margin: float = 0.05) -> PerronReport:
    """sup over lo <= n <= hi of |f_n|^(1/n) against max_root + margin."""
    bound = float(max_root) + margin
    best = None
    for n in range(max(lo, 1), min(hi, len(coeffs) - 1) + 1):
        x = Fraction(coeffs[n])
        if x == 0:
            continue
        val = math.exp(_log_abs_fraction(x) / n)
        best = val if best is None else max(best, val)
    if best is None:
        return PerronReport(0.0, bound, (lo, hi), True, vacuous=True)
    return PerronReport(best, bound, (lo, hi), best <= bound)


def perron_check_family(inst: Instance, lo: int = 900, hi: int = 1000, margin: float = 0.05) -> list[PerronReport]:
    fam = build_family(inst, hi + 1)
    r = max(abs(a) for a in inst.alpha)
    return [perron_check(f.coeffs, r, lo, hi, margin) for f in fam.f]


# -- linear form scan --------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    lam: tuple[int, ...]
    log_form: BigInterval | None  # None: the form vanishes to working precision
    log_bound: BigInterval
    status: str  # "ok", "violation", "undecided"

    @property
    def margin(self) -> float | None:
        if self.log_form is None:
            return None
        return float(self.log_form.lower - self.log_bound.upper)


@dataclass(frozen=True)
class ScanReport:
    measure: MeasureReport
    H_max: int
    prec: int
    rows: tuple[ScanRow, ...]
    cells: int

    @property
    def violations(self) -> list[ScanRow]:
        return [r for r in self.rows if r.status == "violation"]

    @property
    def undecided(self) -> list[ScanRow]:
        return [r for r in self.rows if r.status == "undecided"]

    @property
    def min_margin(self) -> float | None:
        ms = [r.margin for r in self.rows if r.margin is not None]
        return min(ms) if ms else None

    @property
    def H0_proxy(self) -> int:
        bad = [_height(r.lam) for r in self.violations]
        return max(bad) + 1 if bad else 1

    def to_dict(self) -> dict:
        return {
            "H_max": self.H_max,
            "prec": self.prec,
            "cells": self.cells,
            "violations": [list(r.lam) for r in self.violations],
            "undecided": [list(r.lam) for r in self.undecided],
            "min_log_margin": self.min_margin,
            "H0_proxy": self.H0_proxy,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "log_form_lower", "log_form_upper", "log_bound_lower", "log_bound_upper", "margin", "status"])
        for r in self.rows:
            lf = r.log_form.to_strings(20) if r.log_form is not None else ("-inf", "-inf")
            lb = r.log_bound.to_strings(20)
            w.writerow([" ".join(map(str, r.lam)), lf[0], lf[1], lb[0], lb[1], "" if r.margin is None else f"{r.margin:.12g}", r.status])
        return buf.getvalue()


def _height(lam: Sequence[int]) -> int:
    return max([1] + [abs(x) for x in lam])


def _form_values(fam: SolutionFamily, beta: Fraction, v0: Place, prec: int):
    w = fam.instance.w
    if v0.archimedean:
        return [eval_arch(fam, j, beta, prec) for j in range(w + 1)]
    N = max(8, prec // max(1, int(math.log2(v0.p))))
    return [eval_padic(fam, j, beta, v0.p, N) for j in range(w + 1)]


def _log_form_arch(lam, vals) -> BigInterval | None:
    form = BigInterval.exact(lam[0], vals[0].prec)
    for x, fv in zip(lam[1:], vals):
        if x:
            form = form + fv * x
    a = abs(form)
    if a.lower <= 0:
        return None
    return a.log()


def _log_form_padic(lam, vals, p: int, prec: int) -> BigInterval | None:
    form = PadicValue.from_rational(lam[0], p, vals[0].absolute_precision + 1) if lam[0] else PadicValue.zero(p, 10**9)
    for x, fv in zip(lam[1:], vals):
        if x:
            form = form + PadicValue.from_rational(x, p, fv.N + 1) * fv
    if form.is_zero():
        return None
    return BigInterval.exact(-form.valuation, prec) * log_interval(p, prec)


def linear_form_scan(
    fam: SolutionFamily,
    beta,
    v0: Place | str,
    epsilon=None,
    H_max: int = 10,
    prec: int = 256,
    report: MeasureReport | None = None,
) -> ScanReport:
    """Check |lambda + sum lambda_j f_j(beta)|_v0 > C H_v0(lambda) H(lambda)^-mu over a box of integers."""
    beta = to_rational(beta)
    v0 = Place.parse(v0)
    inst = fam.instance
    rep = report or measure(inst, beta, v0, epsilon, prec=prec)
    if not rep.applicable:
        raise ValueError("the measure is not applicable: need 0 < epsilon < V")
    mu, logC = rep.mu, rep.log_C
    bounds: dict[int, BigInterval] = {}
    rows: list[ScanRow] = []
    if H_max <= 0:
        return ScanReport(rep, H_max, prec, (), 0)
    vals = _form_values(fam, beta, v0, prec)
    rng = range(-H_max, H_max + 1)
    cells = 0
    pending = []
    for lam in itertools.product(rng, repeat=inst.m):
        if not any(lam):
            continue
        cells += 1
        H = _height(lam)
        if H not in bounds:
            logH = log_interval(H, prec) if H > 1 else BigInterval.exact(0, prec)
            logHv = logH if v0.archimedean else BigInterval.exact(0, prec)
            bounds[H] = logC + logHv - mu * logH
        lf = _log_form_arch(lam, vals) if v0.archimedean else _log_form_padic(lam, vals, v0.p, prec)
        row = _classify(lam, lf, bounds[H])
        if row.status == "undecided":
            pending.append(len(rows))
        rows.append(row)
    if pending:
        vals2 = _form_values(fam, beta, v0, 2 * prec)
        for idx in pending:
            lam = rows[idx].lam
            lf = _log_form_arch(lam, vals2) if v0.archimedean else _log_form_padic(lam, vals2, v0.p, 2 * prec)
            rows[idx] = _classify(lam, lf, rows[idx].log_bound)
    return ScanReport(rep, H_max, prec, tuple(rows), cells)


def _classify(lam, lf: BigInterval | None, lb: BigInterval) -> ScanRow:
    if lf is None:
        return ScanRow(tuple(lam), None, lb, "undecided")
    if lf.lower > lb.upper:
        return ScanRow(tuple(lam), lf, lb, "ok")
    if lf.upper <= lb.lower:
        return ScanRow(tuple(lam), lf, lb, "violation")
    return ScanRow(tuple(lam), lf, lb, "undecided")


__all__ = [
    "ArchMajorant",
    "ConvergenceError",
    "EstimateReport",
    "PadicTail",
    "PerronReport",
    "ScanReport",
    "TruncationError",
    "check_estimates",
    "eval_arch",
    "eval_padic",
    "eval_padic_series",
    "eval_remainder_arch",
    "eval_remainder_padic",
    "eval_series_arch",
    "linear_form_scan",
    "numeric_det",
    "numeric_matrix",
    "padic_partial_sums",
    "perron_check",
    "perron_check_family",
]
