"""Hypothesis checks, the moment matrices M_n and the Pade determinants Delta_n."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Poly, det_poly, det_rational, format_rational, poly_gcd, rational_roots
from .instance import Instance
from .pade import PadeSystem, build_system, required_truncation
from .solutions import SolutionFamily, build_family, phi_f


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    witness: str = ""
    operative: bool = True  # False: reported only, never gates a certificate

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness, "operative": self.operative}


@dataclass(frozen=True)
class AssumptionReport:
    checks: tuple[HypothesisCheck, ...]
    resultant: Poly  # Res_z(a, n a' + b) as a polynomial in n

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.operative)

    def get(self, name: str) -> HypothesisCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "resultant_in_n": [format_rational(c) for c in self.resultant.coeffs],
        }


def sylvester(p: list[Poly], q: list[Poly]) -> list[list[Poly]]:
    """Sylvester matrix of two polynomials in z whose coefficients live in Q[n].

    ``p`` and ``q`` list coefficients from the constant term upwards, with
    formal degrees len(p) - 1 and len(q) - 1.
    """
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    zero = Poly()
    rows = []
    for i in range(dq):
        row = [zero] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(dp):
        row = [zero] * size
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant_in_n(inst: Instance) -> Poly:
    """Res_z(a(z), n a'(z) + b(z)) in Q[n], with n a' + b of formal degree m - 1."""
    m = inst.m
    da = inst.a.derivative()
    p = [Poly.const(inst.a.coeff(i)) for i in range(m + 1)]
    q = [Poly([inst.b.coeff(i), da.coeff(i)]) for i in range(m)]
    return det_poly(sylvester(p, q))


def resultant_by_roots(inst: Instance) -> Poly:
    """prod_i a'(alpha_i) (n + s_i); agrees with :func:`resultant_in_n` for a split a."""
    da = inst.a.derivative()
    out = Poly.const(1)
    for x, s in zip(inst.alpha, inst.s):
        d = da(x)
        out = out * (Poly([inst.b(x), d]) if s is None else Poly([s, 1]) * d)
    return out


def check_hypotheses(inst: Instance, n_max: int) -> AssumptionReport:
    checks = [HypothesisCheck(k, inst.flags[k], inst.witnesses.get(k, "")) for k in ("first", "second", "third")]

    a, da, b = inst.a, inst.a.derivative(), inst.b
    bad_n = [n for n in range(1, n_max + 1) if poly_gcd(da * n + b, a).degree > 0]
    checks.append(
        HypothesisCheck(
            "coprime_a_range",
            not bad_n,
            f"gcd(n a' + b, a) nontrivial for n = {bad_n}" if bad_n else f"checked 1 <= n <= {n_max}",
        )
    )

    res = resultant_in_n(inst)
    if res.is_zero():
        checks.append(HypothesisCheck("coprime_a_all_n", False, "resultant vanishes identically"))
    else:
        roots = sorted({r for r in rational_roots(res) if r.denominator == 1 and r >= 1})
        checks.append(
            HypothesisCheck(
                "coprime_a_all_n",
                not roots,
                "positive integer roots n = " + ", ".join(map(format_rational, roots)) if roots else "no positive integer root",
            )
        )

    # literal reading with b in place of a; reported only
    bad_b = [n for n in range(1, n_max + 1) if b.is_zero() or poly_gcd(da * n + b, b).degree > 0]
    checks.append(
        HypothesisCheck(
            "coprime_b_literal",
            not bad_b,
            f"gcd(n a' + b, b) nontrivial for n = {bad_b[:5]}{'...' if len(bad_b) > 5 else ''}" if bad_b else "",
            operative=False,
        )
    )

    # (k+1) m + n + b_{m-1} != 0 for all k, n >= 0  <=>  b_{m-1} is not an integer <= -m
    bt = inst.b_top
    bad_imp = bt.denominator == 1 and bt <= -inst.m
    checks.append(
        HypothesisCheck("important", not bad_imp, f"b_(m-1) = {format_rational(bt)} <= -m" if bad_imp else "")
    )
    return AssumptionReport(tuple(checks), res)


# -- matrices -------------------------------------------------------------------


def build_Mn(fam: SolutionFamily, n: int) -> list[list[Fraction]]:
    inst = fam.instance
    w = inst.w
    an = inst.a**n
    need = w + int(an.degree)
    if fam.T <= need:
        raise ValueError(f"truncation T = {fam.T} must exceed deg(t^w a^n) = {need}")
    return [[phi_f(fam.f[j], an.shift(k)) for k in range(w + 1)] for j in range(w + 1)]


def delta_matrix(sys: PadeSystem) -> list[list[Poly]]:
    w = sys.instance.w
    if len(sys.P) != w + 2:
        raise ValueError("the P table must cover l = 0..w+1")
    return [list(sys.P)] + [list(sys.Q[j]) for j in range(w + 1)]


def delta_scale(sys: PadeSystem) -> Fraction:
    """c with Delta_n = c det M_n: (-1)^{n(w+1)} times the leading coefficient of P_{n,w+1}."""
    w = sys.instance.w
    sign = -1 if (sys.n * (w + 1)) % 2 else 1
    return sign * sys.P[w + 1].lc()


@dataclass(frozen=True)
class DeterminantReport:
    instance: Instance
    n: int
    Mn: list[list[Fraction]]
    det_Mn: Fraction
    Delta_n: Poly
    assumptions: AssumptionReport
    relation_holds: bool
    certified: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def delta_scalar(self) -> Fraction:
        return self.Delta_n.coeff(0)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "Delta_n": format_rational(self.delta_scalar) if self.Delta_n.degree <= 0 else str(self.Delta_n),
            "det_Mn": format_rational(self.det_Mn),
            "Mn": [[format_rational(x) for x in row] for row in self.Mn],
            "relation_holds": self.relation_holds,
            "certified": self.certified,
            "notes": list(self.notes),
        }


class CertificateFailure(AssertionError):
    """Delta_n non-constant or zero although every operative hypothesis holds."""


def build_Delta(
    sys: PadeSystem, fam: SolutionFamily, assumptions: AssumptionReport | None = None
) -> DeterminantReport:
    if not sys.verified:
        raise ValueError("the Pade system failed its remainder-order checks")
    inst = sys.instance
    if assumptions is None:
        assumptions = check_hypotheses(inst, max(sys.n, 1))
    delta = det_poly(delta_matrix(sys))
    Mn = build_Mn(fam, sys.n)
    dM = det_rational(Mn)
    notes = []
    constant = delta.degree <= 0
    if not constant:
        notes.append(f"Delta_n has degree {delta.degree}")
    relation = constant and delta.coeff(0) == delta_scale(sys) * dM
    if assumptions.passed:
        if not constant or delta.is_zero():
            raise CertificateFailure(f"n = {sys.n}: Delta_n = {delta} on a hypothesis-passing instance")
        certified = True
    else:
        certified = False
        failed = [c.name for c in assumptions.checks if c.operative and not c.passed]
        notes.append("not certified; failing hypotheses: " + ", ".join(failed))
        if delta.is_zero() or dM == 0:
            notes.append("determinant vanishes")
    return DeterminantReport(inst, sys.n, Mn, dM, delta, assumptions, relation, certified, tuple(notes))


@dataclass(frozen=True)
class CertificateBundle:
    instance: Instance
    n_max: int
    assumptions: AssumptionReport
    reports: tuple[DeterminantReport, ...]

    @property
    def all_certified(self) -> bool:
        return all(r.certified for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "instance_hash": self.instance.fingerprint(),
            "instance": self.instance.to_dict(),
            "n_range": [0, self.n_max],
            "hypotheses": self.assumptions.to_dict(),
            "certificates": [r.to_dict() for r in self.reports],
            "all_certified": self.all_certified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def certify_range(inst: Instance, n_max: int, T: int | None = None) -> CertificateBundle:
    T = max(T or 0, required_truncation(inst, n_max))
    fam = build_family(inst, T)
    assumptions = check_hypotheses(inst, max(n_max, 1))
    reports = tuple(build_Delta(build_system(fam, n), fam, assumptions) for n in range(n_max + 1))
    return CertificateBundle(inst, n_max, assumptions, reports)


__all__ = [
    "AssumptionReport",
    "CertificateBundle",
    "CertificateFailure",
    "DeterminantReport",
    "HypothesisCheck",
    "build_Delta",
    "build_Mn",
    "certify_range",
    "check_hypotheses",
    "delta_matrix",
    "delta_scale",
    "resultant_by_roots",
    "resultant_in_n",
    "sylvester",
]
