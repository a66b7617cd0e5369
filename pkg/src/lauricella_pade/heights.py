"""Places, heights and the quantities entering the independence measure.

Every real number here is a rational constant plus a rational combination of
logarithms of primes (:class:`LogLinear`).  Those are exact objects; they are
turned into intervals only on request.  Since the logarithms of primes are
linearly independent over Q and e^c is transcendental for rational c != 0,
a LogLinear value is zero only when all its coefficients are, so signs can be
decided by refining the enclosure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .exact.rational import RationalLike, den, euler_phi, factorize, to_rational, valuation
from .instance import Instance
from .intervals import BigInterval, log_interval

# -- places -------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Place:
    """The real place (p = 0) or the p-adic place for a prime p."""

    p: int = 0

    def __post_init__(self):
        if self.p and (self.p < 2 or factorize(self.p) != {self.p: 1}):
            raise ValueError(f"{self.p} is not a prime")

    @property
    def archimedean(self) -> bool:
        return self.p == 0

    @classmethod
    def parse(cls, text: Union[str, int, "Place"]) -> "Place":
        if isinstance(text, Place):
            return text
        if isinstance(text, int):
            return cls(text)
        t = str(text).strip().lower()
        if t in ("inf", "infinity", "oo", "archimedean", "real"):
            return cls(0)
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"unrecognized place {text!r}; expected 'inf' or a prime") from None

    def __str__(self) -> str:
        return "inf" if self.archimedean else str(self.p)


INF = Place(0)


# -- exact log-linear reals -----------------------------------------------------------

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class LogLinear:
    """const + sum_p coeffs[p] * log p."""

    const: Fraction = Fraction(0)
    coeffs: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def make(cls, const: Scalar = 0, coeffs: dict[int, Fraction] | None = None) -> "LogLinear":
        items = tuple(sorted((p, Fraction(c)) for p, c in (coeffs or {}).items() if c != 0))
        return cls(Fraction(const), items)

    @classmethod
    def log(cls, x: RationalLike) -> "LogLinear":
        """log |x| for a nonzero rational x."""
        x = abs(to_rational(x))
        if x == 0:
            raise ValueError("log of zero")
        c: dict[int, Fraction] = {}
        for p, e in factorize(x.numerator).items():
            c[p] = c.get(p, Fraction(0)) + e
        for p, e in factorize(x.denominator).items():
            c[p] = c.get(p, Fraction(0)) - e
        return cls.make(0, c)

    @classmethod
    def const_(cls, c: Scalar) -> "LogLinear":
        return cls(Fraction(c))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "LogLinear | Scalar") -> "LogLinear":
        if not isinstance(other, LogLinear):
            other = LogLinear(Fraction(other))
        c = self.as_dict()
        for p, v in other.coeffs:
            c[p] = c.get(p, Fraction(0)) + v
        return LogLinear.make(self.const + other.const, c)

    __radd__ = __add__

    def __neg__(self) -> "LogLinear":
        return LogLinear(-self.const, tuple((p, -v) for p, v in self.coeffs))

    def __sub__(self, other: "LogLinear | Scalar") -> "LogLinear":
        return self + (-other if isinstance(other, LogLinear) else -Fraction(other))

    def __rsub__(self, other: Scalar) -> "LogLinear":
        return (-self) + other

    def __mul__(self, k: Scalar) -> "LogLinear":
        k = Fraction(k)
        return LogLinear.make(self.const * k, {p: v * k for p, v in self.coeffs})

    __rmul__ = __mul__

    def __truediv__(self, k: Scalar) -> "LogLinear":
        return self * (1 / Fraction(k))

    def is_zero(self) -> bool:
        return self.const == 0 and not self.coeffs

    def interval(self, prec: int = 128) -> BigInterval:
        out = BigInterval.exact(self.const, prec)
        for p, c in self.coeffs:
            out = out + log_interval(p, prec) * c
        return out

    def sign(self, prec: int = 64) -> int:
        if self.is_zero():
            return 0
        while True:
            iv_ = self.interval(prec)
            if iv_.positive():
                return 1
            if iv_.negative():
                return -1
            prec *= 2

    def __float__(self) -> float:
        return float(self.interval(64).mid)

    def __str__(self) -> str:
        parts = []
        if self.const or not self.coeffs:
            parts.append(str(self.const))
        for p, c in self.coeffs:
            parts.append(f"log({p})" if c == 1 else f"-log({p})" if c == -1 else f"{c}*log({p})")
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self) -> dict:
        return {"const": str(self.const), "log": {str(p): str(c) for p, c in self.coeffs}}


def _tuple(xs: Iterable[RationalLike] | RationalLike) -> tuple[Fraction, ...]:
    if isinstance(xs, (int, Fraction, str)):
        return (to_rational(xs),)
    return tuple(to_rational(x) for x in xs)


# -- absolute values and heights -------------------------------------------------------


def log_abs_v(x: RationalLike, v: Place) -> LogLinear:
    x = to_rational(x)
    if x == 0:
        raise ValueError("log |0|_v is -infinity")
    if v.archimedean:
        return LogLinear.log(x)
    return LogLinear.log(v.p) * (-valuation(x, v.p))


def abs_v_exceeds_one(x: Fraction, v: Place) -> bool:
    if v.archimedean:
        return abs(x) > 1
    return x != 0 and valuation(x, v.p) < 0


def height_v(xs: Iterable[RationalLike] | RationalLike, v: Place) -> LogLinear:
    """log max(1, |x_1|_v, ..., |x_r|_v)."""
    xs = _tuple(xs)
    if v.archimedean:
        top = max([Fraction(1)] + [abs(x) for x in xs])
        return LogLinear.log(top)
    e = max([0] + [-int(valuation(x, v.p)) for x in xs if x != 0])
    return LogLinear.log(v.p) * e


def support(xs: Iterable[RationalLike] | RationalLike) -> list[Place]:
    """Places where some |x_i|_v may exceed 1: infinity and primes of denominators."""
    xs = _tuple(xs)
    primes = sorted(set().union(*[factorize(x.denominator).keys() for x in xs]) if xs else set())
    return [INF] + [Place(p) for p in primes]


def height(xs: Iterable[RationalLike] | RationalLike) -> LogLinear:
    """Global logarithmic height, summed over the finite support."""
    xs = _tuple(xs)
    out = LogLinear()
    for v in support(xs):
        out = out + height_v(xs, v)
    return out


def product_formula_sum(x: RationalLike) -> LogLinear:
    """sum_v log |x|_v over infinity and every prime dividing x; zero for x != 0."""
    x = to_rational(x)
    places = [INF] + [Place(p) for p in sorted(set(factorize(x.numerator)) | set(factorize(x.denominator)))]
    out = LogLinear()
    for v in places:
        out = out + log_abs_v(x, v)
    return out


# -- denominators and arithmetic growth ---------------------------------------------------


def log_mu_alpha(s: RationalLike) -> LogLinear:
    """log of den(s) * prod_{q | den(s)} q^{1/(q-1)}."""
    d = den(s)
    out = LogLinear.log(d)
    for q in factorize(d):
        out = out + LogLinear.log(q) * Fraction(1, q - 1)
    return out


def mu_n(s: RationalLike, n: int) -> int:
    """den(s)^n * prod_{q | den(s)} q^{floor(n/(q-1))}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    d = den(s)
    out = d**n
    for q in factorize(d):
        out *= q ** (n // (q - 1))
    return out


def _check_b(b: Fraction) -> None:
    if b.denominator == 1 and b <= -1:
        raise ValueError(f"b = {b} is an integer <= -1; some b+k+1 vanishes")


def d_n(b: RationalLike, n: int) -> int:
    """den(1/(b+1), ..., 1/(b+n+1))."""
    b = to_rational(b)
    _check_b(b)
    out = 1
    for k in range(n + 1):
        out = math.lcm(out, abs((b + k + 1).numerator))
    return out


def d_n_sequence(b: RationalLike, n_max: int) -> list[int]:
    b = to_rational(b)
    _check_b(b)
    out, cur = [], 1
    for k in range(n_max + 1):
        cur = math.lcm(cur, abs((b + k + 1).numerator))
        out.append(cur)
    return out


def d_n_growth_constant(b: RationalLike) -> Fraction:
    """den(b)/phi(den(b)) * sum_{1 <= j <= den(b), (j, den(b)) = 1} 1/j."""
    d = den(b)
    total = sum((Fraction(1, j) for j in range(1, d + 1) if math.gcd(j, d) == 1), Fraction(0))
    return Fraction(d, euler_phi(d)) * total


def log_mu_v(s: RationalLike, v: Place, beta: RationalLike) -> LogLinear:
    """log mu_v(s): 0 at infinity and when |beta|_v <= 1, else log(|den s|_v |p|_v^{1/(p-1)})."""
    beta = to_rational(beta)
    if v.archimedean or not abs_v_exceeds_one(beta, v):
        return LogLinear()
    p = v.p
    return log_abs_v(den(s), v) + LogLinear.log(p) * Fraction(-1, p - 1)


# -- measure quantities -------------------------------------------------------------------


def _check_beta(beta: Fraction) -> None:
    if beta == 0:
        raise ValueError("beta must be nonzero")


def V_v(inst: Instance, beta: RationalLike, v0: Place) -> LogLinear:
    beta = to_rational(beta)
    _check_beta(beta)
    m = inst.m
    alpha = inst.alpha
    out = height_v(beta, v0) * m - height(beta) * (m - 1)
    for a in alpha:
        out = out - height(a)
    inner = height(alpha) + LogLinear.log(4)
    for s in inst.s:
        inner = inner + log_mu_alpha(s)
    out = out - inner * m
    return out - (m - 1) * d_n_growth_constant(inst.b_top)


def A_v(inst: Instance, beta: RationalLike, v0: Place) -> LogLinear:
    beta = to_rational(beta)
    _check_beta(beta)
    m = inst.m
    out = log_abs_v(beta, v0) - height_v(inst.alpha, v0) * m
    for a in inst.alpha:
        out = out - height_v(a, v0)
    if v0.archimedean:
        return out - LogLinear.log(2) * m
    for s in inst.s:
        out = out + log_mu_v(s, v0, beta) * m
    return out


def U_v(inst: Instance, beta: RationalLike, v0: Place) -> LogLinear:
    """Evaluated with every local height at v0."""
    beta = to_rational(beta)
    m = inst.m
    out = (height_v(inst.alpha, v0) + height_v(beta, v0)) * (m - 1)
    for a in inst.alpha:
        out = out + height_v(a, v0)
    for s in inst.s:
        out = out + log_mu_v(s, v0, beta) * m
    return out


def F_v(inst: Instance, beta: RationalLike, v: Place, n: int, log4_per_step: bool = False) -> LogLinear:
    """F_v(n) with o(n) := 0.

    At the real place the m log 4 term is added once, as displayed in the
    definition; ``log4_per_step=True`` multiplies it by n as in the bound for
    |P(beta)| and |Q(beta)| that F_v is meant to dominate.
    """
    beta = to_rational(beta)
    m = inst.m
    out = (height_v(inst.alpha, v) + height_v(beta, v)) * (m - 1)
    for a in inst.alpha:
        out = out + height_v(a, v)
    out = out * n
    if v.archimedean:
        return out + LogLinear.log(4) * (m * (n if log4_per_step else 1))
    for s in inst.s:
        out = out - log_abs_v(mu_n(s, n), v) * m
    return out + log_abs_v(d_n(inst.b_top, (m - 1) * (n + 1)), v)


# -- reports ----------------------------------------------------------------------------------


def convergence_condition(inst: Instance, beta: RationalLike, v: Place) -> tuple[bool, str]:
    """The per-place condition under which the remainders converge at beta."""
    beta = to_rational(beta)
    if v.archimedean:
        r = max(abs(a) for a in inst.alpha)
        return abs(beta) > r, f"|beta| = {abs(beta)} vs max|alpha_i| = {r}"
    lhs = log_abs_v(beta, v)
    rhs = height_v(inst.alpha, v)
    for s in inst.s:
        rhs = rhs - log_mu_v(s, v, beta)
    ok = (lhs - rhs).sign() > 0
    return ok, f"log|beta|_v = {lhs} vs log bound = {rhs}"


def _ratio(num: BigInterval, den_: BigInterval) -> BigInterval:
    return num / den_


@dataclass(frozen=True)
class MeasureReport:
    instance: Instance
    beta: Fraction
    v0: Place
    epsilon: LogLinear
    V: LogLinear
    A: LogLinear
    U: LogLinear
    applicable: bool
    convergence_ok: bool
    convergence_detail: str
    prec: int = 128
    notes: tuple[str, ...] = field(default=())

    @property
    def V_positive(self) -> bool:
        return self.V.sign() > 0

    @property
    def gap(self) -> LogLinear:
        return self.V - self.epsilon

    @property
    def mu(self) -> BigInterval | None:
        if not self.applicable:
            return None
        return _ratio((self.A + self.U).interval(self.prec), self.gap.interval(self.prec))

    @property
    def log_C(self) -> BigInterval | None:
        """log C = -(log 2 / (V - eps) + 1) (A + U)."""
        if not self.applicable:
            return None
        g = self.gap.interval(self.prec)
        k = log_interval(2, self.prec) / g + 1
        return -(k * (self.A + self.U).interval(self.prec))

    @property
    def C(self) -> BigInterval | None:
        lc = self.log_C
        return None if lc is None else lc.exp()

    def to_dict(self) -> dict:
        def enc(x: BigInterval | None):
            return None if x is None else list(x.to_strings(25))

        return {
            "instance_hash": self.instance.fingerprint(),
            "beta": str(self.beta),
            "place": str(self.v0),
            "epsilon": {"expr": str(self.epsilon), "interval": enc(self.epsilon.interval(self.prec))},
            "V": {"expr": str(self.V), "tree": self.V.to_dict(), "interval": enc(self.V.interval(self.prec))},
            "A": {"expr": str(self.A), "tree": self.A.to_dict(), "interval": enc(self.A.interval(self.prec))},
            "U": {"expr": str(self.U), "tree": self.U.to_dict(), "interval": enc(self.U.interval(self.prec))},
            "V_positive": self.V_positive,
            "applicable": self.applicable,
            "mu": {"expr": f"({self.A + self.U}) / ({self.gap})", "interval": enc(self.mu)} if self.applicable else None,
            "log_C": {
                "expr": f"-(log(2) / ({self.gap}) + 1) * ({self.A + self.U})",
                "interval": enc(self.log_C),
            }
            if self.applicable
            else None,
            "convergence_condition": {"holds": self.convergence_ok, "detail": self.convergence_detail},
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def measure(
    inst: Instance,
    beta: RationalLike,
    v0: Place | str,
    epsilon: LogLinear | RationalLike | None = None,
    prec: int = 128,
) -> MeasureReport:
    """Assemble V, A, U, mu and C; epsilon defaults to V/2."""
    beta = to_rational(beta)
    v0 = Place.parse(v0)
    V = V_v(inst, beta, v0)
    A = A_v(inst, beta, v0)
    U = U_v(inst, beta, v0)
    if epsilon is None:
        eps = V / 2
    elif isinstance(epsilon, LogLinear):
        eps = epsilon
    else:
        eps = LogLinear.const_(to_rational(epsilon))
    notes = []
    applicable = eps.sign() > 0 and (V - eps).sign() > 0
    if not applicable:
        notes.append("not applicable: requires 0 < epsilon < V")
    ok, detail = convergence_condition(inst, beta, v0)
    if V.sign() > 0 and not ok:
        notes.append("V > 0 although the per-place convergence condition fails")
    return MeasureReport(inst, beta, v0, eps, V, A, U, applicable, ok, detail, prec, tuple(notes))


def V_threshold(inst: Instance, v0: Place = INF, start: int = 2) -> int:
    """Least integer beta >= start with V_{v0}(beta) > 0 (real place, beta > 0)."""
    if not v0.archimedean:
        raise ValueError("threshold search is implemented for the real place")
    hi = max(start, 2)
    while V_v(inst, hi, v0).sign() <= 0:
        hi *= 2
        if hi > 2**4096:
            raise ArithmeticError("V never becomes positive")
    lo = max(start, hi // 2) if hi > start else start
    if V_v(inst, lo, v0).sign() > 0:
        return lo
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if V_v(inst, mid, v0).sign() > 0:
            hi = mid
        else:
            lo = mid
    return hi


__all__ = [
    "A_v",
    "F_v",
    "INF",
    "LogLinear",
    "MeasureReport",
    "Place",
    "U_v",
    "V_threshold",
    "V_v",
    "abs_v_exceeds_one",
    "convergence_condition",
    "d_n",
    "d_n_growth_constant",
    "d_n_sequence",
    "height",
    "height_v",
    "log_abs_v",
    "log_mu_alpha",
    "log_mu_v",
    "measure",
    "mu_n",
    "product_formula_sum",
    "support",
]
