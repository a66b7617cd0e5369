from .diffop import DiffOperator, adjoint
from .linalg import bareiss_det, det_poly, det_rational, nullspace
from .poly import NEG_INF, Poly, poly_gcd, rational_roots
from .ratfunc import RationalFunction
from .rational import (
    RationalParseError,
    den,
    format_rational,
    parse_rational,
    to_rational,
)
from .series import LaurentSeries, OrdLowerBound, ord_inf

__all__ = [
    "DiffOperator",
    "LaurentSeries",
    "NEG_INF",
    "OrdLowerBound",
    "Poly",
    "RationalFunction",
    "RationalParseError",
    "adjoint",
    "bareiss_det",
    "den",
    "det_poly",
    "det_rational",
    "format_rational",
    "nullspace",
    "ord_inf",
    "parse_rational",
    "poly_gcd",
    "rational_roots",
    "to_rational",
]
