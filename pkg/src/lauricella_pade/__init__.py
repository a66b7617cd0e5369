"""Explicit Pade-type approximants for Lauricella-type series and their linear independence measure."""

from .determinant import CertificateBundle, DeterminantReport, build_Delta, build_Mn, certify_range, check_hypotheses
from .evaluator import (
    check_estimates,
    eval_arch,
    eval_padic,
    eval_remainder_arch,
    linear_form_scan,
    perron_check,
    perron_check_family,
)
from .heights import INF, LogLinear, MeasureReport, Place, A_v, F_v, U_v, V_v, measure
from .instance import HypothesisViolation, Instance, InstanceError, instance_I1, instance_I2
from .intervals import BigInterval
from .pade import PadeSystem, build_system, leibniz_expand, rodrigues_apply, solve_pade_linear_system
from .padic import PadicValue
from .solutions import SolutionFamily, build_by_recurrence, build_closed_form, build_family, jp_expand

__version__ = "0.1.0"

__all__ = [
    "A_v",
    "BigInterval",
    "CertificateBundle",
    "DeterminantReport",
    "F_v",
    "HypothesisViolation",
    "INF",
    "Instance",
    "InstanceError",
    "LogLinear",
    "MeasureReport",
    "PadeSystem",
    "PadicValue",
    "Place",
    "SolutionFamily",
    "U_v",
    "V_v",
    "build_Delta",
    "build_Mn",
    "build_by_recurrence",
    "build_closed_form",
    "build_family",
    "build_system",
    "certify_range",
    "check_estimates",
    "check_hypotheses",
    "eval_arch",
    "eval_padic",
    "eval_remainder_arch",
    "instance_I1",
    "instance_I2",
    "jp_expand",
    "leibniz_expand",
    "linear_form_scan",
    "measure",
    "perron_check",
    "perron_check_family",
    "rodrigues_apply",
    "solve_pade_linear_system",
]
