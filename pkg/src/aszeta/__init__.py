"""Zeta functions of quadratic Artin-Schreier curves y^2 + y = x R(x) over F_{2^m}."""

from .fieldtower import FieldCtx, FieldElem, FieldError, build_base_field, build_extension
from .lfun import (
    CurveSpec,
    LFunctionReport,
    MultiplicitySet,
    PeriodReport,
    assemble,
    determine_period,
    modified_sum,
    predict_epsilon,
)
from .linearized import AdditivePoly, kernel_poly, radical_profile
from .quadform import QuadClassification, QuadraticSpace, brute_sum, build_space, classify, exp_sum
from .zsqrt2 import PolyZSqrt2, ZSqrt2

__all__ = [
    "AdditivePoly",
    "CurveSpec",
    "FieldCtx",
    "FieldElem",
    "FieldError",
    "LFunctionReport",
    "MultiplicitySet",
    "PeriodReport",
    "PolyZSqrt2",
    "QuadClassification",
    "QuadraticSpace",
    "ZSqrt2",
    "assemble",
    "brute_sum",
    "build_base_field",
    "build_extension",
    "build_space",
    "classify",
    "determine_period",
    "exp_sum",
    "kernel_poly",
    "modified_sum",
    "predict_epsilon",
    "radical_profile",
]
