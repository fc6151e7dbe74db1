"""Jacobi elliptic functions with generalized Landen, Gauss and complex-shift transformations of any order."""
from .core import (
    ModulusParameter,
    complete_E,
    complete_K,
    jacobi_complex,
    jacobi_complex_minor,
    jacobi_minor,
    jacobi_real,
    jacobi_zeta,
)
from .errors import (
    ApplicabilityError,
    BranchError,
    DenominatorError,
    DomainError,
    LandenKitError,
    NonConservation,
    ParityError,
    PoleError,
    RangeError,
    UnsupportedOrder,
)
from .landen import landen_product, landen_sum, make_transform_data
from .report import ResidualReport

__all__ = [
    "ModulusParameter",
    "complete_E",
    "complete_K",
    "jacobi_complex",
    "jacobi_complex_minor",
    "jacobi_minor",
    "jacobi_real",
    "jacobi_zeta",
    "landen_product",
    "landen_sum",
    "make_transform_data",
    "ResidualReport",
    "ApplicabilityError",
    "BranchError",
    "DenominatorError",
    "DomainError",
    "LandenKitError",
    "NonConservation",
    "ParityError",
    "PoleError",
    "RangeError",
    "UnsupportedOrder",
]
