"""Exact-arithmetic certificates for a localization tower of group extensions.

The package realizes, with machine-verified exact computations, a chain of
constructions over the two-generator group with relations a^(b^2) = a a^(3b)
and [a, a^b] = 1: the norm and parity theory of augmentation-1 group-ring
elements, the class-2 central extensions and their truncations, validated
2-connected maps between truncation levels, the colimit model with its
quasi-cyclic center, lower central series through transfinite stages, and the
unique-lifting property of the center truncations.
"""

from .errors import (
    InsufficientTowerError,
    LaurentParseError,
    LevelMismatchError,
    NotInSError,
    PreconditionError,
    TheoremViolationError,
    VltowerError,
)
from .laurent import LaurentPoly, augmentation, enumerate_S, in_S, parse_laurent
from .localization import CenterColim, Dyadic, Fraction, dyadic_make, frac_eq
from .quadratic import (
    Lattice,
    Mat2,
    NormData,
    action_matrix,
    evaluate_at_U,
    norm,
    norm_data,
    predicted_parity,
    two_adic_split,
    verify_parity_range,
)

__all__ = [
    "CenterColim",
    "Dyadic",
    "Fraction",
    "InsufficientTowerError",
    "Lattice",
    "LaurentParseError",
    "LaurentPoly",
    "LevelMismatchError",
    "Mat2",
    "NormData",
    "NotInSError",
    "PreconditionError",
    "TheoremViolationError",
    "VltowerError",
    "action_matrix",
    "augmentation",
    "dyadic_make",
    "enumerate_S",
    "evaluate_at_U",
    "frac_eq",
    "in_S",
    "norm",
    "norm_data",
    "parse_laurent",
    "predicted_parity",
    "two_adic_split",
    "verify_parity_range",
]
