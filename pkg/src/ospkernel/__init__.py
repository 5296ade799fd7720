"""Exact symbolic kernel for a two-parameter quantum supergroup.

Subpackages: exact scalars (rational function and cyclotomic fields),
the PBW multiplication kernel, central element constructors, the Dickson
polynomial toolkit, a faithful representation used as an independent
oracle, an expression parser, and the identity verification registry.
"""

from .scalars import (
    CycloNumber,
    GenericField,
    IntPoly,
    InvalidScalar,
    Scalar,
    SpecializedField,
    VanishingDenominator,
    cyclo_order,
    cyclotomic_polynomial,
    specialize_scalar,
)
from .algebra import (
    Algebra,
    AlgebraElement,
    NonHomogeneous,
    PbwMonomial,
    ZeroElement,
    specialize_element,
)

__all__ = [
    "Algebra",
    "AlgebraElement",
    "CycloNumber",
    "GenericField",
    "IntPoly",
    "InvalidScalar",
    "NonHomogeneous",
    "PbwMonomial",
    "Scalar",
    "SpecializedField",
    "VanishingDenominator",
    "ZeroElement",
    "cyclo_order",
    "cyclotomic_polynomial",
    "specialize_element",
    "specialize_scalar",
]

__version__ = "0.1.0"
