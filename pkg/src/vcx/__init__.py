"""Exact computation for uniform set families under VC-dimension constraints."""
from vcx.core import (
    DomainError,
    Family,
    GroundSet,
    KSet,
    ShatterWitnessTable,
    incremental_vc_check,
    shatters,
    uniform_vc_at_most,
    vc_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "Family",
    "GroundSet",
    "KSet",
    "ShatterWitnessTable",
    "incremental_vc_check",
    "shatters",
    "uniform_vc_at_most",
    "vc_dimension",
]
