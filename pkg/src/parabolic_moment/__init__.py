"""Exact computations with parabolic moment maps on T*(p x C^n).

Modules: ``exact_linalg`` (rational matrices), ``parabolic`` (block structure),
``moment`` (moment map and actions), ``semicanonical`` (Jordan P-semicanonical
forms), ``components`` (zero-fiber strata), ``calogero`` (Calogero-Moser
fiber), ``cli``.
"""

from .errors import (
    BadComposition,
    DegenerateSpectrum,
    IrrationalEigenvalue,
    NotDefective,
    NotInP,
    NotInvertible,
    NotRankOne,
    OutOfRange,
    ParabolicMomentError,
    TooManyBlocks,
)
from .parabolic import ParabolicContext, Region, dim_p, new_context

__all__ = [
    "BadComposition",
    "DegenerateSpectrum",
    "IrrationalEigenvalue",
    "NotDefective",
    "NotInP",
    "NotInvertible",
    "NotRankOne",
    "OutOfRange",
    "ParabolicContext",
    "ParabolicMomentError",
    "Region",
    "TooManyBlocks",
    "dim_p",
    "new_context",
]

__version__ = "0.1.0"
