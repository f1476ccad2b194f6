"""Exact local densities and spherical functions of p-adic quaternion hermitian forms."""

from .density import (
    build_gram,
    count_reps,
    density_levels,
    density_self_closed,
    is_orbit_label,
)
from .quatring import QuatElem, QuatMatrix, HermMatrix, RingParams
from .ratfunc import Q, QPoly, RatFuncQ, qpow
from .spherical import psi_explicit, size2_closed, verify_induction

__version__ = "0.1.0"

__all__ = [
    "Q",
    "QPoly",
    "QuatElem",
    "QuatMatrix",
    "HermMatrix",
    "RatFuncQ",
    "RingParams",
    "build_gram",
    "count_reps",
    "density_levels",
    "density_self_closed",
    "is_orbit_label",
    "psi_explicit",
    "qpow",
    "size2_closed",
    "verify_induction",
]
