"""Exact harmonic weight enumerators, demi-matroid polynomials, and the
Molien series of the associated self-dual invariant spaces."""

from .ring import GF, FiniteRing, Zm, make_ring
from .code import LinearCode, dual, puncture, restrict, shorten, span
from .harmonic import SubsetFn, gamma_apply, harm_basis, is_harmonic, level_sum, tilde_eval
from .demimatroid import DemiMatroid, check_axioms, from_code
from .enumerators import (
    harmonic_coboundary,
    harmonic_tutte,
    verify_dualities,
    verify_greene,
    verify_macwilliams,
    weight_enum,
    z_poly,
)
from .invariants import Cyclotomic, build_group, character_diagnosis, molien_series
from .poly import ExpPoly, TutteForm

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FiniteRing",
    "Zm",
    "make_ring",
    "LinearCode",
    "span",
    "dual",
    "puncture",
    "shorten",
    "restrict",
    "SubsetFn",
    "harm_basis",
    "gamma_apply",
    "is_harmonic",
    "tilde_eval",
    "level_sum",
    "DemiMatroid",
    "from_code",
    "check_axioms",
    "weight_enum",
    "z_poly",
    "harmonic_tutte",
    "harmonic_coboundary",
    "verify_greene",
    "verify_macwilliams",
    "verify_dualities",
    "Cyclotomic",
    "build_group",
    "molien_series",
    "character_diagnosis",
    "ExpPoly",
    "TutteForm",
    "__version__",
]
