"""Exact verification of Eisenstein series congruences with polynomial indexes."""

from .arith import ScaledResidue, Residue, reduce_scaled, vp
from .bernoulli import BernoulliCache, a0_star, bernoulli_exact
from .bound import BoundBreakdown, compute_P
from .conditions import CongruenceProblem, check_all, compute_M_S1
from .eisenstein import g_series, g_star_series_mod, series_congruent
from .parser import parse_expression
from .polyfield import IntPoly, RatFunc, vt
from .verifier import build_preset, verify_at_prime, verify_range, verify_star_parts

__version__ = "0.1.0"

__all__ = [
    "BernoulliCache",
    "BoundBreakdown",
    "CongruenceProblem",
    "IntPoly",
    "RatFunc",
    "Residue",
    "ScaledResidue",
    "a0_star",
    "bernoulli_exact",
    "build_preset",
    "check_all",
    "compute_M_S1",
    "compute_P",
    "g_series",
    "g_star_series_mod",
    "parse_expression",
    "reduce_scaled",
    "series_congruent",
    "verify_at_prime",
    "verify_range",
    "verify_star_parts",
    "vp",
    "vt",
]
