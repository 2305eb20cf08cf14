"""Certified construction and analysis of real projective line arrangements."""

from .arrangement import (Arrangement, IncidenceStructure, analysis_report, build_incidence,
                          classify_family, gauss_bonnet_check, is_simplicial, star)
from .families import gen_family, gen_near_pencil, gen_regular, gen_tangent, RegularSpec
from .projective import ProjLine, ProjPoint, ProjTransform, join, meet
from .scalar import IntervalReal, Sign, sign_of

__all__ = [
    "Arrangement", "IncidenceStructure", "analysis_report", "build_incidence", "classify_family",
    "gauss_bonnet_check", "is_simplicial", "star", "gen_family", "gen_near_pencil", "gen_regular",
    "gen_tangent", "RegularSpec", "ProjLine", "ProjPoint", "ProjTransform", "join", "meet",
    "IntervalReal", "Sign", "sign_of",
]
__version__ = "0.1.0"
