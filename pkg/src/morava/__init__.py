"""Height-s Morava K-theory of the classifying spaces of four groups of order 32, by machine.

The subpackages build the Honda formal group law over GF(2), the presented
rings for G34-G37, a Buchberger engine to count their dimension, and the
abelian-subgroup model used to check every relation by restriction.
"""
__version__ = "0.1.0"

from .poly import GF2, QQ, Poly, PolyRing, TruncatedRing
from .fgl import FglContext, fgl_series, honda_log, n_series
from .grobner import DEGREVLEX, LEX, GroebnerBasis, MonomialOrder, buchberger, normal_form
from .presentations import GroupId, build_extra_relations, build_ideal, expected_chi, presentation
from .abelian import abelian_model, decompose, verify_restrictions

__all__ = [
    "GF2", "QQ", "Poly", "PolyRing", "TruncatedRing",
    "FglContext", "fgl_series", "honda_log", "n_series",
    "DEGREVLEX", "LEX", "GroebnerBasis", "MonomialOrder", "buchberger", "normal_form",
    "GroupId", "build_extra_relations", "build_ideal", "expected_chi", "presentation",
    "abelian_model", "decompose", "verify_restrictions",
]
