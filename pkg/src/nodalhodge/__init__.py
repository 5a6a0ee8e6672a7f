"""Exact graded-piece computations for nodal projective hypersurfaces.

Arithmetic is over Q(i); every dimension is an exact rank.
"""

from .exactnum import GaussRat, parse_gauss
from .polyring import HomoPoly, ProjPoint
from .ideals import GradedPiece, NodeSet
from .hodge import Hypersurface, analyze
from .singcat import catalog, verify_nodes

__all__ = [
    "GaussRat", "parse_gauss", "HomoPoly", "ProjPoint", "GradedPiece", "NodeSet",
    "Hypersurface", "analyze", "catalog", "verify_nodes",
]
__version__ = "0.1.0"
