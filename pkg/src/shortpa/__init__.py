"""Short words with full support in the mapping class group of the once-punctured torus.

Mapping classes are PSL(2, Z) matrices, curves are slopes, and the curve
graph is the Farey graph.  The main entry point is
:func:`shortpa.constructor.construct_full_support`.
"""

from .annular import AnnularDomain, annular_distance
from .constructor import ConstantLedger, construct_full_support, make_ledger
from .farey import distance, geodesic
from .torus import INF, MappingClass, Slope, classify, dehn_twist
from .words import Word

__version__ = "0.1.0"

__all__ = [
    "AnnularDomain", "annular_distance", "ConstantLedger", "construct_full_support",
    "make_ledger", "distance", "geodesic", "INF", "MappingClass", "Slope", "classify",
    "dehn_twist", "Word",
]
