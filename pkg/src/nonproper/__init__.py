"""Non-proper value sets of plane polynomial maps.

The set of values over which ``f = (P, Q): C^2 -> C^2`` fails to be proper
is computed along two independent routes, elimination (the leading
coefficient R0 of ``Res_y(P - u, Q - v)`` in x) and Newton-Puiseux
dicritical series, and the two are checked against each other and against
the shape that a constant Jacobian would force.
"""

from .errors import NonproperError
from .poly import BiPoly, NormalForm, PolyMap, jacobian, normalize_monic, parse_polynomial

__all__ = [
    "BiPoly",
    "NormalForm",
    "NonproperError",
    "PolyMap",
    "jacobian",
    "normalize_monic",
    "parse_polynomial",
]

__version__ = "0.1.0"
