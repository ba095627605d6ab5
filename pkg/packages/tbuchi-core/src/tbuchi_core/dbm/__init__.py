from ._bound import INF, LE_ZERO, LT_ZERO, Bound, Number, add, strict, weak
from ._extrapolation import NO_BOUND, LUBounds, extrapolate_lu_plus
from ._zone import (
    Matrix,
    Valuation,
    Zone,
    canonicalize,
    close,
    contains,
    format_zone,
    includes,
    intersect,
    intersect_guard,
    is_empty,
    reset,
    up,
)

__all__ = [
    "Bound",
    "INF",
    "LE_ZERO",
    "LT_ZERO",
    "LUBounds",
    "Matrix",
    "NO_BOUND",
    "Number",
    "Valuation",
    "Zone",
    "add",
    "canonicalize",
    "close",
    "contains",
    "extrapolate_lu_plus",
    "format_zone",
    "includes",
    "intersect",
    "intersect_guard",
    "is_empty",
    "reset",
    "strict",
    "up",
    "weak",
]
