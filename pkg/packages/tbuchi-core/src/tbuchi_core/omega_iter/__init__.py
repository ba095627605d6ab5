from ._metrics import graph_compositions_total
from ._omega import (
    SQUARING_CEILING,
    AlwaysIterable,
    IterResult,
    NotIterable,
    PreVerdict,
    Reduced,
    audit_witness,
    iterable_from,
    omega_iterable,
    preprocess,
    reset_clocks,
    sequence_clocks,
    squaring_bound,
)

__all__ = [
    "AlwaysIterable",
    "IterResult",
    "NotIterable",
    "PreVerdict",
    "Reduced",
    "SQUARING_CEILING",
    "audit_witness",
    "graph_compositions_total",
    "iterable_from",
    "omega_iterable",
    "preprocess",
    "reset_clocks",
    "sequence_clocks",
    "squaring_bound",
]
