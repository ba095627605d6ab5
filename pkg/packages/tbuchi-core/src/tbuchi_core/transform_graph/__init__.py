from ._graph import (
    ColumnGraph,
    TransGraph,
    bump_eq,
    compose,
    graph_of_sequence,
    graph_of_transition,
    left,
    restrict_right,
    right,
)

__all__ = [
    "ColumnGraph",
    "TransGraph",
    "bump_eq",
    "compose",
    "graph_of_sequence",
    "graph_of_transition",
    "left",
    "restrict_right",
    "right",
]
