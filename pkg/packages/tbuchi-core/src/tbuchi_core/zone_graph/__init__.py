from ._zone_graph import Edge, Node, ZoneGraph, initial_node, initial_zone, post, post_zone, successors

__all__ = [
    "Edge",
    "Node",
    "ZoneGraph",
    "initial_node",
    "initial_zone",
    "post",
    "post_zone",
    "successors",
]
