"""Relational d-separation and topological conditional separation on finite directed graphs."""

from .alexandrov import GeneratedTopology, connected_components, product_closure, topo_closure
from .graph import CondContext, Graph, parse_edge_list, parent_relation
from .relation import Relation, VertexSet
from .separation import (
    ConditionalRelations,
    SplitCertificate,
    build_conditional,
    cousinhood_classes,
    d_separated,
    find_splitting,
    t_separated,
    t_separated_sets,
    verify_splitting,
)

__all__ = [
    "CondContext",
    "ConditionalRelations",
    "GeneratedTopology",
    "Graph",
    "Relation",
    "SplitCertificate",
    "VertexSet",
    "build_conditional",
    "connected_components",
    "cousinhood_classes",
    "d_separated",
    "find_splitting",
    "parent_relation",
    "parse_edge_list",
    "product_closure",
    "t_separated",
    "t_separated_sets",
    "topo_closure",
    "verify_splitting",
]
