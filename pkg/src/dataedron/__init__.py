"""Faceted exploration of search results as co-occurrence hyperbag-graphs."""

from .mset import EMPTY, Multiset, additive_union
from .hbgraph import HbGraph, Hypergraph, WeightedHbGraph

__version__ = "0.1.0"

__all__ = [
    "EMPTY",
    "Multiset",
    "additive_union",
    "HbGraph",
    "Hypergraph",
    "WeightedHbGraph",
]
