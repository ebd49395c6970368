"""Metadata-level schema: which types exist, which are mutually reachable,
and what is navigable once a reference type is fixed."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .hbgraph import HbGraph, connected_components
from .mset import Multiset

__all__ = [
    "SchemaHypergraph",
    "NavigationContext",
    "extract_schema",
    "reachability",
    "navigation_hyperedge",
    "context_for",
    "load_schema",
    "ARXIV_TYPES",
    "ARXIV_SCHEMA",
    "ARXIV_REFERENCE_CANDIDATES",
]


@dataclass(frozen=True)
class SchemaHypergraph:
    """Hypergraph over metadata type names."""

    types: frozenset[str]
    edges: tuple[frozenset[str], ...]

    def __post_init__(self):
        for edge in self.edges:
            if not edge:
                raise ValueError("schema hyperedges must be non-empty")
            stray = edge - self.types
            if stray:
                raise ValueError(f"schema hyperedge names unknown types: {sorted(stray)}")


@dataclass(frozen=True)
class NavigationContext:
    """A reachability hyperedge with a chosen reference type.

    ``current_reference`` must be one of ``reference_candidates``, itself a
    subset of the reachability edge, and at least one visualisation type
    must remain once the reference is removed.
    """

    reachability_edge: frozenset[str]
    reference_candidates: frozenset[str]
    current_reference: str

    def __post_init__(self):
        if not self.reference_candidates <= self.reachability_edge:
            raise ValueError("reference candidates must lie inside the reachability hyperedge")
        if not self.reference_candidates:
            raise ValueError("at least one reference candidate is required")
        if self.current_reference not in self.reference_candidates:
            raise ValueError(
                f"current reference {self.current_reference!r} is not a declared candidate"
            )
        if not self.reachability_edge - {self.current_reference}:
            raise ValueError("no visualisation types remain beside the reference")


def extract_schema(ext: SchemaHypergraph, keep: Iterable[str]) -> SchemaHypergraph:
    """Restrict the extended schema to the types of interest.

    Each hyperedge is intersected with ``keep``; empty intersections are
    dropped and equal intersections deduplicated (set semantics). ``keep``
    must name known types only.
    """
    keep_set = frozenset(keep)
    unknown = keep_set - ext.types
    if unknown:
        raise ValueError(f"unknown type names: {sorted(unknown)}")
    seen: list[frozenset[str]] = []
    for edge in ext.edges:
        cut = edge & keep_set
        if cut and cut not in seen:
            seen.append(cut)
    return SchemaHypergraph(keep_set, tuple(seen))


def reachability(hx: SchemaHypergraph) -> tuple[SchemaHypergraph, bool]:
    """One hyperedge per connected component of the extracted schema.

    Returns the reachability hypergraph and an ideal-situation flag, true
    when the whole dataset is navigable (exactly one hyperedge).
    """
    carrier = HbGraph(
        hx.types,
        [(f"e{i}", Multiset({t: 1 for t in edge})) for i, edge in enumerate(hx.edges)],
    )
    blocks = tuple(connected_components(carrier))
    return SchemaHypergraph(hx.types, blocks), len(blocks) == 1


def navigation_hyperedge(ctx: NavigationContext) -> frozenset[str]:
    """Visualisation types reachable without changing reference."""
    remaining = ctx.reachability_edge - {ctx.current_reference}
    if not remaining:
        raise ValueError("no visualisation types remain beside the reference")
    return remaining


def context_for(
    schema: SchemaHypergraph,
    candidates: Iterable[str],
    reference: str,
) -> NavigationContext:
    """Build the navigation context for ``reference`` within its reachability edge."""
    reach, _ = reachability(schema)
    candidate_set = frozenset(candidates)
    if reference not in candidate_set:
        raise ValueError(f"{reference!r} is not a declared reference candidate")
    edge = next((e for e in reach.edges if reference in e), None)
    if edge is None:
        raise ValueError(f"{reference!r} does not appear in the schema")
    return NavigationContext(edge, candidate_set & edge, reference)


def load_schema(source: Mapping | str | Path) -> tuple[SchemaHypergraph, frozenset[str]]:
    """Load a schema config: {"types": [...], "edges": [[...], ...], "reference_candidates": [...]}."""
    if isinstance(source, (str, Path)):
        obj = json.loads(Path(source).read_text(encoding="utf-8"))
    else:
        obj = source
    types = frozenset(obj["types"])
    edges = tuple(frozenset(e) for e in obj["edges"])
    schema = SchemaHypergraph(types, edges)
    candidates = frozenset(obj["reference_candidates"])
    if not candidates:
        raise ValueError("schema config must declare at least one reference candidate")
    stray = candidates - types
    if stray:
        raise ValueError(f"reference candidates name unknown types: {sorted(stray)}")
    return schema, candidates


# Built-in schema for the Arxiv corpus: a single hyperedge, trivially the
# ideal (connected) case. Organisations/countries are absent because the
# Arxiv feed carries no structured affiliations.
ARXIV_TYPES = ("pubid", "authors", "keywords", "categories")
ARXIV_SCHEMA = SchemaHypergraph(frozenset(ARXIV_TYPES), (frozenset(ARXIV_TYPES),))
ARXIV_REFERENCE_CANDIDATES = frozenset({"pubid", "keywords", "categories"})
