"""Co-occurrence facets of a search result.

For a chosen reference type rho, every value s of rho reachable from the
search indexes one hb-edge: the additive union of the alpha-values of all
entities carrying s. Grouping mset-equal edges yields the reduced weighted
facet; a vertex selection in one facet navigates to any other facet of the
same reference through the provenance maps kept here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .hbgraph import HbGraph, WeightedHbGraph
from .mset import EMPTY, Multiset, additive_union

__all__ = [
    "PhysicalEntity",
    "Corpus",
    "SearchResult",
    "RawFacet",
    "ReducedFacet",
    "sigma_rho",
    "raw_facet",
    "reduce_facet",
    "navigate",
    "reference_facet",
    "reference_reduced",
    "facet_to_json",
    "covered_references",
]


@dataclass(frozen=True)
class PhysicalEntity:
    """A reference id plus one attribute multiset per metadata type."""

    reference: str
    attributes: Mapping[str, Multiset]

    def attribute(self, type_name: str) -> Multiset:
        return self.attributes.get(type_name, EMPTY)


class Corpus:
    """Immutable collection of entities with a declared type universe."""

    __slots__ = ("_by_ref", "_types")

    def __init__(self, entities: Iterable[PhysicalEntity], types: Iterable[str] | None = None):
        self._by_ref: dict[str, PhysicalEntity] = {}
        for entity in entities:
            if entity.reference in self._by_ref:
                raise ValueError(f"duplicate reference {entity.reference!r}")
            self._by_ref[entity.reference] = entity
        if types is None:
            inferred: set[str] = set()
            for entity in self._by_ref.values():
                inferred.update(entity.attributes)
            self._types = frozenset(inferred)
        else:
            self._types = frozenset(types)
            for entity in self._by_ref.values():
                stray = set(entity.attributes) - self._types
                if stray:
                    raise ValueError(
                        f"entity {entity.reference!r} carries undeclared types: {sorted(stray)}"
                    )

    @property
    def types(self) -> frozenset[str]:
        return self._types

    @property
    def references(self) -> tuple[str, ...]:
        return tuple(self._by_ref)

    def entity(self, reference: str) -> PhysicalEntity:
        return self._by_ref[reference]

    def attribute(self, reference: str, type_name: str) -> Multiset:
        """A_{type,ref}; empty multiset when the entity carries no such values."""
        return self._by_ref[reference].attribute(type_name)

    def require_type(self, type_name: str) -> None:
        if type_name not in self._types:
            raise ValueError(f"unknown type {type_name!r}")

    def __len__(self) -> int:
        return len(self._by_ref)

    def __contains__(self, reference: str) -> bool:
        return reference in self._by_ref

    def to_json(self) -> list[dict]:
        return [
            {
                "reference": ref,
                "attributes": {
                    t: entity.attribute(t).to_json() for t in sorted(entity.attributes)
                },
            }
            for ref, entity in self._by_ref.items()
        ]

    @classmethod
    def from_json(cls, rows: Sequence[Mapping], types: Iterable[str] | None = None) -> Corpus:
        entities = [
            PhysicalEntity(
                row["reference"],
                {t: Multiset.from_json(spec) for t, spec in row["attributes"].items()},
            )
            for row in rows
        ]
        return cls(entities, types)


@dataclass(frozen=True)
class SearchResult:
    """Ordered references returned by a search, with its originating query."""

    references: tuple[str, ...]
    query: str | None = None

    def __post_init__(self):
        if len(set(self.references)) != len(self.references):
            raise ValueError("search references must be unique")


def sigma_rho(
    corpus: Corpus, search: SearchResult, rho: str
) -> tuple[frozenset[str], dict[str, frozenset[str]]]:
    """Reference values reachable from the search, with their provenance.

    Returns (Sigma, refs_of) where Sigma is the union of the rho-supports
    over the searched entities and refs_of maps every s in Sigma to the
    non-empty set of references carrying it.
    """
    corpus.require_type(rho)
    refs_of: dict[str, set[str]] = {}
    for ref in search.references:
        if ref not in corpus:
            raise KeyError(f"unknown reference {ref!r}")
        for value in corpus.attribute(ref, rho).support:
            refs_of.setdefault(value, set()).add(ref)
    return frozenset(refs_of), {s: frozenset(rs) for s, rs in refs_of.items()}


@dataclass(frozen=True)
class RawFacet:
    """One hb-edge per reference value: the co-occurrences of alpha under rho."""

    alpha: str
    rho: str
    hbgraph: HbGraph
    sigma: frozenset[str]
    refs_of: Mapping[str, frozenset[str]]
    orphans: frozenset[str] = field(default=frozenset())

    @property
    def empty_edges(self) -> tuple[str, ...]:
        """Reference values whose co-occurrence multiset is empty."""
        return tuple(eid for eid, edge in self.hbgraph.edges() if not edge)


@dataclass(frozen=True)
class ReducedFacet:
    """Weighted facet after grouping mset-equal edges.

    ``classes`` maps each surviving edge id (the smallest reference value of
    its class) to the full class; ``refs_of`` keeps the per-value provenance
    of the underlying raw facet.
    """

    alpha: str
    rho: str
    whbgraph: WeightedHbGraph
    classes: Mapping[str, frozenset[str]]
    refs_of: Mapping[str, frozenset[str]]


def raw_facet(corpus: Corpus, search: SearchResult, alpha: str, rho: str) -> RawFacet:
    """Build the raw visualisation hb-graph for the facet alpha under reference rho."""
    if alpha == rho:
        raise ValueError("facet type must differ from the reference type")
    corpus.require_type(alpha)
    sigma, refs_of = sigma_rho(corpus, search, rho)

    vertices: set[str] = set()
    for ref in search.references:
        vertices.update(corpus.attribute(ref, alpha).support)

    edges: list[tuple[str, Multiset]] = []
    covered: set[str] = set()
    for s in sorted(sigma):
        edge = additive_union(*(corpus.attribute(r, alpha) for r in sorted(refs_of[s])))
        covered.update(edge.support)
        edges.append((s, edge))

    return RawFacet(
        alpha=alpha,
        rho=rho,
        hbgraph=HbGraph(vertices, edges),
        sigma=sigma,
        refs_of=MappingProxyType(dict(refs_of)),
        orphans=frozenset(vertices - covered),
    )


def reduce_facet(raw: RawFacet) -> ReducedFacet:
    """Group mset-equal edges into one weighted edge per equivalence class.

    The representative edge id is the lexicographically smallest reference
    value of the class, making the reduction deterministic; the weight is
    the class size.
    """
    groups: dict[Multiset, list[str]] = {}
    for s, edge in raw.hbgraph.edges():
        groups.setdefault(edge, []).append(s)

    edges: list[tuple[str, Multiset]] = []
    weights: dict[str, int] = {}
    classes: dict[str, frozenset[str]] = {}
    for edge, members in groups.items():
        rep = min(members)
        edges.append((rep, edge))
        weights[rep] = len(members)
        classes[rep] = frozenset(members)
    edges.sort(key=lambda pair: pair[0])

    return ReducedFacet(
        alpha=raw.alpha,
        rho=raw.rho,
        whbgraph=WeightedHbGraph(HbGraph(raw.hbgraph.vertices, edges), weights),
        classes=MappingProxyType(classes),
        refs_of=raw.refs_of,
    )


def navigate(
    corpus: Corpus,
    facet: ReducedFacet,
    selection: Iterable[str],
    target_alpha: str,
) -> ReducedFacet:
    """Switch facet from a vertex selection, carrying reference provenance.

    Edges meeting the selection contribute their classes; the union of
    those classes is the set of reference values feeding the target facet,
    each keeping its original provenance R_s (already confined to the
    originating search). The result is the reduced target facet.
    """
    chosen = frozenset(selection)
    if not chosen:
        raise ValueError("selection must not be empty")
    stray = chosen - facet.whbgraph.base.vertices
    if stray:
        raise ValueError(f"selection outside the facet vertex set: {sorted(stray)}")
    corpus.require_type(target_alpha)
    if target_alpha == facet.rho:
        raise ValueError("target facet type must differ from the reference type")

    values: set[str] = set()
    for eid, edge in facet.whbgraph.base.edges():
        if edge.support & chosen:
            values.update(facet.classes[eid])

    scope: set[str] = set()
    for s in values:
        scope.update(facet.refs_of[s])

    vertices: set[str] = set()
    for ref in scope:
        vertices.update(corpus.attribute(ref, target_alpha).support)

    edges: list[tuple[str, Multiset]] = []
    covered: set[str] = set()
    refs_of = {s: facet.refs_of[s] for s in values}
    for s in sorted(values):
        edge = additive_union(*(corpus.attribute(r, target_alpha) for r in sorted(refs_of[s])))
        covered.update(edge.support)
        edges.append((s, edge))

    raw = RawFacet(
        alpha=target_alpha,
        rho=facet.rho,
        hbgraph=HbGraph(vertices, edges),
        sigma=frozenset(values),
        refs_of=MappingProxyType(refs_of),
        orphans=frozenset(vertices - covered),
    )
    return reduce_facet(raw)


def reference_facet(corpus: Corpus, search: SearchResult, rho: str) -> WeightedHbGraph:
    """The reference type shown as its own facet.

    Each reference value s becomes a single-vertex hb-edge {s: |R_s|},
    its multiplicity counting the searched entities that carry it.
    """
    sigma, refs_of = sigma_rho(corpus, search, rho)
    edges = [(s, Multiset({s: len(refs_of[s])})) for s in sorted(sigma)]
    weights = {s: 1 for s in sigma}
    return WeightedHbGraph(HbGraph(sigma, edges), weights)


def reference_reduced(corpus: Corpus, search: SearchResult, rho: str) -> ReducedFacet:
    """Reference facet wrapped in the ReducedFacet shape (alpha equals rho)."""
    sigma, refs_of = sigma_rho(corpus, search, rho)
    return ReducedFacet(
        alpha=rho,
        rho=rho,
        whbgraph=reference_facet(corpus, search, rho),
        classes=MappingProxyType({s: frozenset({s}) for s in sigma}),
        refs_of=MappingProxyType(dict(refs_of)),
    )


def covered_references(facet: ReducedFacet) -> frozenset[str]:
    """All physical references behind a facet (the S_A of a navigation result)."""
    scope: set[str] = set()
    for refs in facet.refs_of.values():
        scope.update(refs)
    return frozenset(scope)


def facet_to_json(facet: ReducedFacet) -> dict:
    """Stable wire form of a reduced facet; field names are the UI contract."""
    return {
        "alpha": facet.alpha,
        "rho": facet.rho,
        "hbgraph": facet.whbgraph.base.to_json(),
        "weights": {eid: facet.whbgraph.weight(eid) for eid in sorted(facet.whbgraph.base.edge_ids)},
        "classes": {eid: sorted(facet.classes[eid]) for eid in sorted(facet.classes)},
        "refs": {s: sorted(facet.refs_of[s]) for s in sorted(facet.refs_of)},
    }
