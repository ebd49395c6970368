"""Hyperbag-graphs: ordered families of multiset edges over a vertex universe.

An hb-graph generalizes a hypergraph by letting each edge weight its
vertices individually. The family may repeat equal multisets under distinct
edge ids. Hypergraphs are the special case where every stored multiplicity
is 1. All structures here are immutable after construction and all JSON
exports sort by id for determinism.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .mset import Multiset

__all__ = [
    "HbGraph",
    "Hypergraph",
    "WeightedHbGraph",
    "ExtraNodeLayout",
    "LayoutLink",
    "support_hypergraph",
    "connected_components",
    "extra_node_layout",
]


class HbGraph:
    """Vertex universe plus an insertion-ordered family of multiset hb-edges."""

    __slots__ = ("_vertices", "_edges")

    def __init__(
        self,
        vertices: Iterable[str] = (),
        edges: Iterable[tuple[str, Multiset]] = (),
    ):
        self._vertices = frozenset(vertices)
        self._edges: dict[str, Multiset] = {}
        for edge_id, edge in edges:
            if edge_id in self._edges:
                raise ValueError(f"duplicate edge id {edge_id!r}")
            stray = edge.support - self._vertices
            if stray:
                raise ValueError(
                    f"edge {edge_id!r} uses vertices outside the universe: {sorted(stray)}"
                )
            self._edges[edge_id] = edge

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self._edges)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edge(self, edge_id: str) -> Multiset:
        return self._edges[edge_id]

    def edges(self) -> Iterator[tuple[str, Multiset]]:
        """Edges in insertion (family) order."""
        return iter(self._edges.items())

    def is_hypergraph(self) -> bool:
        """True iff every vertex in any edge has multiplicity exactly 1."""
        return all(
            all(m == 1 for _, m in e.items()) for e in self._edges.values()
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HbGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"HbGraph(|V|={len(self._vertices)}, edges={list(self._edges)})"

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self._vertices),
            "edges": [
                {"id": eid, "entries": self._edges[eid].to_json()["entries"]}
                for eid in sorted(self._edges)
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> HbGraph:
        return cls(
            obj["vertices"],
            [(e["id"], Multiset(e["entries"])) for e in obj["edges"]],
        )


class Hypergraph(HbGraph):
    """Hb-graph whose every edge has binary (0/1) multiplicities."""

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, Multiset]] = ()):
        super().__init__(vertices, edges)
        for eid, edge in self.edges():
            for vertex, mult in edge.items():
                if mult != 1:
                    raise ValueError(
                        f"edge {eid!r} has multiplicity {mult} at {vertex!r}; hypergraph edges are binary"
                    )


class WeightedHbGraph:
    """Hb-graph plus one strictly positive weight per edge."""

    __slots__ = ("_base", "_weights")

    def __init__(self, base: HbGraph, weights: Mapping[str, float]):
        if set(weights) != set(base.edge_ids):
            raise ValueError("weights must cover exactly the edge ids of the base hb-graph")
        for eid, w in weights.items():
            if not w > 0:
                raise ValueError(f"weight of edge {eid!r} must be positive, got {w}")
        self._base = base
        self._weights = dict(weights)

    @property
    def base(self) -> HbGraph:
        return self._base

    @property
    def weights(self) -> Mapping[str, float]:
        return dict(self._weights)

    def weight(self, edge_id: str) -> float:
        return self._weights[edge_id]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedHbGraph):
            return NotImplemented
        return self._base == other._base and self._weights == other._weights

    def to_json(self) -> dict:
        payload = self._base.to_json()
        payload["weights"] = {eid: self._weights[eid] for eid in sorted(self._weights)}
        return payload

    @classmethod
    def from_json(cls, obj: Mapping) -> WeightedHbGraph:
        return cls(HbGraph.from_json(obj), obj["weights"])


def support_hypergraph(h: HbGraph) -> tuple[Hypergraph, dict[str, str]]:
    """Collapse each hb-edge to its support set.

    Edges with equal supports collapse to a single hypergraph edge (set
    semantics); the returned map sends every original edge id to the id of
    its support edge. The representative id is the lexicographically
    smallest collapsed id, so the result is independent of family order.
    """
    groups: dict[frozenset[str], list[str]] = {}
    for eid, edge in h.edges():
        groups.setdefault(edge.support, []).append(eid)

    mapping: dict[str, str] = {}
    support_edges: list[tuple[str, Multiset]] = []
    for supp, eids in groups.items():
        rep = min(eids)
        support_edges.append((rep, Multiset({v: 1 for v in supp})))
        for eid in eids:
            mapping[eid] = rep
    return Hypergraph(h.vertices, support_edges), mapping


class _UnionFind:
    """Disjoint sets with path halving and union by size."""

    def __init__(self, items: Iterable[str]):
        self._parent = {x: x for x in items}
        self._size = {x: 1 for x in self._parent}

    def find(self, x: str) -> str:
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: str, y: str) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self._size[rx] < self._size[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        self._size[rx] += self._size[ry]

    def blocks(self) -> list[frozenset[str]]:
        by_root: dict[str, set[str]] = {}
        for x in self._parent:
            by_root.setdefault(self.find(x), set()).add(x)
        return [frozenset(b) for b in by_root.values()]


def connected_components(h: HbGraph) -> list[frozenset[str]]:
    """Partition of the vertex set by hb-edge connectivity.

    Two vertices are connected when a chain of hb-edges with overlapping
    supports joins them; isolated vertices form singleton blocks. Blocks
    are returned sorted by their smallest vertex.
    """
    uf = _UnionFind(h.vertices)
    for _, edge in h.edges():
        support = sorted(edge.support)
        for other in support[1:]:
            uf.union(support[0], other)
    return sorted(uf.blocks(), key=min)


@dataclass(frozen=True)
class LayoutLink:
    vertex: str
    edge: str
    multiplicity: float
    thickness: float


@dataclass(frozen=True)
class ExtraNodeLayout:
    """Bipartite drawing data: one extra node per hb-edge, links to support vertices."""

    vertex_nodes: frozenset[str]
    extra_nodes: tuple[str, ...]
    links: tuple[LayoutLink, ...]

    def to_json(self) -> dict:
        nodes = [{"id": v, "kind": "vertex"} for v in sorted(self.vertex_nodes)]
        nodes += [{"id": e, "kind": "extra"} for e in self.extra_nodes]
        return {
            "nodes": nodes,
            "links": [
                {
                    "vertex": l.vertex,
                    "edge": l.edge,
                    "multiplicity": l.multiplicity,
                    "thickness": l.thickness,
                }
                for l in self.links
            ],
        }


def extra_node_layout(h: HbGraph, t_min: float, t_max: float) -> ExtraNodeLayout:
    """Extra-node rendering with link thickness normalised over the whole hb-graph.

    Thickness is the affine map of multiplicity from [m_min, m_max] (taken
    over all links of ``h``) onto [t_min, t_max]; when all multiplicities
    are equal every link gets the midpoint (t_min + t_max) / 2.
    """
    if t_min <= 0:
        raise ValueError(f"t_min must be positive, got {t_min}")
    if t_min > t_max:
        raise ValueError(f"t_min {t_min} exceeds t_max {t_max}")

    pairs: list[tuple[str, str, float]] = []
    for eid in sorted(h.edge_ids):
        edge = h.edge(eid)
        for vertex in sorted(edge.support):
            pairs.append((eid, vertex, edge.multiplicity(vertex)))

    links: list[LayoutLink] = []
    if pairs:
        mults = [m for _, _, m in pairs]
        m_min, m_max = min(mults), max(mults)
        span = m_max - m_min
        for eid, vertex, mult in pairs:
            if span == 0:
                thickness = (t_min + t_max) / 2
            else:
                thickness = t_min + (mult - m_min) * (t_max - t_min) / span
            links.append(LayoutLink(vertex, eid, mult, thickness))

    return ExtraNodeLayout(
        vertex_nodes=h.vertices,
        extra_nodes=tuple(sorted(h.edge_ids)),
        links=tuple(links),
    )
