import pytest
from hypothesis import given
from hypothesis import strategies as st

from dataedron.hbgraph import (
    HbGraph,
    Hypergraph,
    WeightedHbGraph,
    connected_components,
    extra_node_layout,
    support_hypergraph,
)
from dataedron.mset import Multiset


def hb(edges, vertices=None):
    if vertices is None:
        vertices = set()
        for _, e in edges:
            vertices |= e.support
    return HbGraph(vertices, edges)


class TestStructure:
    def test_edge_outside_universe_rejected(self):
        with pytest.raises(ValueError):
            HbGraph({"a"}, [("e1", Multiset({"b": 1}))])

    def test_duplicate_edge_ids_rejected(self):
        with pytest.raises(ValueError):
            hb([("e1", Multiset({"a": 1})), ("e1", Multiset({"a": 2}))])

    def test_family_allows_equal_multisets(self):
        g = hb([("e1", Multiset({"a": 1})), ("e2", Multiset({"a": 1}))])
        assert g.edge_count == 2

    def test_insertion_order_kept(self):
        g = hb([("z", Multiset({"a": 1})), ("a", Multiset({"a": 2}))])
        assert [eid for eid, _ in g.edges()] == ["z", "a"]

    def test_json_sorted_by_id(self):
        g = hb([("z", Multiset({"a": 1})), ("b", Multiset({"a": 2}))])
        payload = g.to_json()
        assert [e["id"] for e in payload["edges"]] == ["b", "z"]
        assert HbGraph.from_json(payload) == g

    def test_hypergraph_rejects_multiplicity_above_one(self):
        with pytest.raises(ValueError):
            Hypergraph({"a"}, [("e", Multiset({"a": 2}))])

    def test_weights_must_cover_edges(self):
        g = hb([("e1", Multiset({"a": 1}))])
        with pytest.raises(ValueError):
            WeightedHbGraph(g, {})
        with pytest.raises(ValueError):
            WeightedHbGraph(g, {"e1": 0})
        w = WeightedHbGraph(g, {"e1": 2})
        assert w.weight("e1") == 2
        assert w.to_json()["weights"] == {"e1": 2}


class TestSupportHypergraph:
    def test_supports(self):
        g = hb([("e1", Multiset({"a": 2, "b": 1})), ("e2", Multiset({"c": 1}))])
        sup, mapping = support_hypergraph(g)
        assert {e.support for _, e in sup.edges()} == {
            frozenset({"a", "b"}),
            frozenset({"c"}),
        }
        assert mapping == {"e1": "e1", "e2": "e2"}

    def test_equal_supports_collapse(self):
        g = hb([("e1", Multiset({"a": 2, "b": 1})), ("e2", Multiset({"a": 1, "b": 5}))])
        sup, mapping = support_hypergraph(g)
        assert sup.edge_count == 1
        assert mapping == {"e1": "e1", "e2": "e1"}

    def test_idempotent_on_hypergraphs(self):
        g = Hypergraph(
            {"a", "b", "c"},
            [("e1", Multiset({"a": 1, "b": 1})), ("e2", Multiset({"c": 1}))],
        )
        sup, _ = support_hypergraph(g)
        assert sup == g

    def test_deterministic(self):
        g = hb([("e2", Multiset({"a": 2})), ("e1", Multiset({"a": 1, "b": 1}))])
        first, map1 = support_hypergraph(g)
        second, map2 = support_hypergraph(g)
        assert first == second
        assert map1 == map2
        assert first.to_json() == second.to_json()

    def test_non_injectivity_witness(self):
        # two hb-graphs differing only in one multiplicity share a support hypergraph
        g1 = hb([("e", Multiset({"a": 2, "b": 1}))])
        g2 = hb([("e", Multiset({"a": 1, "b": 1}))])
        assert g1 != g2
        assert support_hypergraph(g1)[0] == support_hypergraph(g2)[0]


class TestConnectedComponents:
    def test_chain_and_isolated(self):
        g = HbGraph(
            {"a", "b", "c", "d"},
            [
                ("e1", Multiset({"a": 1, "b": 1})),
                ("e2", Multiset({"b": 1, "c": 1})),
            ],
        )
        assert connected_components(g) == [frozenset({"a", "b", "c"}), frozenset({"d"})]

    def test_no_edges_singleton(self):
        assert connected_components(HbGraph({"x"})) == [frozenset({"x"})]

    def test_single_edge_covers_all(self):
        g = HbGraph({"a", "b", "c"}, [("e", Multiset({"a": 1, "b": 1, "c": 1}))])
        assert connected_components(g) == [frozenset({"a", "b", "c"})]


class TestExtraNodeLayout:
    def test_endpoints_of_normalisation(self):
        g = hb([("e", Multiset({"a": 1, "b": 3}))])
        layout = extra_node_layout(g, 1, 8)
        by_vertex = {l.vertex: l.thickness for l in layout.links}
        assert by_vertex == {"a": 1, "b": 8}

    def test_degenerate_range_uses_midpoint(self):
        g = hb([("e", Multiset({"a": 2, "b": 2}))])
        layout = extra_node_layout(g, 1, 8)
        assert {l.thickness for l in layout.links} == {4.5}

    def test_affine_map_on_three_values(self):
        g = hb([("e1", Multiset({"a": 1})), ("e2", Multiset({"a": 2, "b": 3}))])
        layout = extra_node_layout(g, 1, 8)
        thick = {(l.edge, l.vertex): l.thickness for l in layout.links}
        assert thick[("e1", "a")] == 1
        assert thick[("e2", "a")] == 4.5
        assert thick[("e2", "b")] == 8

    def test_invalid_range_rejected(self):
        g = hb([("e", Multiset({"a": 1}))])
        with pytest.raises(ValueError):
            extra_node_layout(g, 0, 8)
        with pytest.raises(ValueError):
            extra_node_layout(g, 9, 8)

    def test_link_count_and_json_kinds(self):
        g = hb([("e1", Multiset({"a": 1, "b": 2})), ("e2", Multiset({"a": 4}))])
        layout = extra_node_layout(g, 1, 8)
        assert len(layout.links) == 3
        payload = layout.to_json()
        kinds = {n["id"]: n["kind"] for n in payload["nodes"]}
        assert kinds == {"a": "vertex", "b": "vertex", "e1": "extra", "e2": "extra"}


edge_ids = st.text(alphabet="xyz", min_size=1, max_size=3)
vertex_sets = st.sets(st.sampled_from("abcdef"), min_size=1, max_size=6)


@st.composite
def hbgraphs(draw):
    vertices = draw(vertex_sets)
    n_edges = draw(st.integers(0, 4))
    edges = []
    for i in range(n_edges):
        support = draw(
            st.sets(st.sampled_from(sorted(vertices)), min_size=0, max_size=len(vertices))
        )
        edge = {v: draw(st.integers(1, 5)) for v in support}
        edges.append((f"e{i}", Multiset(edge)))
    return HbGraph(vertices, edges)


@given(hbgraphs())
def test_support_hypergraph_unique(g):
    a, _ = support_hypergraph(g)
    b, _ = support_hypergraph(g)
    assert a == b


@given(hbgraphs())
def test_components_partition_vertices(g):
    blocks = connected_components(g)
    union = set()
    for block in blocks:
        assert not (union & block)
        union |= block
    assert union == g.vertices


@given(hbgraphs())
def test_layout_link_count_is_total_support_size(g):
    layout = extra_node_layout(g, 1, 8)
    assert len(layout.links) == sum(len(e.support) for _, e in g.edges())


@given(hbgraphs())
def test_layout_thickness_monotone_in_multiplicity(g):
    layout = extra_node_layout(g, 1, 8)
    ordered = sorted(layout.links, key=lambda l: l.multiplicity)
    for first, second in zip(ordered, ordered[1:]):
        assert first.thickness <= second.thickness
