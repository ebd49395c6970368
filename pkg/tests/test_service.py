import json

import pytest
from fastapi.testclient import TestClient

from dataedron.service import create_app
from dataedron.sessions import OfflineSource, SessionStore, run_search


@pytest.fixture
def app_factory(fixtures_dir, tmp_path):
    def make():
        return create_app(data_dir=tmp_path / "data", offline_dir=fixtures_dir)

    return make


@pytest.fixture
def client(app_factory):
    return TestClient(app_factory())


def open_d0_session(client) -> str:
    response = client.post("/search", json={"query": "d0", "rho": "cat"})
    assert response.status_code == 200
    return response.json()["session_id"]


class TestSearch:
    def test_valid_query_opens_session(self, client):
        response = client.post("/search", json={"query": "graph"})
        assert response.status_code == 200
        body = response.json()
        assert body["session_id"]
        assert body["query"] == "graph"
        assert body["rho"] == "pubid"
        assert len(body["entries"]) == 3
        assert body["alphas"] == ["authors", "categories", "keywords"]

    def test_parse_error_is_400_with_position(self, client):
        response = client.post("/search", json={"query": "a AND"})
        assert response.status_code == 400
        assert response.json()["detail"]["position"] == 5

    def test_offline_replay_is_deterministic(self, client):
        first = client.post("/search", json={"query": "graph"}).json()["entries"]
        second = client.post("/search", json={"query": "graph"}).json()["entries"]
        assert first == second

    def test_params_bounds(self, client):
        assert client.post("/search", json={"query": "graph", "n": 0}).status_code == 422
        assert client.post("/search", json={"query": "graph", "n": 201}).status_code == 422
        assert client.post("/search", json={"query": "graph", "w": 0}).status_code == 422
        assert client.post("/search", json={"query": "graph", "w": 51}).status_code == 422

    def test_unknown_rho_rejected(self, client):
        response = client.post("/search", json={"query": "graph", "rho": "nope"})
        assert response.status_code == 422

    def test_missing_fixture_is_502(self, client):
        response = client.post("/search", json={"query": "unrecorded"})
        assert response.status_code == 502

    def test_search_into_existing_session_appends_history(self, client):
        sid = open_d0_session(client)
        response = client.post("/search", json={"query": "graph", "sid": sid})
        assert response.status_code == 200
        assert response.json()["session_id"] == sid
        history = client.get(f"/history/{sid}").json()["queries"]
        assert [h["query"] for h in history] == ["d0", "graph"]

    def test_search_into_unknown_session_is_404(self, client):
        response = client.post("/search", json={"query": "graph", "sid": "nope"})
        assert response.status_code == 404

    def test_contextual_sentence_in_entries(self, client):
        body = client.post("/search", json={"query": "graph"}).json()
        by_id = {e["id"]: e for e in body["entries"]}
        assert by_id["2101.00003v1"]["sentence"] == "Search quality depends on ranking."
        assert by_id["2101.00001v1"]["sentence"].startswith("We study graph algorithms")


class TestFacet:
    def test_d0_auth_facet(self, client):
        sid = open_d0_session(client)
        response = client.get(f"/facet/{sid}/auth")
        assert response.status_code == 200
        facet = response.json()
        assert facet["alpha"] == "auth"
        assert facet["rho"] == "cat"
        assert facet["weights"] == {"cs.DS": 1, "cs.IR": 1}
        assert facet["refs"] == {"cs.DS": ["r1", "r2"], "cs.IR": ["r2", "r3"]}

    def test_reference_facet_when_alpha_is_rho(self, client):
        sid = open_d0_session(client)
        facet = client.get(f"/facet/{sid}/cat").json()
        assert facet["alpha"] == "cat"
        edges = {e["id"]: e["entries"] for e in facet["hbgraph"]["edges"]}
        assert edges == {"cs.DS": {"cs.DS": 2}, "cs.IR": {"cs.IR": 2}}

    def test_unknown_session_404(self, client):
        assert client.get("/facet/nope/auth").status_code == 404

    def test_alpha_not_navigable_422(self, client):
        sid = open_d0_session(client)
        assert client.get(f"/facet/{sid}/bogus").status_code == 422

    def test_repeated_gets_identical(self, client):
        sid = open_d0_session(client)
        first = client.get(f"/facet/{sid}/auth").content
        second = client.get(f"/facet/{sid}/auth").content
        assert first == second

    def test_layout_endpoint(self, client):
        sid = open_d0_session(client)
        response = client.get(f"/facet/{sid}/auth/layout")
        assert response.status_code == 200
        payload = response.json()
        kinds = {n["kind"] for n in payload["nodes"]}
        assert kinds == {"vertex", "extra"}
        assert all(1.0 <= l["thickness"] <= 8.0 for l in payload["links"])

    def test_layout_range_validation(self, client):
        sid = open_d0_session(client)
        response = client.get(f"/facet/{sid}/auth/layout", params={"t_min": 0})
        assert response.status_code == 422


class TestNavigate:
    def test_dave_selection(self, client):
        sid = open_d0_session(client)
        response = client.post(
            "/navigate",
            json={"sid": sid, "alpha": "auth", "selection": ["Dave"], "target_alpha": "kw"},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["S_A"] == ["r2", "r3"]
        edges = {e["id"]: e["entries"] for e in body["facet"]["hbgraph"]["edges"]}
        assert edges == {"cs.IR": {"graph": 1, "index": 1, "search": 2}}

    def test_full_selection_equals_direct_facet(self, client):
        sid = open_d0_session(client)
        facet = client.get(f"/facet/{sid}/auth").json()
        vertices = facet["hbgraph"]["vertices"]
        nav = client.post(
            "/navigate",
            json={"sid": sid, "alpha": "auth", "selection": vertices, "target_alpha": "kw"},
        ).json()
        direct = client.get(f"/facet/{sid}/kw").json()
        assert nav["facet"] == direct

    def test_empty_selection_422(self, client):
        sid = open_d0_session(client)
        response = client.post(
            "/navigate",
            json={"sid": sid, "alpha": "auth", "selection": [], "target_alpha": "kw"},
        )
        assert response.status_code == 422

    def test_unknown_vertex_422(self, client):
        sid = open_d0_session(client)
        response = client.post(
            "/navigate",
            json={"sid": sid, "alpha": "auth", "selection": ["Nobody"], "target_alpha": "kw"},
        )
        assert response.status_code == 422


class TestHistory:
    def test_history_lists_queries(self, client):
        sid = open_d0_session(client)
        queries = client.get(f"/history/{sid}").json()["queries"]
        assert len(queries) == 1
        assert queries[0]["query"] == "d0"
        assert queries[0]["entries"] == {"d0": 1}

    def test_merge_combines_and_persists(self, client):
        sid1 = open_d0_session(client)
        sid2 = client.post("/search", json={"query": "graph"}).json()["session_id"]
        merged = client.post("/history/merge", json={"sid": sid1, "other_sid": sid2}).json()
        assert len(merged["queries"]) == 2
        again = client.get(f"/history/{sid1}").json()
        assert again == merged

    def test_merge_unknown_session_404(self, client):
        sid = open_d0_session(client)
        assert (
            client.post("/history/merge", json={"sid": sid, "other_sid": "zz"}).status_code
            == 404
        )


class TestPersistence:
    def test_restart_yields_byte_identical_facets(self, app_factory):
        client1 = TestClient(app_factory())
        sid = open_d0_session(client1)
        before = {
            alpha: client1.get(f"/facet/{sid}/{alpha}").content
            for alpha in ("auth", "kw", "cat")
        }
        # new app instance over the same data directory
        client2 = TestClient(app_factory())
        after = {
            alpha: client2.get(f"/facet/{sid}/{alpha}").content
            for alpha in ("auth", "kw", "cat")
        }
        assert before == after

    def test_sessions_are_isolated(self, client):
        sid1 = open_d0_session(client)
        sid2 = client.post("/search", json={"query": "graph"}).json()["session_id"]
        facet1 = client.get(f"/facet/{sid1}/auth").json()
        facet2 = client.get(f"/facet/{sid2}/authors").json()
        assert facet1["rho"] == "cat"
        assert facet2["rho"] == "pubid"
        assert client.get(f"/facet/{sid1}/auth").json() == facet1

    def test_session_info_round_trip(self, client):
        sid = open_d0_session(client)
        info = client.get(f"/session/{sid}").json()
        assert info["session_id"] == sid
        assert info["rho"] == "cat"
        assert sorted(info["alphas"]) == ["auth", "kw"]


class TestSessionStoreUnit:
    def test_run_search_with_store(self, fixtures_dir, tmp_path):
        store = SessionStore(tmp_path / "data")
        source = OfflineSource(fixtures_dir)
        session = run_search(store, source, query="d0", rho="cat")
        assert store.exists(session.id)
        reloaded = store.load(session.id)
        assert reloaded.to_json() == session.to_json()

    def test_session_file_is_json(self, fixtures_dir, tmp_path):
        store = SessionStore(tmp_path / "data")
        session = run_search(store, OfflineSource(fixtures_dir), query="d0", rho="cat")
        payload = json.loads(store.path_for(session.id).read_text())
        assert payload["rho"] == "cat"
        assert payload["search"] == ["r1", "r2", "r3"]
