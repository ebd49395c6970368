#!/usr/bin/env python3
"""Record service responses for the frontend contract tests.

Runs the service offline over tests/fixtures and snapshots the responses
the UI consumes into frontend/fixtures/. Re-run after changing the facet
engine or the service wire format:

    python scripts/record_ui_fixtures.py
"""

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from dataedron.service import create_app

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "fixtures"


def record(name: str, payload) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    target = OUT / f"{name}.json"
    target.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {target.relative_to(ROOT)}")


def main() -> int:
    with tempfile.TemporaryDirectory() as data_dir:
        client = TestClient(
            create_app(data_dir=data_dir, offline_dir=ROOT / "tests" / "fixtures")
        )

        # desk corpus session (reference type: category)
        d0 = client.post("/search", json={"query": "d0", "rho": "cat"}).json()
        sid = d0["session_id"]
        record("d0_session", client.get(f"/session/{sid}").json())
        for alpha in ("auth", "kw", "cat"):
            record(f"d0_facet_{alpha}", client.get(f"/facet/{sid}/{alpha}").json())
            record(
                f"d0_layout_{alpha}",
                client.get(f"/facet/{sid}/{alpha}/layout").json(),
            )
        record(
            "d0_navigate_dave_kw",
            client.post(
                "/navigate",
                json={"sid": sid, "alpha": "auth", "selection": ["Dave"], "target_alpha": "kw"},
            ).json(),
        )
        record(
            "d0_navigate_dave_auth",
            client.post(
                "/navigate",
                json={"sid": sid, "alpha": "auth", "selection": ["Dave"], "target_alpha": "auth"},
            ).json(),
        )
        all_authors = client.get(f"/facet/{sid}/auth").json()["hbgraph"]["vertices"]
        record(
            "d0_navigate_all_kw",
            client.post(
                "/navigate",
                json={
                    "sid": sid,
                    "alpha": "auth",
                    "selection": all_authors,
                    "target_alpha": "kw",
                },
            ).json(),
        )
        record("d0_history", client.get(f"/history/{sid}").json())

        # arxiv-shaped session from the recorded Atom feed
        graph = client.post("/search", json={"query": "graph"}).json()
        gid = graph["session_id"]
        record("graph_session", client.get(f"/session/{gid}").json())
        for alpha in ("authors", "keywords", "categories", "pubid"):
            record(f"graph_facet_{alpha}", client.get(f"/facet/{gid}/{alpha}").json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
