"""HTTP service binding search, facets, navigation and history into
persistent sessions.

Responses are rendered with an explicit, compact JSON encoder and all
exports sort their keys, so identical requests yield byte-identical bodies
across process restarts.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .arxiv import ArxivClient, FetchError
from .query import QueryParseError, UnsupportedQueryError
from .sessions import (
    DEFAULT_N,
    DEFAULT_W,
    InvalidSelectionError,
    LiveSource,
    OfflineSource,
    SessionStore,
    UnknownFacetError,
    facet_payload,
    history_payload,
    layout_payload,
    merge_histories,
    navigate_payload,
    run_search,
    session_summary,
)

__all__ = ["create_app", "resolve_data_dir", "DATA_DIR_ENV"]

DATA_DIR_ENV = "DATAEDRON_DATA_DIR"


def resolve_data_dir(data_dir: str | Path | None = None) -> Path:
    if data_dir is not None:
        return Path(data_dir)
    return Path(os.environ.get(DATA_DIR_ENV, "dataedron-data"))


def _json_response(payload) -> Response:
    body = json.dumps(payload, ensure_ascii=False, separators=(",", ":"))
    return Response(content=body.encode("utf-8"), media_type="application/json")


class SearchRequest(BaseModel):
    query: str
    n: int = Field(default=DEFAULT_N, ge=1, le=200)
    w: int = Field(default=DEFAULT_W, ge=1, le=50)
    rho: Optional[str] = None
    sid: Optional[str] = None


class NavigateRequest(BaseModel):
    sid: str
    alpha: str
    selection: list[str]
    target_alpha: str


class MergeRequest(BaseModel):
    sid: str
    other_sid: str


def create_app(
    data_dir: str | Path | None = None,
    offline_dir: str | Path | None = None,
    client: ArxivClient | None = None,
) -> FastAPI:
    store = SessionStore(resolve_data_dir(data_dir))
    source = OfflineSource(offline_dir) if offline_dir else LiveSource(client=client)

    app = FastAPI(title="dataedron", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def load_session(sid: str):
        try:
            return store.load(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")

    @app.post("/search")
    def search(request: SearchRequest) -> Response:
        if request.sid is not None and not store.exists(request.sid):
            raise HTTPException(status_code=404, detail=f"unknown session {request.sid!r}")
        try:
            session = run_search(
                store,
                source,
                query=request.query,
                n=request.n,
                w=request.w,
                rho=request.rho,
                session_id=request.sid,
            )
        except QueryParseError as exc:
            raise HTTPException(
                status_code=400,
                detail={"message": exc.message, "position": exc.position},
            )
        except UnsupportedQueryError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        except FetchError as exc:
            raise HTTPException(status_code=502, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _json_response(session_summary(session))

    @app.get("/session/{sid}")
    def session_info(sid: str) -> Response:
        return _json_response(session_summary(load_session(sid)))

    @app.get("/facet/{sid}/{alpha}")
    def facet(sid: str, alpha: str) -> Response:
        session = load_session(sid)
        try:
            return _json_response(facet_payload(session, alpha))
        except UnknownFacetError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/facet/{sid}/{alpha}/layout")
    def facet_layout(sid: str, alpha: str, t_min: float = 1.0, t_max: float = 8.0) -> Response:
        session = load_session(sid)
        try:
            return _json_response(layout_payload(session, alpha, t_min, t_max))
        except UnknownFacetError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/navigate")
    def navigate_endpoint(request: NavigateRequest) -> Response:
        session = load_session(request.sid)
        try:
            payload = navigate_payload(
                session, request.alpha, request.selection, request.target_alpha
            )
        except (UnknownFacetError, InvalidSelectionError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _json_response(payload)

    @app.get("/history/{sid}")
    def history(sid: str) -> Response:
        return _json_response(history_payload(load_session(sid)))

    @app.post("/history/merge")
    def history_merge(request: MergeRequest) -> Response:
        if not store.exists(request.sid):
            raise HTTPException(status_code=404, detail=f"unknown session {request.sid!r}")
        if not store.exists(request.other_sid):
            raise HTTPException(status_code=404, detail=f"unknown session {request.other_sid!r}")
        try:
            session = merge_histories(store, request.sid, request.other_sid)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _json_response(history_payload(session))

    return app
