"""Persistent search sessions shared by the HTTP service and the CLI.

A session is fully reconstructable from its JSON file: the corpus, the
search, the chosen reference type and the query history. Facets are
recomputed on demand from that state, so a reloaded session answers facet
requests byte-identically.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Mapping

from .arxiv import ArxivClient, OfflineDirectory, contextual_sentence, parse_feed, to_entities
from .facets import (
    Corpus,
    ReducedFacet,
    SearchResult,
    covered_references,
    facet_to_json,
    navigate,
    raw_facet,
    reduce_facet,
    reference_reduced,
)
from .hbgraph import extra_node_layout
from .keywords import NounTagger
from .query import QueryAst, QueryHistory, count_terms, parse, to_canonical, to_external_query
from .schema import (
    ARXIV_REFERENCE_CANDIDATES,
    ARXIV_TYPES,
    NavigationContext,
    SchemaHypergraph,
    context_for,
    navigation_hyperedge,
)

__all__ = [
    "Session",
    "SessionStore",
    "SearchOutcome",
    "LiveSource",
    "OfflineSource",
    "UnknownFacetError",
    "InvalidSelectionError",
    "run_search",
    "facet_object",
    "facet_payload",
    "layout_payload",
    "navigate_payload",
    "history_payload",
    "merge_histories",
    "session_summary",
    "DEFAULT_N",
    "DEFAULT_W",
    "DEFAULT_RHO",
]

DEFAULT_N = 50
DEFAULT_W = 10
DEFAULT_RHO = "pubid"


class UnknownFacetError(ValueError):
    """Requested facet type is not navigable in this session."""


class InvalidSelectionError(ValueError):
    """Navigation selection empty or outside the facet vertex set."""


def _utcnow() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass(frozen=True)
class Session:
    id: str
    query: str
    rho: str
    params: Mapping[str, int]
    types: tuple[str, ...]
    reference_candidates: frozenset[str]
    corpus: Corpus
    search: SearchResult
    history: QueryHistory
    entries: tuple[dict, ...]
    created: str
    updated: str

    def context(self) -> NavigationContext:
        schema = SchemaHypergraph(frozenset(self.types), (frozenset(self.types),))
        return context_for(schema, self.reference_candidates, self.rho)

    def alphas(self) -> tuple[str, ...]:
        """Navigable facet types, reference type excluded."""
        return tuple(sorted(navigation_hyperedge(self.context())))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "query": self.query,
            "rho": self.rho,
            "params": dict(self.params),
            "types": list(self.types),
            "reference_candidates": sorted(self.reference_candidates),
            "entities": self.corpus.to_json(),
            "search": list(self.search.references),
            "entries": list(self.entries),
            "history": self.history.to_json(),
            "created": self.created,
            "updated": self.updated,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Session":
        return cls(
            id=obj["id"],
            query=obj["query"],
            rho=obj["rho"],
            params=dict(obj["params"]),
            types=tuple(obj["types"]),
            reference_candidates=frozenset(obj["reference_candidates"]),
            corpus=Corpus.from_json(obj["entities"], types=obj["types"]),
            search=SearchResult(tuple(obj["search"]), obj["query"]),
            history=QueryHistory.from_json(obj["history"]),
            entries=tuple(obj["entries"]),
            created=obj["created"],
            updated=obj["updated"],
        )


class SessionStore:
    """One JSON file per session under a data directory."""

    def __init__(self, data_dir: str | Path):
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._registry = threading.Lock()

    @property
    def directory(self) -> Path:
        return self._dir

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry:
            return self._locks.setdefault(session_id, threading.Lock())

    def path_for(self, session_id: str) -> Path:
        return self._dir / f"{session_id}.json"

    def exists(self, session_id: str) -> bool:
        return self.path_for(session_id).is_file()

    def save(self, session: Session) -> None:
        payload = json.dumps(session.to_json(), ensure_ascii=False, indent=2)
        self.path_for(session.id).write_text(payload, encoding="utf-8")

    def load(self, session_id: str) -> Session:
        path = self.path_for(session_id)
        if not path.is_file():
            raise KeyError(f"unknown session {session_id!r}")
        return Session.from_json(json.loads(path.read_text(encoding="utf-8")))

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self._dir.glob("*.json"))


@dataclass(frozen=True)
class SearchOutcome:
    corpus: Corpus
    types: tuple[str, ...]
    reference_candidates: frozenset[str]
    references: tuple[str, ...]
    entries: tuple[dict, ...]


class LiveSource:
    """Runs searches against the live export API."""

    def __init__(self, client: ArxivClient | None = None, tagger: NounTagger | None = None):
        self._client = client or ArxivClient()
        self._tagger = tagger

    def run(self, ast: QueryAst, n: int, w: int) -> SearchOutcome:
        entries = self._client.fetch(to_external_query(ast), n)
        return _outcome_from_entries(entries, ast, w, self._tagger)


class OfflineSource:
    """Replays recorded fixtures: Atom feeds or prebuilt entity corpora."""

    def __init__(self, directory: str | Path, tagger: NounTagger | None = None):
        self._dir = OfflineDirectory(directory)
        self._tagger = tagger

    def run(self, ast: QueryAst, n: int, w: int) -> SearchOutcome:
        kind, payload = self._dir.lookup(to_canonical(ast))
        if kind == "atom":
            return _outcome_from_entries(parse_feed(payload)[:n], ast, w, self._tagger)
        return _outcome_from_corpus_fixture(json.loads(payload.decode("utf-8")), ast)


def _outcome_from_entries(entries, ast: QueryAst, w: int, tagger) -> SearchOutcome:
    entities = to_entities(entries, w, tagger)
    corpus = Corpus(entities, types=ARXIV_TYPES)
    terms = sorted(count_terms(ast).support)
    summaries = tuple(
        {
            "id": e.id,
            "title": e.title,
            "sentence": contextual_sentence(e.abstract, terms),
            "abs_url": e.abs_url,
            "pdf_url": e.pdf_url,
            "published": e.published,
        }
        for e in entries
    )
    return SearchOutcome(
        corpus=corpus,
        types=ARXIV_TYPES,
        reference_candidates=ARXIV_REFERENCE_CANDIDATES,
        references=tuple(e.id for e in entries),
        entries=summaries,
    )


def _outcome_from_corpus_fixture(obj: Mapping, ast: QueryAst) -> SearchOutcome:
    types = tuple(obj["types"])
    corpus = Corpus.from_json(obj["entities"], types=types)
    terms = sorted(count_terms(ast).support)
    summaries = []
    for row in obj["entities"]:
        meta = row.get("meta", {})
        abstract = meta.get("abstract", "")
        summaries.append(
            {
                "id": row["reference"],
                "title": meta.get("title", row["reference"]),
                "sentence": contextual_sentence(abstract, terms) if abstract else meta.get("sentence", ""),
                "abs_url": meta.get("abs_url"),
                "pdf_url": meta.get("pdf_url"),
                "published": meta.get("published", ""),
            }
        )
    return SearchOutcome(
        corpus=corpus,
        types=types,
        reference_candidates=frozenset(obj["reference_candidates"]),
        references=tuple(corpus.references),
        entries=tuple(summaries),
    )


def run_search(
    store: SessionStore,
    source,
    query: str,
    n: int = DEFAULT_N,
    w: int = DEFAULT_W,
    rho: str | None = None,
    session_id: str | None = None,
    now: Callable[[], str] = _utcnow,
    new_id: Callable[[], str] = lambda: uuid.uuid4().hex[:12],
) -> Session:
    """Parse, fetch, materialize and persist one search.

    With ``session_id`` the search evolves an existing session (corpus and
    search replaced, query appended to its history); otherwise a fresh
    session is created.
    """
    ast = parse(query)
    canonical = to_canonical(ast)
    outcome = source.run(ast, n, w)

    chosen_rho = rho if rho is not None else DEFAULT_RHO
    if chosen_rho not in outcome.reference_candidates:
        raise ValueError(
            f"reference type {chosen_rho!r} is not a candidate; "
            f"choose one of {sorted(outcome.reference_candidates)}"
        )

    timestamp = now()
    if session_id is not None:
        with store.lock(session_id):
            previous = store.load(session_id)
            history = previous.history.append(
                ast, timestamp, f"{timestamp}#{len(previous.history)}"
            )
            session = replace(
                previous,
                query=canonical,
                rho=chosen_rho,
                params={"n": n, "w": w},
                types=outcome.types,
                reference_candidates=outcome.reference_candidates,
                corpus=outcome.corpus,
                search=SearchResult(outcome.references, canonical),
                history=history,
                entries=outcome.entries,
                updated=timestamp,
            )
            store.save(session)
        return session
    else:
        session = Session(
            id=new_id(),
            query=canonical,
            rho=chosen_rho,
            params={"n": n, "w": w},
            types=outcome.types,
            reference_candidates=outcome.reference_candidates,
            corpus=outcome.corpus,
            search=SearchResult(outcome.references, canonical),
            history=QueryHistory().append(ast, timestamp, f"{timestamp}#0"),
            entries=outcome.entries,
            created=timestamp,
            updated=timestamp,
        )
    store.save(session)
    return session


def facet_object(session: Session, alpha: str) -> ReducedFacet:
    """The reduced facet for a type; the reference facet when alpha is rho."""
    if alpha == session.rho:
        return reference_reduced(session.corpus, session.search, session.rho)
    if alpha not in navigation_hyperedge(session.context()):
        raise UnknownFacetError(
            f"{alpha!r} is not navigable here; options: {sorted(session.alphas())}"
        )
    return reduce_facet(raw_facet(session.corpus, session.search, alpha, session.rho))


def facet_payload(session: Session, alpha: str) -> dict:
    return facet_to_json(facet_object(session, alpha))


def layout_payload(session: Session, alpha: str, t_min: float = 1.0, t_max: float = 8.0) -> dict:
    """Extra-node node-link rendering data for one facet."""
    facet = facet_object(session, alpha)
    return extra_node_layout(facet.whbgraph.base, t_min, t_max).to_json()


def navigate_payload(
    session: Session, alpha: str, selection: list[str], target_alpha: str
) -> dict:
    """Navigate from a selection; returns the target facet and its S_A."""
    facet = facet_object(session, alpha)
    try:
        result = navigate(session.corpus, facet, selection, target_alpha)
    except ValueError as exc:
        raise InvalidSelectionError(str(exc)) from exc
    return {
        "facet": facet_to_json(result),
        "S_A": sorted(covered_references(result)),
    }


def history_payload(session: Session) -> dict:
    return {"queries": session.history.to_json()}


def merge_histories(store: SessionStore, session_id: str, other_id: str) -> Session:
    """Merge another session's history into this one; persists the result.

    Locks are taken in id order so concurrent cross-merges cannot deadlock.
    """
    if session_id == other_id:
        raise ValueError("cannot merge a session history into itself")

    first, second = sorted((session_id, other_id))
    with store.lock(first):
        with store.lock(second):
            session = store.load(session_id)
            other = store.load(other_id)
            merged = session.history.merge(other.history, namespace=other_id)
            session = replace(session, history=merged, updated=_utcnow())
            store.save(session)
    return session


def session_summary(session: Session) -> dict:
    return {
        "session_id": session.id,
        "query": session.query,
        "rho": session.rho,
        "alphas": list(session.alphas()),
        "params": dict(session.params),
        "entries": list(session.entries),
        "created": session.created,
        "updated": session.updated,
    }
