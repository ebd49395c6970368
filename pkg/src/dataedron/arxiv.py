"""Arxiv export API client, Atom feed parsing, and entity materialization.

The live client enforces the polite-usage contract (one outstanding
request, >= 3 seconds between requests) and retries transient network
failures. Tests and offline deployments replay recorded fixtures instead;
nothing in the test suite touches the network.
"""

from __future__ import annotations

import json
import logging
import re
import threading
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import requests

from .facets import PhysicalEntity
from .keywords import Document, NounTagger, tf_idf, top_w
from .mset import EMPTY, Multiset

__all__ = [
    "ArxivEntry",
    "FetchError",
    "ArxivClient",
    "OfflineDirectory",
    "parse_feed",
    "to_entities",
    "contextual_sentence",
    "API_URL",
    "MIN_REQUEST_SPACING",
]

log = logging.getLogger(__name__)

API_URL = "http://export.arxiv.org/api/query"
MIN_REQUEST_SPACING = 3.0

_ATOM = "{http://www.w3.org/2005/Atom}"
_ID_PREFIX = re.compile(r"^https?://arxiv\.org/abs/")


@dataclass(frozen=True)
class ArxivEntry:
    id: str
    title: str
    abstract: str
    authors: tuple[str, ...]
    categories: tuple[str, ...]
    abs_url: str | None
    pdf_url: str | None
    published: str


class FetchError(RuntimeError):
    """Upstream API failure (network, HTTP status, or malformed feed)."""


def _squash(text: str | None) -> str:
    return " ".join(text.split()) if text else ""


def parse_feed(atom: bytes) -> list[ArxivEntry]:
    """Entries of an Atom result feed, in feed order.

    Entries without an id are skipped (logged); text fields are
    whitespace-normalized. XML errors propagate as FetchError.
    """
    try:
        root = ET.fromstring(atom)
    except ET.ParseError as exc:
        raise FetchError(f"malformed feed: {exc}") from exc

    entries: list[ArxivEntry] = []
    skipped = 0
    for node in root.findall(f"{_ATOM}entry"):
        raw_id = _squash(node.findtext(f"{_ATOM}id"))
        if not raw_id:
            skipped += 1
            continue
        abs_url = None
        pdf_url = None
        for link in node.findall(f"{_ATOM}link"):
            if link.get("rel") == "alternate":
                abs_url = link.get("href")
            elif link.get("title") == "pdf" or link.get("type") == "application/pdf":
                pdf_url = link.get("href")
        entries.append(
            ArxivEntry(
                id=_ID_PREFIX.sub("", raw_id),
                title=_squash(node.findtext(f"{_ATOM}title")),
                abstract=_squash(node.findtext(f"{_ATOM}summary")),
                authors=tuple(
                    _squash(a.findtext(f"{_ATOM}name"))
                    for a in node.findall(f"{_ATOM}author")
                ),
                categories=tuple(
                    c.get("term", "") for c in node.findall(f"{_ATOM}category")
                ),
                abs_url=abs_url or raw_id,
                pdf_url=pdf_url,
                published=_squash(node.findtext(f"{_ATOM}published")),
            )
        )
    if skipped:
        log.warning("skipped %d feed entries without an id", skipped)
    return entries


def _http_get(url: str) -> bytes:
    response = requests.get(url, timeout=30)
    if response.status_code != 200:
        raise FetchError(f"HTTP {response.status_code} from {url}")
    return response.content


class ArxivClient:
    """Rate-limited API client with bounded retries.

    ``transport``, ``clock`` and ``sleep`` are injectable so the spacing
    contract is testable without wall-clock time or network access.
    """

    def __init__(
        self,
        transport: Callable[[str], bytes] | None = None,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
        retries: int = 3,
        backoff: float = 2.0,
    ):
        self._transport = transport or _http_get
        self._clock = clock
        self._sleep = sleep
        self._retries = retries
        self._backoff = backoff
        self._lock = threading.Lock()
        self._last_request: float | None = None

    def _wait_turn(self) -> None:
        if self._last_request is not None:
            elapsed = self._clock() - self._last_request
            if elapsed < MIN_REQUEST_SPACING:
                self._sleep(MIN_REQUEST_SPACING - elapsed)

    def fetch(self, query: str, n: int) -> list[ArxivEntry]:
        """First n results for an external query string, in feed order."""
        if n < 1:
            raise ValueError("n must be at least 1")
        url = (
            f"{API_URL}?search_query={query.replace(' ', '+')}"
            f"&start=0&max_results={n}"
        )
        with self._lock:
            failure: Exception | None = None
            for attempt in range(self._retries):
                self._wait_turn()
                self._last_request = self._clock()
                try:
                    body = self._transport(url)
                    break
                except FetchError:
                    raise
                except Exception as exc:  # network-level failure: retry
                    failure = exc
                    self._sleep(self._backoff * (attempt + 1))
            else:
                raise FetchError(f"request failed after {self._retries} attempts: {failure}")
        return parse_feed(body)[:n]


class OfflineDirectory:
    """Recorded fixtures replayed instead of the live API.

    A query maps to a slugged filename; ``<slug>.xml`` holds a raw Atom
    feed, ``<slug>.json`` a prebuilt entity corpus. ``default.xml`` or
    ``default.json`` serve as a catch-all when present.
    """

    def __init__(self, path: str | Path):
        self._path = Path(path)
        if not self._path.is_dir():
            raise FileNotFoundError(f"fixture directory not found: {self._path}")

    @staticmethod
    def slug(query: str) -> str:
        return re.sub(r"[^A-Za-z0-9]+", "_", query).strip("_").lower()

    def lookup(self, query: str) -> tuple[str, bytes]:
        """(kind, payload) where kind is "atom" or "corpus"."""
        slug = self.slug(query)
        for stem in (slug, "default"):
            xml = self._path / f"{stem}.xml"
            if xml.is_file():
                return "atom", xml.read_bytes()
            corpus = self._path / f"{stem}.json"
            if corpus.is_file():
                return "corpus", corpus.read_bytes()
        raise FetchError(f"no fixture for query {query!r} (slug {slug!r}) in {self._path}")


def to_entities(
    entries: Sequence[ArxivEntry], w: int, tagger: NounTagger | None = None
) -> list[PhysicalEntity]:
    """Materialize feed entries as physical entities.

    Authors and categories become natural multisets (repetitions kept);
    keywords are the per-abstract top-w TF-IDF terms, scored over the whole
    fetched batch. Every entity also carries its own id under "pubid" so
    the publication itself is a usable reference type.
    """
    if w < 1:
        raise ValueError("w must be at least 1")
    keywords: dict[str, Multiset] = {}
    if entries:
        docs = [Document(e.id, e.abstract) for e in entries]
        scores = tf_idf(docs, tagger)
        keywords = {doc.id: top_w(scores[doc.id], w) for doc in docs}
    return [
        PhysicalEntity(
            entry.id,
            {
                "pubid": Multiset({entry.id: 1}),
                "authors": Multiset.counting(entry.authors),
                "keywords": keywords.get(entry.id, EMPTY),
                "categories": Multiset.counting(entry.categories),
            },
        )
        for entry in entries
    ]


_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")


def contextual_sentence(abstract: str, terms: Iterable[str]) -> str:
    """First sentence mentioning any query term, else the first sentence.

    The extraction rule is a pragmatic choice: single-word terms match on
    word boundaries, phrases as case-insensitive substrings.
    """
    sentences = [s for s in _SENTENCE_SPLIT.split(abstract) if s.strip()]
    if not sentences:
        return ""
    lowered_terms = [t.lower() for t in terms if t]
    for sentence in sentences:
        lowered = sentence.lower()
        for term in lowered_terms:
            if " " in term:
                if term in lowered:
                    return sentence.strip()
            elif re.search(rf"\b{re.escape(term)}\b", lowered):
                return sentence.strip()
    return sentences[0].strip()
