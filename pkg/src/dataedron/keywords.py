"""Noun keyword extraction from abstracts, scored with TF-IDF.

Tagging is a deterministic heuristic (word lists plus suffix rules) rather
than a model dependency, so runs are reproducible everywhere. Accuracy
parity with a full NLP tagger is out of scope; the rules favour recall on
the noun-heavy vocabulary of scientific abstracts.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .hbgraph import HbGraph
from .mset import Multiset

__all__ = [
    "Document",
    "NounTagger",
    "extract_nouns",
    "term_frequencies",
    "tf_idf",
    "top_w",
    "keyword_hbgraph",
]

_TOKEN = re.compile(r"[A-Za-z](?:[A-Za-z'-]*[A-Za-z])?")

# Plural forms the suffix rules get wrong.
_IRREGULAR_PLURALS = {
    "analyses": "analysis",
    "bases": "basis",
    "children": "child",
    "corpora": "corpus",
    "criteria": "criterion",
    "data": "data",
    "feet": "foot",
    "hypotheses": "hypothesis",
    "indices": "index",
    "matrices": "matrix",
    "media": "medium",
    "men": "man",
    "news": "news",
    "people": "person",
    "phenomena": "phenomenon",
    "series": "series",
    "species": "species",
    "syntheses": "synthesis",
    "taxa": "taxon",
    "theses": "thesis",
    "vertices": "vertex",
    "women": "woman",
}


def singularize(word: str) -> str:
    """Plural-to-singular for lowercase words; unchanged when not plural."""
    if word in _IRREGULAR_PLURALS:
        return _IRREGULAR_PLURALS[word]
    if not word.endswith("s") or word.endswith(("ss", "us", "is")):
        return word
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("ches", "shes", "xes", "sses", "zes", "oes")):
        return word[:-2]
    return word[:-1]


def _load_wordlist(name: str) -> frozenset[str]:
    text = resources.files("dataedron.data").joinpath(name).read_text(encoding="utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


class NounTagger:
    """Heuristic noun classifier: stopwords, a non-noun word list, suffix rules.

    Word lists are plain-text files, one token per line, so deployments can
    tune them without touching code. Classification is applied to the
    lowercased singular form and the surface form alike.
    """

    def __init__(
        self,
        stopwords: Iterable[str],
        non_nouns: Iterable[str],
        noun_suffixes: Iterable[str],
        non_noun_suffixes: Iterable[str],
        noun_exceptions: Iterable[str],
    ):
        self._stopwords = frozenset(stopwords)
        self._non_nouns = frozenset(non_nouns)
        self._noun_suffixes = tuple(noun_suffixes)
        self._non_noun_suffixes = tuple(non_noun_suffixes)
        self._noun_exceptions = frozenset(noun_exceptions)

    _default: "NounTagger | None" = None

    @classmethod
    def default(cls) -> "NounTagger":
        if cls._default is None:
            cls._default = cls(
                stopwords=_load_wordlist("stopwords.txt"),
                non_nouns=_load_wordlist("non_nouns.txt"),
                noun_suffixes=_load_wordlist("noun_suffixes.txt"),
                non_noun_suffixes=_load_wordlist("non_noun_suffixes.txt"),
                noun_exceptions=_load_wordlist("nouns.txt"),
            )
        return cls._default

    @classmethod
    def from_files(
        cls,
        stopwords: str | Path,
        non_nouns: str | Path,
        noun_suffixes: str | Path,
        non_noun_suffixes: str | Path,
        noun_exceptions: str | Path,
    ) -> "NounTagger":
        def read(path: str | Path) -> frozenset[str]:
            lines = Path(path).read_text(encoding="utf-8").splitlines()
            return frozenset(line.strip() for line in lines if line.strip())

        return cls(
            read(stopwords),
            read(non_nouns),
            read(noun_suffixes),
            read(non_noun_suffixes),
            read(noun_exceptions),
        )

    def is_noun(self, word: str) -> bool:
        surface = word.lower()
        if surface.endswith("'s"):
            surface = surface[:-2]
        lemma = singularize(surface)
        if surface in self._stopwords or lemma in self._stopwords:
            return False
        if surface in self._noun_exceptions or lemma in self._noun_exceptions:
            return True
        if surface in self._non_nouns or lemma in self._non_nouns:
            return False
        for suffix in self._noun_suffixes:
            if lemma.endswith(suffix) and len(lemma) >= len(suffix) + 2:
                return True
        for suffix in self._non_noun_suffixes:
            if lemma.endswith(suffix) and len(lemma) >= len(suffix) + 3:
                return False
        return True

    def lemma(self, word: str) -> str:
        surface = word.lower()
        if surface.endswith("'s"):
            surface = surface[:-2]
        return singularize(surface)

    def nouns(self, text: str) -> list[str]:
        """Lowercased singular noun tokens of ``text``, in order, with repetition."""
        return [
            self.lemma(token)
            for token in _TOKEN.findall(text)
            if self.is_noun(token)
        ]


@dataclass(frozen=True)
class Document:
    id: str
    text: str


def extract_nouns(text: str, tagger: NounTagger | None = None) -> list[str]:
    """Normalized noun tokens of an abstract (deterministic, order-preserving)."""
    return (tagger or NounTagger.default()).nouns(text)


def term_frequencies(nouns: Sequence[str]) -> dict[str, float]:
    """Relative term frequency per noun type; values sum to 1 when any noun exists."""
    if not nouns:
        return {}
    total = len(nouns)
    counts: dict[str, int] = {}
    for noun in nouns:
        counts[noun] = counts.get(noun, 0) + 1
    return {term: count / total for term, count in counts.items()}


def tf_idf(
    corpus: Sequence[Document], tagger: NounTagger | None = None
) -> dict[str, dict[str, float]]:
    """Per-document TF-IDF scores over extracted nouns.

    tf is the relative frequency inside the document, idf is ln(N / df)
    without smoothing; scores are rounded to 9 decimals so downstream
    grouping by exact equality is stable across computation orders. A
    document with no noun tokens gets an empty score map.
    """
    if not corpus:
        raise ValueError("corpus must be non-empty")
    tagger = tagger or NounTagger.default()
    nouns = {doc.id: tagger.nouns(doc.text) for doc in corpus}

    df: dict[str, int] = {}
    for tokens in nouns.values():
        for term in set(tokens):
            df[term] = df.get(term, 0) + 1

    n_docs = len(corpus)
    scores: dict[str, dict[str, float]] = {}
    for doc in corpus:
        tf = term_frequencies(nouns[doc.id])
        scores[doc.id] = {
            term: round(freq * math.log(n_docs / df[term]), 9)
            for term, freq in tf.items()
        }
    return scores


def top_w(scored: dict[str, float], w: int) -> Multiset:
    """The w best-scoring terms as a multiset weighted by score.

    Ties break lexicographically ascending; zero-score terms never appear
    (their multiplicity would be zero anyway).
    """
    if w < 1:
        raise ValueError("w must be at least 1")
    ranked = sorted(
        ((term, score) for term, score in scored.items() if score > 0),
        key=lambda pair: (-pair[1], pair[0]),
    )
    return Multiset(dict(ranked[:w]))


def keyword_hbgraph(
    corpus: Sequence[Document], w: int, tagger: NounTagger | None = None
) -> HbGraph:
    """One hb-edge per abstract: its top-w TF-IDF terms weighted by score.

    A single-document corpus yields all-zero scores (idf is ln 1), hence
    empty edges; this degenerate case is kept rather than special-cased.
    """
    if w < 1:
        raise ValueError("w must be at least 1")
    if not corpus:
        return HbGraph()
    scores = tf_idf(corpus, tagger)
    edges = [(doc.id, top_w(scores[doc.id], w)) for doc in corpus]
    vertices: set[str] = set()
    for _, edge in edges:
        vertices.update(edge.support)
    return HbGraph(vertices, edges)
