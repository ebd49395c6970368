from pathlib import Path

import pytest
from hypothesis import settings

from dataedron.facets import Corpus, PhysicalEntity, SearchResult
from dataedron.mset import Multiset

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def _entity(ref: str, **attrs) -> PhysicalEntity:
    return PhysicalEntity(ref, {name: Multiset(vals) for name, vals in attrs.items()})


@pytest.fixture
def d0_corpus() -> Corpus:
    """Desk corpus: three publications over authors, keywords, categories."""
    return Corpus(
        [
            _entity(
                "r1",
                auth={"Alice": 1, "Bob": 1},
                kw={"graph": 2, "search": 1},
                cat={"cs.DS": 1},
            ),
            _entity(
                "r2",
                auth={"Alice": 1, "Carol": 1},
                kw={"graph": 1, "index": 1},
                cat={"cs.DS": 1, "cs.IR": 1},
            ),
            _entity("r3", auth={"Dave": 1}, kw={"search": 2}, cat={"cs.IR": 1}),
        ],
        types=["auth", "kw", "cat"],
    )


@pytest.fixture
def d0_search() -> SearchResult:
    return SearchResult(("r1", "r2", "r3"))


@pytest.fixture
def d1_corpus() -> Corpus:
    """Two publications sharing one author pair; all keyword edges coincide."""
    return Corpus(
        [
            _entity("r1", auth={"A": 1, "B": 1}, kw={"k1": 1, "k2": 1}),
            _entity("r2", auth={"A": 1, "B": 1}, kw={"k3": 1}),
        ],
        types=["auth", "kw"],
    )
