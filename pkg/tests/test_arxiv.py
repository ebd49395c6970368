import pytest

from dataedron.arxiv import (
    ArxivClient,
    ArxivEntry,
    FetchError,
    OfflineDirectory,
    contextual_sentence,
    parse_feed,
    to_entities,
)
from dataedron.keywords import Document, tf_idf, top_w
from dataedron.mset import Multiset

EMPTY_FEED = b'<?xml version="1.0"?><feed xmlns="http://www.w3.org/2005/Atom"></feed>'


@pytest.fixture
def feed_bytes(fixtures_dir):
    return (fixtures_dir / "graph.xml").read_bytes()


class TestParseFeed:
    def test_three_entries_with_known_ids(self, feed_bytes):
        entries = parse_feed(feed_bytes)
        assert [e.id for e in entries] == [
            "2101.00001v1",
            "2101.00002v1",
            "2101.00003v1",
        ]

    def test_whitespace_normalized(self, feed_bytes):
        first = parse_feed(feed_bytes)[0]
        assert first.title == "Incremental graph algorithms for large networks"
        assert "\n" not in first.abstract
        assert first.abstract.startswith("We study graph algorithms")

    def test_categories_order_preserved(self, feed_bytes):
        second = parse_feed(feed_bytes)[1]
        assert second.categories == ("cs.DS", "cs.IR")

    def test_authors_and_links(self, feed_bytes):
        entries = parse_feed(feed_bytes)
        assert entries[0].authors == ("Alice Smith", "Bob Jones")
        assert entries[2].authors == ("Dave Brown",)
        assert entries[0].abs_url == "http://arxiv.org/abs/2101.00001v1"
        assert entries[0].pdf_url == "http://arxiv.org/pdf/2101.00001v1"
        assert entries[0].published == "2021-01-01T10:00:00Z"

    def test_empty_feed(self):
        assert parse_feed(EMPTY_FEED) == []

    def test_malformed_feed(self):
        with pytest.raises(FetchError):
            parse_feed(b"this is not xml")

    def test_entry_missing_id_skipped(self):
        feed = (
            b'<?xml version="1.0"?><feed xmlns="http://www.w3.org/2005/Atom">'
            b"<entry><title>No id</title></entry>"
            b"<entry><id>http://arxiv.org/abs/1234.5678</id><title>Ok</title></entry>"
            b"</feed>"
        )
        entries = parse_feed(feed)
        assert [e.id for e in entries] == ["1234.5678"]

    def test_deterministic_replay(self, feed_bytes):
        assert parse_feed(feed_bytes) == parse_feed(feed_bytes)


class FakeClock:
    def __init__(self):
        self.now = 1000.0

    def time(self) -> float:
        return self.now

    def sleep(self, seconds: float) -> None:
        assert seconds >= 0
        self.now += seconds


class TestClient:
    def test_truncates_to_n(self, feed_bytes):
        client = ArxivClient(transport=lambda url: feed_bytes)
        assert len(client.fetch("all:graph", 2)) == 2
        assert len(client.fetch("all:graph", 5)) == 3

    def test_n_must_be_positive(self):
        client = ArxivClient(transport=lambda url: EMPTY_FEED)
        with pytest.raises(ValueError):
            client.fetch("all:graph", 0)

    def test_url_construction(self, feed_bytes):
        seen = []

        def transport(url):
            seen.append(url)
            return feed_bytes

        client = ArxivClient(transport=transport)
        client.fetch("(all:a AND all:b)", 7)
        assert seen == [
            "http://export.arxiv.org/api/query"
            "?search_query=(all:a+AND+all:b)&start=0&max_results=7"
        ]

    def test_rate_limited_spacing(self, feed_bytes):
        clock = FakeClock()
        stamps = []

        def transport(url):
            stamps.append(clock.time())
            return feed_bytes

        client = ArxivClient(transport=transport, clock=clock.time, sleep=clock.sleep)
        for _ in range(3):
            client.fetch("all:graph", 1)
        gaps = [b - a for a, b in zip(stamps, stamps[1:])]
        assert all(gap >= 3.0 for gap in gaps)

    def test_retries_then_succeeds(self, feed_bytes):
        clock = FakeClock()
        calls = {"n": 0}

        def flaky(url):
            calls["n"] += 1
            if calls["n"] < 3:
                raise ConnectionError("boom")
            return feed_bytes

        client = ArxivClient(transport=flaky, clock=clock.time, sleep=clock.sleep)
        assert len(client.fetch("all:graph", 1)) == 1
        assert calls["n"] == 3

    def test_retries_exhausted(self):
        clock = FakeClock()

        def always_down(url):
            raise ConnectionError("boom")

        client = ArxivClient(transport=always_down, clock=clock.time, sleep=clock.sleep)
        with pytest.raises(FetchError):
            client.fetch("all:graph", 1)

    def test_http_error_not_retried(self):
        clock = FakeClock()
        calls = {"n": 0}

        def gone(url):
            calls["n"] += 1
            raise FetchError("HTTP 503")

        client = ArxivClient(transport=gone, clock=clock.time, sleep=clock.sleep)
        with pytest.raises(FetchError):
            client.fetch("all:graph", 1)
        assert calls["n"] == 1


class TestToEntities:
    def make_entry(self, id, authors, categories=("cs.DS",), abstract="graph search"):
        return ArxivEntry(
            id=id,
            title=f"Paper {id}",
            abstract=abstract,
            authors=tuple(authors),
            categories=tuple(categories),
            abs_url=None,
            pdf_url=None,
            published="2021-01-01T00:00:00Z",
        )

    def test_author_multiset(self):
        (entity,) = to_entities([self.make_entry("p1", ["X", "Y"])], 3)
        assert entity.attribute("authors") == Multiset({"X": 1, "Y": 1})

    def test_duplicate_author_kept_as_multiplicity(self):
        (entity,) = to_entities([self.make_entry("p1", ["X", "X"])], 3)
        assert entity.attribute("authors") == Multiset({"X": 2})
        assert entity.attribute("authors").is_natural()

    def test_pubid_and_categories(self):
        (entity,) = to_entities(
            [self.make_entry("p1", ["X"], categories=("cs.DS", "cs.IR"))], 3
        )
        assert entity.attribute("pubid") == Multiset({"p1": 1})
        assert entity.attribute("categories") == Multiset({"cs.DS": 1, "cs.IR": 1})

    def test_keywords_match_tfidf_pipeline(self, feed_bytes):
        entries = parse_feed(feed_bytes)
        entities = to_entities(entries, 4)
        docs = [Document(e.id, e.abstract) for e in entries]
        scores = tf_idf(docs)
        for entry, entity in zip(entries, entities):
            assert entity.attribute("keywords") == top_w(scores[entry.id], 4)

    def test_entity_count_and_unique_ids(self, feed_bytes):
        entities = to_entities(parse_feed(feed_bytes), 3)
        ids = [e.reference for e in entities]
        assert len(ids) == 3
        assert len(set(ids)) == 3

    def test_replay_is_deterministic(self, feed_bytes):
        first = to_entities(parse_feed(feed_bytes), 5)
        second = to_entities(parse_feed(feed_bytes), 5)
        assert first == second


class TestOfflineDirectory:
    def test_atom_lookup_by_slug(self, fixtures_dir):
        kind, payload = OfflineDirectory(fixtures_dir).lookup("graph")
        assert kind == "atom"
        assert b"2101.00001v1" in payload

    def test_corpus_lookup(self, fixtures_dir):
        kind, payload = OfflineDirectory(fixtures_dir).lookup("d0")
        assert kind == "corpus"
        assert b'"reference": "r1"' in payload

    def test_slugging(self):
        assert OfflineDirectory.slug("(a AND b)") == "a_and_b"

    def test_missing_fixture(self, fixtures_dir):
        with pytest.raises(FetchError):
            OfflineDirectory(fixtures_dir).lookup("zzz missing")

    def test_missing_directory(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            OfflineDirectory(tmp_path / "nope")


class TestContextualSentence:
    ABSTRACT = (
        "We study ranking. Graph search is hard on big corpora. "
        "Our index makes it fast."
    )

    def test_first_sentence_with_query_term(self):
        assert (
            contextual_sentence(self.ABSTRACT, ["graph"])
            == "Graph search is hard on big corpora."
        )

    def test_fallback_to_first_sentence(self):
        assert contextual_sentence(self.ABSTRACT, ["nothing"]) == "We study ranking."

    def test_phrase_matching(self):
        assert (
            contextual_sentence(self.ABSTRACT, ["graph search"])
            == "Graph search is hard on big corpora."
        )

    def test_word_boundary_for_single_terms(self):
        # "corpora" contains "or", but "or" should not match inside a word
        assert contextual_sentence(self.ABSTRACT, ["or"]) == "We study ranking."

    def test_empty_abstract(self):
        assert contextual_sentence("", ["x"]) == ""
