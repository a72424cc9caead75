import pytest

from bibrank.corpus import BibRecord, Corpus


def record(doc_id, title="", abstract=None, journal=None, authors=(), terms=(), year=None):
    return BibRecord(
        id=doc_id,
        title=title,
        abstract=abstract,
        journal=journal,
        authors=tuple(authors),
        controlled_terms=tuple(terms),
        year=year,
        doc_type="journalarticle",
    )


@pytest.fixture
def small_corpus():
    """Three documents with a scoring tie between d1 and d2 on query 'x'."""
    return Corpus(
        [
            record("d1", title="x x x x"),
            record("d2", title="x"),
            record("d3", title="y"),
        ]
    )


@pytest.fixture
def association_corpus():
    """Four documents; 'net' and the descriptor 'networks' co-occur exactly."""
    return Corpus(
        [
            record("c1", title="net models", terms=["networks"]),
            record("c2", title="net effects", terms=["networks"]),
            record("c3", title="market design", terms=["economics"]),
            record("c4", title="field studies", terms=["economics"]),
        ]
    )
