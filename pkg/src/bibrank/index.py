"""Inverted index over title, abstract, and controlled terms, plus the
baseline ranking function.

Scoring is the classic coordinated tf-idf:

    score(q, d) = coord(q, d) * sum over matched terms t of
                  sqrt(tf(t, d)) * idf(t)^2 * lengthNorm(d)

with idf(t) = 1 + ln(N / (df(t) + 1)), lengthNorm(d) = 1 / sqrt(doc_len(d))
and coord(q, d) = matched query terms / distinct query terms. Multi-term
queries are disjunctive (OR); ties break by ascending document id.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, replace
from typing import Mapping

from .corpus import Corpus

PROVENANCE_BASELINE = "baseline"
PROVENANCE_EXPANDED = "str_expanded"
PROVENANCE_BRADFORD = "bradford"
PROVENANCE_CENTRALITY = "centrality"


@dataclass(frozen=True)
class Query:
    """Disjunctive bag of analyzed tokens."""

    terms: tuple[str, ...]

    def distinct_terms(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.terms))


@dataclass(frozen=True)
class RankedEntry:
    doc_id: str
    score: float
    rank: int


@dataclass(frozen=True)
class RankedList:
    """Ordered results with score provenance and the pre-truncation hit count."""

    query: Query
    entries: tuple[RankedEntry, ...]
    provenance: str
    total_hits: int

    def doc_ids(self) -> list[str]:
        return [entry.doc_id for entry in self.entries]

    def to_dict(self) -> dict:
        return {
            "query": list(self.query.terms),
            "provenance": self.provenance,
            "total_hits": self.total_hits,
            "entries": [
                {"doc_id": e.doc_id, "score": e.score, "rank": e.rank} for e in self.entries
            ],
        }


@dataclass(frozen=True)
class InvertedIndex:
    """Term postings with corpus statistics.

    ``postings`` maps term -> ((doc id, raw in-document count), ...) sorted by
    doc id; ``doc_len`` is the indexed token count per document.
    """

    n_docs: int
    df: Mapping[str, int]
    postings: Mapping[str, tuple[tuple[str, int], ...]]
    doc_len: Mapping[str, int]
    docs_with_abstract: frozenset[str]

    def idf(self, term: str) -> float:
        return 1.0 + math.log(self.n_docs / (self.df[term] + 1))


def build_index(corpus: Corpus) -> InvertedIndex:
    """Index title, abstract, and controlled terms of every record."""
    postings: dict[str, list[tuple[str, int]]] = {}
    doc_len: dict[str, int] = {}
    with_abstract = set()
    for record in corpus:
        tokens = record.indexed_tokens()
        doc_len[record.id] = len(tokens)
        if record.has_abstract():
            with_abstract.add(record.id)
        for term, count in Counter(tokens).items():
            postings.setdefault(term, []).append((record.id, count))
    frozen = {
        term: tuple(sorted(entries)) for term, entries in postings.items()
    }
    df = {term: len(entries) for term, entries in frozen.items()}
    return InvertedIndex(
        n_docs=corpus.size,
        df=df,
        postings=frozen,
        doc_len=doc_len,
        docs_with_abstract=frozenset(with_abstract),
    )


def search(
    index: InvertedIndex,
    query: Query,
    k: int,
    require_abstract: bool = False,
) -> RankedList:
    """Rank the documents matching at least one query term; return the top k.

    ``total_hits`` counts every match before truncation. With
    ``require_abstract`` documents lacking an abstract are filtered out of the
    match set (and out of the hit count).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = list(dict.fromkeys(query.terms))
    if not terms:
        raise ValueError("query must contain at least one term")

    partial: dict[str, float] = {}
    matched: dict[str, int] = {}
    for term in terms:
        entries = index.postings.get(term)
        if not entries:
            continue
        weight = index.idf(term) ** 2
        for doc_id, tf in entries:
            if require_abstract and doc_id not in index.docs_with_abstract:
                continue
            partial[doc_id] = partial.get(doc_id, 0.0) + math.sqrt(tf) * weight
            matched[doc_id] = matched.get(doc_id, 0) + 1

    n_query = len(terms)
    scored = [
        (doc_id, (matched[doc_id] / n_query) * total / math.sqrt(index.doc_len[doc_id]))
        for doc_id, total in partial.items()
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))
    entries = tuple(
        RankedEntry(doc_id=doc_id, score=score, rank=position)
        for position, (doc_id, score) in enumerate(scored[:k], start=1)
    )
    return RankedList(
        query=query,
        entries=entries,
        provenance=PROVENANCE_BASELINE,
        total_hits=len(scored),
    )


def relabel(results: RankedList, provenance: str) -> RankedList:
    return replace(results, provenance=provenance)


def save_index(index: InvertedIndex, path) -> None:
    payload = {
        "n_docs": index.n_docs,
        "postings": {term: [list(e) for e in entries] for term, entries in index.postings.items()},
        "doc_len": dict(index.doc_len),
        "docs_with_abstract": sorted(index.docs_with_abstract),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def load_index(path) -> InvertedIndex:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    postings = {
        term: tuple((doc_id, int(tf)) for doc_id, tf in entries)
        for term, entries in payload["postings"].items()
    }
    return InvertedIndex(
        n_docs=int(payload["n_docs"]),
        df={term: len(entries) for term, entries in postings.items()},
        postings=postings,
        doc_len={doc: int(n) for doc, n in payload["doc_len"].items()},
        docs_with_abstract=frozenset(payload["docs_with_abstract"]),
    )
