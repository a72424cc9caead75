"""End-to-end query workflow shared by the HTTP service and the CLI:
analyze, optionally expand, search, optionally re-rank, and assemble the
side panels (journal tally, central authors) in one response document.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bradford import bradfordize, tally_journals
from .centrality import betweenness, build_coauthor_graph, central_authors, rerank_by_centrality
from .corpus import Corpus, load_corpus, tokenize
from .index import (
    PROVENANCE_EXPANDED,
    InvertedIndex,
    Query,
    RankedList,
    build_index,
    relabel,
    search,
)
from .termrec import AssociationModel, build_association_model, expand_query, load_model

RERANK_MODES = ("none", "bradford", "centrality")
PANEL_SIZE = 10


@dataclass(frozen=True)
class SearchRequest:
    q: str
    expand: bool = False
    k_expand: int = 4
    rerank: str = "none"
    k: int = 10
    require_abstract: bool = False


@dataclass(frozen=True)
class Snapshot:
    """Immutable service state: corpus, index, and association model."""

    corpus: Corpus
    index: InvertedIndex
    model: AssociationModel


def empty_model() -> AssociationModel:
    return AssociationModel({}, 0)


def load_snapshot(corpus_path, model_path=None, min_df: int = 2) -> Snapshot:
    """Build a snapshot from a record file; reuse a persisted model if given.

    A corpus without controlled-term assignments yields an empty model, so
    plain search still works.
    """
    corpus = load_corpus(corpus_path)
    index = build_index(corpus)
    if model_path is not None:
        model = load_model(model_path)
    else:
        try:
            model = build_association_model(corpus, min_df=min_df)
        except ValueError:
            model = empty_model()
    return Snapshot(corpus=corpus, index=index, model=model)


def execute_search(snapshot: Snapshot, request: SearchRequest) -> dict:
    """Run the full workflow and return the response document.

    Re-ranking permutes the complete hit set before truncation to k, so
    total_hits is identical across re-rank modes for the same query.
    """
    if request.k < 1:
        raise ValueError("k must be >= 1")
    if request.k_expand < 0:
        raise ValueError("k_expand must be >= 0")
    if request.rerank not in RERANK_MODES:
        raise ValueError(f"rerank must be one of {', '.join(RERANK_MODES)}")
    tokens = tokenize(request.q)
    if not tokens:
        raise ValueError("query is empty")
    query = Query(tuple(tokens))

    added: tuple[str, ...] = ()
    search_query = query
    if request.expand and request.k_expand > 0:
        expanded = expand_query(snapshot.model, query, request.k_expand)
        added = expanded.added_terms
        search_query = Query(tuple(expanded.all_terms()))

    full = search(
        snapshot.index,
        search_query,
        k=max(snapshot.index.n_docs, 1),
        require_abstract=request.require_abstract,
    )

    tally = tally_journals(full, snapshot.corpus)
    scores = betweenness(build_coauthor_graph(full, snapshot.corpus))

    if request.rerank == "bradford":
        final: RankedList = bradfordize(full, snapshot.corpus)
    elif request.rerank == "centrality":
        final = rerank_by_centrality(full, scores, snapshot.corpus)
    elif added:
        final = relabel(full, PROVENANCE_EXPANDED)
    else:
        final = full

    entries = []
    for entry in final.entries[: request.k]:
        record = snapshot.corpus.get(entry.doc_id)
        entries.append(
            {
                "rank": entry.rank,
                "id": record.id,
                "score": entry.score,
                "title": record.title,
                "year": record.year,
                "journal": record.journal,
                "authors": list(record.authors),
                "provenance": final.provenance,
            }
        )
    return {
        "query": request.q,
        "terms": list(search_query.distinct_terms()),
        "expansion_terms": list(added),
        "provenance": final.provenance,
        "total_hits": final.total_hits,
        "k": request.k,
        "entries": entries,
        "journal_tally": [
            {"journal": journal, "count": count}
            for journal, count in tally.entries[:PANEL_SIZE]
        ],
        "non_journal_docs": tally.non_journal_docs,
        "central_authors": [
            {"author": author, "score": score}
            for author, score in central_authors(scores, PANEL_SIZE)
        ]
        if scores
        else [],
    }
