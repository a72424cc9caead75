"""Term recommender: co-word associations between free text terms and
controlled vocabulary descriptors, and automatic query expansion.

Association strength is the log-likelihood ratio of the 2x2 document
co-occurrence contingency table. Pairs co-occurring less often than
independence would predict are clamped to 0: recommendation is about
positive relatedness only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .corpus import Corpus, tokenize
from .index import Query


@dataclass(frozen=True)
class Association:
    """One (free term, descriptor) pair with its contingency inputs.

    n_both: documents containing the free term and carrying the descriptor.
    n_free: documents containing the free term in title or abstract.
    n_controlled: documents carrying the descriptor.
    """

    term: str
    score: float
    n_both: int
    n_free: int
    n_controlled: int


class AssociationModel:
    """Ranked descriptor associations per free term, immutable after build."""

    def __init__(self, associations: Mapping[str, Iterable[Association]], n_docs: int) -> None:
        self.n_docs = n_docs
        self._associations: dict[str, tuple[Association, ...]] = {}
        for free_term, entries in associations.items():
            ranked = tuple(sorted(entries, key=lambda a: (-a.score, a.term)))
            for assoc in ranked:
                if not 0 <= assoc.n_both <= min(assoc.n_free, assoc.n_controlled) <= n_docs:
                    raise ValueError(
                        f"inconsistent contingency counts for ({free_term!r}, {assoc.term!r})"
                    )
            self._associations[free_term] = ranked

    @property
    def free_terms(self) -> list[str]:
        return sorted(self._associations)

    def lookup(self, term: str) -> tuple[Association, ...]:
        return self._associations.get(term, ())


@dataclass(frozen=True)
class ExpandedQuery:
    """Original query tokens plus descriptors added by the recommender."""

    original_terms: tuple[str, ...]
    added_terms: tuple[str, ...]

    def all_terms(self) -> list[str]:
        """OR semantics: original tokens followed by the added descriptors'
        tokens, deduplicated in first-occurrence order."""
        seen = dict.fromkeys(self.original_terms)
        for term in self.added_terms:
            for token in tokenize(term):
                seen.setdefault(token)
        return list(seen)


def log_likelihood_ratio(n_both: int, n_free: int, n_controlled: int, n_docs: int) -> float:
    """Log-likelihood ratio of a 2x2 document co-occurrence table.

    Cells: (both, free only, controlled only, neither). Uses the convention
    0 * ln(0) = 0; returns 0.0 when the observed co-occurrence falls below
    the independence expectation.
    """
    if n_both * n_docs < n_free * n_controlled:
        return 0.0
    observed = (
        n_both,
        n_free - n_both,
        n_controlled - n_both,
        n_docs - n_free - n_controlled + n_both,
    )
    rows = (n_free, n_free, n_docs - n_free, n_docs - n_free)
    cols = (n_controlled, n_docs - n_controlled, n_controlled, n_docs - n_controlled)
    total = 0.0
    for cell, row, col in zip(observed, rows, cols):
        if cell == 0:
            continue
        expected = row * col / n_docs
        total += cell * math.log(cell / expected)
    return max(2.0 * total, 0.0)


def build_association_model(corpus: Corpus, min_df: int = 2) -> AssociationModel:
    """Mine descriptor associations from document co-occurrence.

    Free terms below ``min_df`` documents are skipped; single-occurrence
    terms produce degenerate tables, hence the default of 2.
    """
    if corpus.size == 0:
        raise ValueError("cannot build an association model from an empty corpus")
    free_docs: dict[str, set[str]] = {}
    controlled_count: dict[str, int] = {}
    doc_descriptors: dict[str, tuple[str, ...]] = {}
    for record in corpus:
        for token in set(record.free_text_tokens()):
            free_docs.setdefault(token, set()).add(record.id)
        doc_descriptors[record.id] = record.controlled_terms
        for term in record.controlled_terms:
            controlled_count[term] = controlled_count.get(term, 0) + 1
    if not controlled_count:
        raise ValueError("corpus has no controlled-term assignments")

    associations: dict[str, list[Association]] = {}
    for free_term, docs in free_docs.items():
        if len(docs) < min_df:
            continue
        co_counts: dict[str, int] = {}
        for doc_id in docs:
            for descriptor in doc_descriptors[doc_id]:
                co_counts[descriptor] = co_counts.get(descriptor, 0) + 1
        entries = [
            Association(
                term=descriptor,
                score=log_likelihood_ratio(
                    n_both, len(docs), controlled_count[descriptor], corpus.size
                ),
                n_both=n_both,
                n_free=len(docs),
                n_controlled=controlled_count[descriptor],
            )
            for descriptor, n_both in co_counts.items()
        ]
        if entries:
            associations[free_term] = entries
    return AssociationModel(associations, corpus.size)


def recommend(model: AssociationModel, term: str, k: int) -> list[tuple[str, float]]:
    """Top-k descriptors for ``term``; unknown terms yield an empty list."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return [(assoc.term, assoc.score) for assoc in model.lookup(term)[:k]]


def expand_query(model: AssociationModel, query: Query, k: int) -> ExpandedQuery:
    """Enhance a query with up to ``k`` associated descriptors.

    Candidates are the union of the top-k recommendations per original term,
    scored by their best association; descriptors whose tokens overlap the
    original query are dropped so the addition is always disjoint.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    original = query.distinct_terms()
    if not original:
        raise ValueError("query must contain at least one term")
    original_set = set(original)
    best: dict[str, float] = {}
    for term in original:
        for assoc in model.lookup(term)[:k]:
            if original_set.intersection(tokenize(assoc.term)):
                continue
            if assoc.term not in best or assoc.score > best[assoc.term]:
                best[assoc.term] = assoc.score
    ranked = sorted(best.items(), key=lambda item: (-item[1], item[0]))[:k]
    return ExpandedQuery(
        original_terms=query.terms,
        added_terms=tuple(term for term, _ in ranked),
    )


def save_model(model: AssociationModel, path) -> None:
    """Persist as tab-separated lines:
    free term, descriptor, n_both, n_free, n_controlled, n_docs, score."""
    with open(path, "w", encoding="utf-8") as fh:
        for free_term in model.free_terms:
            for assoc in model.lookup(free_term):
                fh.write(
                    "\t".join(
                        (
                            free_term,
                            assoc.term,
                            str(assoc.n_both),
                            str(assoc.n_free),
                            str(assoc.n_controlled),
                            str(model.n_docs),
                            repr(assoc.score),
                        )
                    )
                    + "\n"
                )


def load_model(path) -> AssociationModel:
    """Reload a persisted model; no corpus required."""
    associations: dict[str, list[Association]] = {}
    n_docs = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 7:
                raise ValueError(f"line {lineno}: expected 7 tab-separated fields")
            free_term, descriptor, n_both, n_free, n_controlled, total, score = fields
            if n_docs and int(total) != n_docs:
                raise ValueError(f"line {lineno}: inconsistent corpus size {total}")
            n_docs = int(total)
            associations.setdefault(free_term, []).append(
                Association(
                    term=descriptor,
                    score=float(score),
                    n_both=int(n_both),
                    n_free=int(n_free),
                    n_controlled=int(n_controlled),
                )
            )
    return AssociationModel(associations, n_docs)
