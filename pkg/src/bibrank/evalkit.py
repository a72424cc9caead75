"""Assessment evaluation toolkit: pooling, precision, Fleiss's kappa,
raw agreement, result-set overlap, and the binomial standard error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import AbstractSet, Iterable, Mapping, Sequence

from .index import RankedList


class UndefinedPrecisionError(ValueError):
    """Raised when precision is requested but no judged documents exist."""


@dataclass(frozen=True)
class Judgment:
    """One binary relevance verdict by one assessor on one document."""

    topic_id: str
    doc_id: str
    assessor_id: str
    relevant: bool


class JudgmentSet:
    """Immutable judgment collection; one verdict per (topic, doc, assessor)."""

    def __init__(self, judgments: Iterable[Judgment]) -> None:
        self._judgments = tuple(judgments)
        self._by_topic: dict[str, dict[tuple[str, str], bool]] = {}
        for j in self._judgments:
            per_topic = self._by_topic.setdefault(j.topic_id, {})
            key = (j.doc_id, j.assessor_id)
            if key in per_topic:
                raise ValueError(
                    f"duplicate verdict for topic {j.topic_id!r}, doc {j.doc_id!r}, "
                    f"assessor {j.assessor_id!r}"
                )
            per_topic[key] = j.relevant

    def __len__(self) -> int:
        return len(self._judgments)

    def __iter__(self):
        return iter(self._judgments)

    def topics(self) -> list[str]:
        return sorted(self._by_topic)

    def for_topic(self, topic_id: str) -> dict[tuple[str, str], bool]:
        """(doc id, assessor id) -> verdict for one topic."""
        return dict(self._by_topic.get(topic_id, {}))

    def assessors(self, topic_id: str) -> list[str]:
        return sorted({assessor for _, assessor in self._by_topic.get(topic_id, {})})


def load_judgments(path) -> JudgmentSet:
    """Read tab-separated lines: topic_id, doc_id, assessor_id, verdict (1|0)."""
    judgments = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 4:
                raise ValueError(f"line {lineno}: expected 4 tab-separated fields")
            topic_id, doc_id, assessor_id, verdict = fields
            if verdict not in ("0", "1"):
                raise ValueError(f"line {lineno}: verdict must be 1 or 0, got {verdict!r}")
            judgments.append(
                Judgment(
                    topic_id=topic_id,
                    doc_id=doc_id,
                    assessor_id=assessor_id,
                    relevant=verdict == "1",
                )
            )
    return JudgmentSet(judgments)


def build_pool(lists: Mapping[str, RankedList], n: int) -> list[str]:
    """Union of every service's top-n documents for one topic.

    Presentation order is a round-robin over the services (sorted by name)
    with duplicates skipped, so the origin of a document is not apparent.
    """
    if not lists:
        raise ValueError("at least one service list is required")
    if n < 1:
        raise ValueError("n must be >= 1")
    services = sorted(lists)
    pool: list[str] = []
    seen: set[str] = set()
    for position in range(n):
        for service in services:
            entries = lists[service].entries
            if position < len(entries):
                doc_id = entries[position].doc_id
                if doc_id not in seen:
                    seen.add(doc_id)
                    pool.append(doc_id)
    return pool


@dataclass(frozen=True)
class PrecisionResult:
    relevant: int
    not_relevant: int

    @property
    def judged(self) -> int:
        return self.relevant + self.not_relevant

    @property
    def precision(self) -> float:
        return self.relevant / self.judged


def precision(
    judgments: JudgmentSet, topic_id: str, service_docs: AbstractSet[str] | Iterable[str]
) -> PrecisionResult:
    """Count relevant / not-relevant verdicts on a service's pooled documents.

    Unjudged documents are ignored; with no judged document at all the
    precision is undefined and raises rather than returning 0.
    """
    docs = set(service_docs)
    relevant = 0
    not_relevant = 0
    for (doc_id, _assessor), verdict in judgments.for_topic(topic_id).items():
        if doc_id not in docs:
            continue
        if verdict:
            relevant += 1
        else:
            not_relevant += 1
    if relevant + not_relevant == 0:
        raise UndefinedPrecisionError(
            f"no judged documents for topic {topic_id!r} in the given top list"
        )
    return PrecisionResult(relevant=relevant, not_relevant=not_relevant)


def macro_average(values: Sequence[float]) -> float:
    """Arithmetic mean of per-topic precision values."""
    if not values:
        raise ValueError("cannot average an empty list")
    return math.fsum(values) / len(values)


def fleiss_kappa(matrix: Sequence[Sequence[int]]) -> float:
    """Fleiss's kappa for an item x category count matrix.

    Every row must sum to the same number of raters n >= 2. When expected
    agreement is 1 (all ratings in one category) observed agreement is
    necessarily 1 as well and the kappa is defined as 1.0.
    """
    if not matrix:
        raise ValueError("at least one item is required")
    width = len(matrix[0])
    if any(len(row) != width for row in matrix):
        raise ValueError("all rows must have the same number of categories")
    if any(cell < 0 for row in matrix for cell in row):
        raise ValueError("counts must be non-negative")
    n = sum(matrix[0])
    if any(sum(row) != n for row in matrix):
        raise ValueError("all items must have the same number of ratings")
    if n < 2:
        raise ValueError("at least two raters per item are required")
    items = len(matrix)
    per_item = [
        (math.fsum(cell * cell for cell in row) - n) / (n * (n - 1)) for row in matrix
    ]
    observed = math.fsum(per_item) / items
    proportions = [
        math.fsum(row[j] for row in matrix) / (items * n) for j in range(width)
    ]
    expected = math.fsum(p * p for p in proportions)
    if expected >= 1.0:
        return 1.0
    return (observed - expected) / (1.0 - expected)


def standard_error(p: float, n: int) -> float:
    """Binomial standard error of a proportion: sqrt(p (1 - p) / n)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.sqrt(p * (1.0 - p) / n)


@dataclass(frozen=True)
class AgreementResult:
    """Mean pairwise agreement with the count of unanimous documents."""

    agreement: float
    perfect_matches: int
    documents: int


def agreement_rate(judgments: JudgmentSet) -> AgreementResult:
    """Per-document pairwise agreement, averaged over all multiply judged docs.

    A document counts as a perfect match when every assessor gave the same
    verdict. Documents with fewer than two verdicts carry no pair and are
    excluded.
    """
    rates = []
    perfect = 0
    for topic_id in judgments.topics():
        verdicts_per_doc: dict[str, list[bool]] = {}
        for (doc_id, _assessor), verdict in judgments.for_topic(topic_id).items():
            verdicts_per_doc.setdefault(doc_id, []).append(verdict)
        for verdicts in verdicts_per_doc.values():
            m = len(verdicts)
            if m < 2:
                continue
            yes = sum(verdicts)
            agreeing = yes * (yes - 1) // 2 + (m - yes) * (m - yes - 1) // 2
            rates.append(agreeing / (m * (m - 1) / 2))
            if yes in (0, m):
                perfect += 1
    if not rates:
        raise ValueError("no document was judged by two or more assessors")
    return AgreementResult(
        agreement=math.fsum(rates) / len(rates),
        perfect_matches=perfect,
        documents=len(rates),
    )


@dataclass(frozen=True)
class OverlapResult:
    """Pairwise intersection sizes summed over topics, plus the grand total."""

    pairwise: dict[tuple[str, str], int]
    total: int


def overlap(sets: Mapping[str, Mapping[str, AbstractSet[str]]]) -> OverlapResult:
    """Intersection sizes of per-topic document sets between service pairs.

    ``sets`` maps service -> topic -> documents (typically the relevant
    top-n of each service).
    """
    services = sorted(sets)
    if len(services) < 2:
        raise ValueError("at least two services are required")
    pairwise: dict[tuple[str, str], int] = {}
    for a, b in combinations(services, 2):
        topics = set(sets[a]) | set(sets[b])
        pairwise[(a, b)] = sum(
            len(set(sets[a].get(t, ())) & set(sets[b].get(t, ()))) for t in topics
        )
    return OverlapResult(pairwise=pairwise, total=sum(pairwise.values()))
