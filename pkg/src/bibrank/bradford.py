"""Journal-concentration re-ranking.

Counts how often each journal appears in a result set, splits the journals
into three zones of roughly equal document counts, and re-sorts the result
list so documents from frequently publishing journals come first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .corpus import Corpus
from .index import PROVENANCE_BRADFORD, RankedEntry, RankedList


@dataclass(frozen=True)
class JournalTally:
    """Per-journal document counts over a whole result set.

    ``entries`` is sorted by count descending, journal name ascending.
    Documents without a journal are tracked in ``non_journal_docs``.
    """

    entries: tuple[tuple[str, int], ...]
    total_journal_docs: int
    non_journal_docs: int


@dataclass(frozen=True)
class BradfordZones:
    """Three ordered journal groups with their cumulative document counts."""

    core: tuple[str, ...]
    zone2: tuple[str, ...]
    zone3: tuple[str, ...]
    core_docs: int
    zone2_docs: int
    zone3_docs: int


def tally_journals(results: RankedList, corpus: Corpus) -> JournalTally:
    """Exact per-journal counts over the full result set."""
    counts: dict[str, int] = {}
    without_journal = 0
    for entry in results.entries:
        journal = corpus.get(entry.doc_id).journal
        if journal is None:
            without_journal += 1
        else:
            counts[journal] = counts.get(journal, 0) + 1
    ordered = tuple(sorted(counts.items(), key=lambda item: (-item[1], item[0])))
    return JournalTally(
        entries=ordered,
        total_journal_docs=sum(counts.values()),
        non_journal_docs=without_journal,
    )


def bradford_zones(tally: JournalTally) -> BradfordZones:
    """Greedy split of the tally into three zones of near-equal size.

    A journal joins the current zone while the zone still holds fewer than
    ceil(total / 3) documents; a journal straddling that boundary stays in
    the earlier zone. The third zone absorbs the remainder.
    """
    if not tally.entries:
        raise ValueError("cannot zone an empty tally")
    target = math.ceil(tally.total_journal_docs / 3)
    zones: list[list[str]] = [[], [], []]
    docs = [0, 0, 0]
    current = 0
    for journal, count in tally.entries:
        while current < 2 and docs[current] >= target:
            current += 1
        zones[current].append(journal)
        docs[current] += count
    return BradfordZones(
        core=tuple(zones[0]),
        zone2=tuple(zones[1]),
        zone3=tuple(zones[2]),
        core_docs=docs[0],
        zone2_docs=docs[1],
        zone3_docs=docs[2],
    )


def bradfordize(results: RankedList, corpus: Corpus) -> RankedList:
    """Stable re-sort by per-journal count (descending), then original rank.

    Documents without a journal count as 0 and sink to the bottom. Output
    scores are the journal counts.
    """
    tally = tally_journals(results, corpus)
    counts = dict(tally.entries)

    def journal_count(entry: RankedEntry) -> int:
        journal = corpus.get(entry.doc_id).journal
        return counts.get(journal, 0) if journal is not None else 0

    reordered = sorted(results.entries, key=lambda e: (-journal_count(e), e.rank))
    entries = tuple(
        RankedEntry(doc_id=e.doc_id, score=float(journal_count(e)), rank=position)
        for position, e in enumerate(reordered, start=1)
    )
    return replace(results, entries=entries, provenance=PROVENANCE_BRADFORD)
