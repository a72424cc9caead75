"""Bibliographic records, corpus loading, and the shared analyzer.

The analyzer is deliberately trivial: case-fold, split on everything that is
not a letter or a digit, no stemming, no stop words. Keeping it this simple
makes every downstream statistic auditable against the raw metadata.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

# Unicode letters and digits only; underscore counts as a separator.
_TOKEN_RE = re.compile(r"[^\W_]+")


class CorpusFormatError(ValueError):
    """A record file or record payload violates the record format."""


def tokenize(text: str) -> list[str]:
    """Case-fold ``text`` and split on every non-letter, non-digit character.

    Never emits empty tokens; token order follows the input.
    """
    return _TOKEN_RE.findall(text.casefold())


@dataclass(frozen=True)
class BibRecord:
    """One bibliographic metadata record.

    ``journal`` and ``authors`` are identities by exact string equality after
    trimming; no name disambiguation happens anywhere downstream.
    ``controlled_terms`` are thesaurus descriptors, deduplicated exactly
    (case-preserving) while keeping first-occurrence order.
    """

    id: str
    title: str = ""
    abstract: str | None = None
    journal: str | None = None
    authors: tuple[str, ...] = ()
    controlled_terms: tuple[str, ...] = ()
    year: int | None = None
    doc_type: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusFormatError("record id must be a non-empty string")
        authors = tuple(a.strip() for a in self.authors)
        if any(not a for a in authors):
            raise CorpusFormatError(f"record {self.id!r}: author names must be non-empty")
        object.__setattr__(self, "authors", authors)
        journal = self.journal.strip() if self.journal else None
        object.__setattr__(self, "journal", journal or None)
        object.__setattr__(self, "controlled_terms", tuple(dict.fromkeys(self.controlled_terms)))

    def has_abstract(self) -> bool:
        return bool(self.abstract and self.abstract.strip())

    def free_text_tokens(self) -> list[str]:
        """Tokens of the free-text side: title plus abstract."""
        tokens = tokenize(self.title)
        if self.abstract:
            tokens.extend(tokenize(self.abstract))
        return tokens

    def indexed_tokens(self) -> list[str]:
        """Tokens of everything the index covers: title, abstract, descriptors."""
        tokens = self.free_text_tokens()
        for term in self.controlled_terms:
            tokens.extend(tokenize(term))
        return tokens


class Corpus:
    """Immutable, id-addressable record collection preserving load order."""

    def __init__(self, records: Iterable[BibRecord]) -> None:
        self._records = tuple(records)
        self._by_id: dict[str, BibRecord] = {}
        for rec in self._records:
            if rec.id in self._by_id:
                raise CorpusFormatError(f"duplicate record id {rec.id!r}")
            self._by_id[rec.id] = rec

    @property
    def size(self) -> int:
        return len(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[BibRecord]:
        return iter(self._records)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._by_id

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return self._records == other._records

    def get(self, doc_id: str) -> BibRecord:
        try:
            return self._by_id[doc_id]
        except KeyError:
            raise KeyError(f"unknown document id {doc_id!r}") from None


def _optional_str(obj: dict, key: str, lineno: int) -> str | None:
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise CorpusFormatError(f"line {lineno}: field {key!r} must be a string")
    return value


def _string_list(obj: dict, key: str, lineno: int) -> list[str]:
    value = obj.get(key, [])
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise CorpusFormatError(f"line {lineno}: field {key!r} must be a list of strings")
    return value


def _parse_record(obj: object, lineno: int) -> BibRecord:
    if not isinstance(obj, dict):
        raise CorpusFormatError(f"line {lineno}: record must be a JSON object")
    rid = obj.get("id")
    if not isinstance(rid, str) or not rid:
        raise CorpusFormatError(f"line {lineno}: field 'id' must be a non-empty string")
    year = obj.get("year")
    if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
        raise CorpusFormatError(f"line {lineno}: field 'year' must be an integer")
    try:
        return BibRecord(
            id=rid,
            title=_optional_str(obj, "title", lineno) or "",
            abstract=_optional_str(obj, "abstract", lineno),
            journal=_optional_str(obj, "journal", lineno),
            authors=tuple(_string_list(obj, "authors", lineno)),
            controlled_terms=tuple(_string_list(obj, "controlled_terms", lineno)),
            year=year,
            doc_type=_optional_str(obj, "doc_type", lineno) or "",
        )
    except CorpusFormatError as exc:
        raise CorpusFormatError(f"line {lineno}: {exc}") from None


def load_corpus(path) -> Corpus:
    """Load a UTF-8 JSON Lines record file.

    Rejects the whole file on the first malformed line (reported with its
    line number) or on a duplicate id (reported with both line numbers).
    """
    records: list[BibRecord] = []
    line_of: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                payload = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"line {lineno}: invalid record: {exc}") from None
            record = _parse_record(payload, lineno)
            if record.id in line_of:
                raise CorpusFormatError(
                    f"duplicate record id {record.id!r} on lines {line_of[record.id]} and {lineno}"
                )
            line_of[record.id] = lineno
            records.append(record)
    return Corpus(records)


def _record_to_dict(record: BibRecord) -> dict:
    out: dict = {"id": record.id, "title": record.title}
    if record.abstract is not None:
        out["abstract"] = record.abstract
    if record.journal is not None:
        out["journal"] = record.journal
    out["authors"] = list(record.authors)
    out["controlled_terms"] = list(record.controlled_terms)
    if record.year is not None:
        out["year"] = record.year
    out["doc_type"] = record.doc_type
    return out


def write_corpus(corpus: Corpus, path) -> None:
    """Write ``corpus`` in the JSON Lines record format (round-trip safe)."""
    with open(path, "w", encoding="utf-8") as fh:
        for record in corpus:
            fh.write(json.dumps(_record_to_dict(record), ensure_ascii=False) + "\n")
