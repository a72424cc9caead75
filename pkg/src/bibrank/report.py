"""Evaluation report assembly and formatting.

Two input shapes produce the same per-topic, per-service precision matrix:

* aggregate counts (topic, service, relevant, not_relevant), e.g. the
  published-counts fixture shipped under fixtures/, and
* raw data: a judgment file plus a runs file listing each service's ranked
  documents per topic, which additionally yields kappa, agreement, and
  overlap sections.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .evalkit import (
    JudgmentSet,
    UndefinedPrecisionError,
    agreement_rate,
    fleiss_kappa,
    macro_average,
    overlap,
    precision,
    standard_error,
)

COUNTS_HEADER = ("topic", "service", "relevant", "not_relevant")


@dataclass(frozen=True)
class Cell:
    """One (topic, service) slot of the precision matrix."""

    relevant: int
    not_relevant: int

    @property
    def judged(self) -> int:
        return self.relevant + self.not_relevant

    @property
    def precision(self) -> float:
        return self.relevant / self.judged

    @property
    def se(self) -> float:
        return standard_error(self.precision, self.judged)


@dataclass(frozen=True)
class TopicKappa:
    kappa: float | None
    raters: int
    documents: int
    coverage: float


@dataclass
class EvalReport:
    services: tuple[str, ...]
    topics: tuple[str, ...]
    cells: dict[tuple[str, str], Cell | None] = field(default_factory=dict)
    macro: dict[str, float | None] = field(default_factory=dict)
    kappa: dict[str, TopicKappa] | None = None
    agreement: tuple[float, int, int] | None = None
    overlap_pairs: dict[tuple[str, str], int] | None = None
    overlap_total: int | None = None

    def to_dict(self) -> dict:
        out: dict = {
            "services": list(self.services),
            "topics": list(self.topics),
            "precision": {
                topic: {
                    service: (
                        None
                        if (cell := self.cells.get((topic, service))) is None
                        else {
                            "relevant": cell.relevant,
                            "not_relevant": cell.not_relevant,
                            "precision": cell.precision,
                            "se": cell.se,
                        }
                    )
                    for service in self.services
                }
                for topic in self.topics
            },
            "macro_average": dict(self.macro),
        }
        if self.kappa is not None:
            out["kappa"] = {
                topic: {
                    "kappa": cell.kappa,
                    "raters": cell.raters,
                    "documents": cell.documents,
                    "coverage": cell.coverage,
                }
                for topic, cell in self.kappa.items()
            }
        if self.agreement is not None:
            rate, perfect, documents = self.agreement
            out["agreement"] = {
                "rate": rate,
                "perfect_matches": perfect,
                "documents": documents,
            }
        if self.overlap_pairs is not None:
            out["overlap"] = {
                "pairs": {f"{a}/{b}": v for (a, b), v in self.overlap_pairs.items()},
                "total": self.overlap_total,
            }
        return out


def _topic_sort_key(topic: str):
    return (0, int(topic)) if topic.isdigit() else (1, topic)


def load_counts(path) -> dict[tuple[str, str], tuple[int, int]]:
    """Read the aggregate-counts fixture: TSV with a header row
    topic/service/relevant/not_relevant."""
    counts: dict[tuple[str, str], tuple[int, int]] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        if tuple(header) != COUNTS_HEADER:
            raise ValueError(f"expected header {'/'.join(COUNTS_HEADER)}")
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 4:
                raise ValueError(f"line {lineno}: expected 4 tab-separated fields")
            topic, service, relevant, not_relevant = fields
            key = (topic, service)
            if key in counts:
                raise ValueError(f"line {lineno}: duplicate topic/service pair")
            counts[key] = (int(relevant), int(not_relevant))
    return counts


def load_runs(path) -> dict[str, dict[str, list[str]]]:
    """Read a runs file: TSV lines topic, service, doc id, in rank order."""
    runs: dict[str, dict[str, list[str]]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 3:
                raise ValueError(f"line {lineno}: expected 3 tab-separated fields")
            topic, service, doc_id = fields
            runs.setdefault(topic, {}).setdefault(service, []).append(doc_id)
    return runs


def _finish(report: EvalReport) -> EvalReport:
    for service in report.services:
        values = [
            cell.precision
            for topic in report.topics
            if (cell := report.cells.get((topic, service))) is not None
        ]
        report.macro[service] = macro_average(values) if values else None
    return report


def report_from_counts(counts: dict[tuple[str, str], tuple[int, int]]) -> EvalReport:
    """Precision matrix and macro averages from aggregate judgment counts."""
    topics = tuple(sorted({t for t, _ in counts}, key=_topic_sort_key))
    services = tuple(sorted({s for _, s in counts}))
    report = EvalReport(services=services, topics=topics)
    for key, (relevant, not_relevant) in counts.items():
        report.cells[key] = (
            Cell(relevant, not_relevant) if relevant + not_relevant > 0 else None
        )
    return _finish(report)


def _topic_kappa(judgments: JudgmentSet, topic: str) -> TopicKappa:
    """Kappa over the documents judged by every assessor of the topic.

    Assessors choose their documents freely, so the judgment matrix is
    ragged; kappa needs a constant rater count and is therefore computed on
    the fully covered subset, with the coverage fraction reported.
    """
    per_doc: dict[str, dict[str, bool]] = {}
    for (doc_id, assessor), verdict in judgments.for_topic(topic).items():
        per_doc.setdefault(doc_id, {})[assessor] = verdict
    assessors = judgments.assessors(topic)
    n = len(assessors)
    complete = [
        verdicts for verdicts in per_doc.values() if len(verdicts) == n
    ]
    coverage = len(complete) / len(per_doc) if per_doc else 0.0
    if n < 2 or not complete:
        return TopicKappa(kappa=None, raters=n, documents=len(complete), coverage=coverage)
    matrix = []
    for verdicts in complete:
        yes = sum(verdicts.values())
        matrix.append([yes, n - yes])
    return TopicKappa(
        kappa=fleiss_kappa(matrix),
        raters=n,
        documents=len(complete),
        coverage=coverage,
    )


def _relevant_docs(
    judgments: JudgmentSet, topic: str, docs: list[str]
) -> set[str]:
    """Documents of a top list judged relevant by a strict majority."""
    tally: dict[str, list[int]] = {doc: [0, 0] for doc in docs}
    for (doc_id, _assessor), verdict in judgments.for_topic(topic).items():
        if doc_id in tally:
            tally[doc_id][0 if verdict else 1] += 1
    return {doc for doc, (yes, no) in tally.items() if yes > no}


def evaluate_runs(
    judgments: JudgmentSet, runs: dict[str, dict[str, list[str]]], n: int = 10
) -> EvalReport:
    """Full report from raw judgments and per-service ranked document lists."""
    topics = tuple(sorted(runs, key=_topic_sort_key))
    services = tuple(sorted({s for per_topic in runs.values() for s in per_topic}))
    report = EvalReport(services=services, topics=topics)
    relevant_sets: dict[str, dict[str, set[str]]] = {s: {} for s in services}
    for topic in topics:
        for service in services:
            docs = runs[topic].get(service, [])[:n]
            if not docs:
                report.cells[(topic, service)] = None
                continue
            try:
                result = precision(judgments, topic, docs)
                report.cells[(topic, service)] = Cell(result.relevant, result.not_relevant)
            except UndefinedPrecisionError:
                report.cells[(topic, service)] = None
            relevant_sets[service][topic] = _relevant_docs(judgments, topic, docs)
    report.kappa = {topic: _topic_kappa(judgments, topic) for topic in topics}
    try:
        rate = agreement_rate(judgments)
        report.agreement = (rate.agreement, rate.perfect_matches, rate.documents)
    except ValueError:
        report.agreement = None
    if len(services) >= 2:
        result = overlap(relevant_sets)
        report.overlap_pairs = result.pairwise
        report.overlap_total = result.total
    return _finish(report)


def format_report(report: EvalReport) -> str:
    """Plain-text matrix: one topic per row, four columns per service
    (relevant, not relevant, precision in percent, standard error in percent),
    then the macro-average row."""
    lines = []
    header = ["topic".ljust(8)]
    for service in report.services:
        header.append(f"{service:<8}{'r':>5}{'nr':>5}{'P%':>8}{'SE%':>7}")
    lines.append("  ".join(header))
    for topic in report.topics:
        row = [topic.ljust(8)]
        for service in report.services:
            cell = report.cells.get((topic, service))
            if cell is None:
                row.append(f"{'':8}{'-':>5}{'-':>5}{'-':>8}{'-':>7}")
            else:
                row.append(
                    f"{'':8}{cell.relevant:>5}{cell.not_relevant:>5}"
                    f"{cell.precision * 100:>8.2f}{cell.se * 100:>7.2f}"
                )
        lines.append("  ".join(row))
    avg_row = ["avg.".ljust(8)]
    for service in report.services:
        value = report.macro.get(service)
        rendered = "-" if value is None else f"{value * 100:.2f}"
        avg_row.append(f"{'':8}{'':>5}{'':>5}{rendered:>8}{'':>7}")
    lines.append("  ".join(avg_row))

    if report.kappa is not None:
        lines.append("")
        lines.append("kappa per topic (on documents judged by every assessor of the topic)")
        for topic in report.topics:
            cell = report.kappa[topic]
            rendered = "-" if cell.kappa is None else f"{cell.kappa:.4f}"
            lines.append(
                f"  {topic:<8} kappa={rendered:<8} raters={cell.raters}"
                f" documents={cell.documents} coverage={cell.coverage:.2f}"
            )
    if report.agreement is not None:
        rate, perfect, documents = report.agreement
        lines.append("")
        lines.append(
            f"pairwise agreement: {rate * 100:.1f}% over {documents} documents;"
            f" {perfect} perfect matches"
        )
    if report.overlap_pairs is not None:
        lines.append("")
        lines.append("overlap of relevant top lists (documents shared per service pair)")
        for (a, b), value in sorted(report.overlap_pairs.items()):
            lines.append(f"  {a} / {b}: {value}")
        lines.append(f"  total: {report.overlap_total}")
    return "\n".join(lines)


def write_plot_data(report: EvalReport, path) -> None:
    """Per-topic precision and standard error as proportions, for plotting."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("topic\tservice\tprecision\tse\n")
        for topic in report.topics:
            for service in report.services:
                cell = report.cells.get((topic, service))
                if cell is None:
                    continue
                fh.write(f"{topic}\t{service}\t{cell.precision!r}\t{cell.se!r}\n")


def write_json(report: EvalReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, ensure_ascii=False, indent=2, sort_keys=True)
        fh.write("\n")
