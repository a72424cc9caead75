import math
import random

import pytest

from bibrank.evalkit import (
    Judgment,
    JudgmentSet,
    UndefinedPrecisionError,
    agreement_rate,
    build_pool,
    fleiss_kappa,
    load_judgments,
    macro_average,
    overlap,
    precision,
    standard_error,
)
from bibrank.index import Query, RankedEntry, RankedList
from bibrank.report import (
    evaluate_runs,
    format_report,
    load_counts,
    load_runs,
    report_from_counts,
)

COUNTS_FIXTURE = "fixtures/precision_counts.tsv"


def ranked_list(doc_ids):
    entries = tuple(
        RankedEntry(doc_id=doc_id, score=float(len(doc_ids) - i), rank=i + 1)
        for i, doc_id in enumerate(doc_ids)
    )
    return RankedList(
        query=Query(("q",)), entries=entries, provenance="baseline", total_hits=len(entries)
    )


def kappa_oracle(matrix):
    """Straight-from-definition evaluation with plain loops."""
    items = len(matrix)
    categories = len(matrix[0])
    n = sum(matrix[0])
    observed = 0.0
    for row in matrix:
        agree = 0
        for cell in row:
            agree += cell * (cell - 1)
        observed += agree / (n * (n - 1))
    observed /= items
    expected = 0.0
    for j in range(categories):
        column = 0
        for row in matrix:
            column += row[j]
        expected += (column / (items * n)) ** 2
    if expected == 1.0:
        return 1.0
    return (observed - expected) / (1 - expected)


def judgments_from(rows):
    return JudgmentSet(
        Judgment(topic_id=t, doc_id=d, assessor_id=a, relevant=bool(v)) for t, d, a, v in rows
    )


class TestBuildPool:
    def test_identical_lists(self):
        docs = [f"d{i}" for i in range(10)]
        lists = {s: ranked_list(docs) for s in ("S1", "S2", "S3", "S4")}
        assert len(build_pool(lists, 10)) == 10

    def test_disjoint_lists(self):
        lists = {
            f"S{s}": ranked_list([f"s{s}d{i}" for i in range(10)]) for s in range(4)
        }
        pool = build_pool(lists, 10)
        assert len(pool) == 40

    def test_round_robin_hides_origin(self):
        lists = {
            "A": ranked_list(["a1", "a2"]),
            "B": ranked_list(["b1", "b2"]),
        }
        assert build_pool(lists, 2) == ["a1", "b1", "a2", "b2"]

    def test_contains_every_top_n(self):
        rng = random.Random(61)
        universe = [f"d{i:03d}" for i in range(60)]
        for _ in range(50):
            n = rng.randrange(1, 12)
            lists = {
                f"S{s}": ranked_list(rng.sample(universe, k=rng.randrange(1, 20)))
                for s in range(rng.randrange(1, 5))
            }
            pool = build_pool(lists, n)
            assert len(pool) <= len(lists) * n
            assert len(pool) == len(set(pool))
            for lst in lists.values():
                for entry in lst.entries[:n]:
                    assert entry.doc_id in pool

    def test_empty_service_set_rejected(self):
        with pytest.raises(ValueError):
            build_pool({}, 10)


class TestPrecision:
    def test_aggregated_counts_topic83(self):
        rows = []
        for i in range(140):
            rows.append(("83", f"doc{i % 10}", f"a{i // 10}", 1 if i < 98 else 0))
        judgments = judgments_from(rows)
        result = precision(judgments, "83", {f"doc{i}" for i in range(10)})
        assert (result.relevant, result.not_relevant) == (98, 42)
        assert result.precision == pytest.approx(0.7000, abs=1e-9)

    def test_topic110_counts(self):
        rows = []
        for i in range(50):
            rows.append(("110", f"doc{i % 10}", f"a{i // 10}", 1 if i < 45 else 0))
        judgments = judgments_from(rows)
        result = precision(judgments, "110", {f"doc{i}" for i in range(10)})
        assert result.precision == pytest.approx(0.9000, abs=1e-9)

    def test_ignores_unjudged_and_foreign_docs(self):
        judgments = judgments_from(
            [("t", "in1", "a", 1), ("t", "out", "a", 0), ("u", "in1", "a", 0)]
        )
        result = precision(judgments, "t", {"in1", "in2"})
        assert (result.relevant, result.not_relevant) == (1, 0)

    def test_no_judgments_is_undefined_not_zero(self):
        with pytest.raises(UndefinedPrecisionError):
            precision(judgments_from([]), "t", {"d1"})


class TestMacroAverage:
    def test_single_value(self):
        assert macro_average([0.25]) == 0.25

    def test_fixture_averages(self):
        counts = load_counts(COUNTS_FIXTURE)
        expected = {"AUTH": 59.58, "BRAD": 56.89, "SOLR": 57.37, "STR": 67.57}
        for service, target in expected.items():
            values = [
                100 * r / (r + nr)
                for (_, svc), (r, nr) in counts.items()
                if svc == service
            ]
            assert len(values) == 10
            assert macro_average(values) == pytest.approx(target, abs=0.005)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            macro_average([])


class TestFleissKappa:
    def test_unanimous_with_both_categories_used(self):
        matrix = [[3, 0], [0, 3], [3, 0]]
        assert fleiss_kappa(matrix) == pytest.approx(1.0, abs=1e-12)

    def test_worked_example_versus_oracle(self):
        matrix = [[2, 0], [0, 2], [1, 1]]
        value = fleiss_kappa(matrix)
        assert value == pytest.approx(kappa_oracle(matrix), abs=1e-12)
        assert value == pytest.approx(1 / 3, abs=1e-12)

    def test_single_category_degenerate(self):
        assert fleiss_kappa([[2, 0], [2, 0]]) == 1.0

    def test_random_matrices_match_oracle(self):
        rng = random.Random(67)
        for _ in range(200):
            n = rng.randrange(2, 7)
            items = rng.randrange(1, 12)
            matrix = []
            for _ in range(items):
                yes = rng.randrange(0, n + 1)
                matrix.append([yes, n - yes])
            assert fleiss_kappa(matrix) == pytest.approx(kappa_oracle(matrix), abs=1e-12)

    def test_item_permutation_invariance(self):
        rng = random.Random(71)
        matrix = [[rng.randrange(0, 4), 0] for _ in range(8)]
        matrix = [[yes, 3 - yes] for yes, _ in matrix]
        shuffled = list(matrix)
        rng.shuffle(shuffled)
        assert fleiss_kappa(shuffled) == pytest.approx(fleiss_kappa(matrix), abs=1e-12)

    def test_category_relabeling_invariance(self):
        rng = random.Random(73)
        for _ in range(50):
            n = rng.randrange(2, 6)
            matrix = []
            for _ in range(rng.randrange(1, 10)):
                yes = rng.randrange(0, n + 1)
                matrix.append([yes, n - yes])
            swapped = [[b, a] for a, b in matrix]
            assert fleiss_kappa(swapped) == pytest.approx(fleiss_kappa(matrix), abs=1e-12)

    def test_kappa_range(self):
        rng = random.Random(79)
        for _ in range(200):
            n = rng.randrange(2, 6)
            matrix = []
            for _ in range(rng.randrange(2, 10)):
                yes = rng.randrange(0, n + 1)
                matrix.append([yes, n - yes])
            value = fleiss_kappa(matrix)
            assert -1.0 < value <= 1.0 + 1e-12

    def test_ragged_matrix_rejected(self):
        with pytest.raises(ValueError):
            fleiss_kappa([[2, 0], [1, 2]])

    def test_single_rater_rejected(self):
        with pytest.raises(ValueError):
            fleiss_kappa([[1, 0]])


class TestStandardError:
    def test_half_at_hundred(self):
        assert standard_error(0.5, 100) == pytest.approx(0.05, abs=1e-12)

    def test_topic83_shape(self):
        assert standard_error(0.7, 140) == pytest.approx(math.sqrt(0.21 / 140), abs=1e-12)
        assert standard_error(0.7, 140) == pytest.approx(0.03873, abs=1e-5)

    def test_boundaries(self):
        assert standard_error(0.0, 10) == 0.0
        assert standard_error(1.0, 10) == 0.0

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            standard_error(1.5, 10)
        with pytest.raises(ValueError):
            standard_error(0.5, 0)


class TestAgreementRate:
    def test_unanimous_everywhere(self):
        rows = [("t", f"d{i}", a, 1) for i in range(4) for a in ("x", "y", "z")]
        result = agreement_rate(judgments_from(rows))
        assert result.agreement == pytest.approx(1.0, abs=1e-12)
        assert result.perfect_matches == 4
        assert result.documents == 4

    def test_split_pairs(self):
        rows = [("t", f"d{i}", "x", 1) for i in range(3)]
        rows += [("t", f"d{i}", "y", 0) for i in range(3)]
        result = agreement_rate(judgments_from(rows))
        assert result.agreement == pytest.approx(0.0, abs=1e-12)
        assert result.perfect_matches == 0

    def test_two_against_one(self):
        rows = [("t", "d", "x", 1), ("t", "d", "y", 1), ("t", "d", "z", 0)]
        result = agreement_rate(judgments_from(rows))
        assert result.agreement == pytest.approx(1 / 3, abs=1e-12)

    def test_singly_judged_docs_excluded(self):
        rows = [("t", "d", "x", 1), ("t", "d", "y", 1), ("t", "solo", "x", 0)]
        result = agreement_rate(judgments_from(rows))
        assert result.documents == 1
        assert result.agreement == 1.0

    def test_no_pairs_anywhere_rejected(self):
        with pytest.raises(ValueError):
            agreement_rate(judgments_from([("t", "d", "x", 1)]))


class TestOverlap:
    def test_identical_sets(self):
        sets = {
            "A": {"t1": {f"d{i}" for i in range(10)}},
            "B": {"t1": {f"d{i}" for i in range(10)}},
        }
        result = overlap(sets)
        assert result.pairwise[("A", "B")] == 10
        assert result.total == 10

    def test_disjoint_sets(self):
        sets = {
            "A": {"t1": {"a1", "a2"}},
            "B": {"t1": {"b1"}},
            "C": {"t1": {"c1"}},
        }
        result = overlap(sets)
        assert all(v == 0 for v in result.pairwise.values())
        assert result.total == 0

    def test_sums_over_topics(self):
        sets = {
            "A": {"t1": {"x", "y"}, "t2": {"z"}},
            "B": {"t1": {"y"}, "t2": {"z", "w"}},
        }
        result = overlap(sets)
        assert result.pairwise[("A", "B")] == 2

    def test_single_service_rejected(self):
        with pytest.raises(ValueError):
            overlap({"A": {}})


class TestJudgmentSet:
    def test_duplicate_triple_rejected(self):
        with pytest.raises(ValueError):
            judgments_from([("t", "d", "a", 1), ("t", "d", "a", 1)])

    def test_load_judgments(self, tmp_path):
        path = tmp_path / "j.tsv"
        path.write_text("t1\td1\ta1\t1\nt1\td2\ta1\t0\n")
        judgments = load_judgments(path)
        assert len(judgments) == 2
        assert judgments.for_topic("t1")[("d1", "a1")] is True

    def test_load_rejects_bad_verdict(self, tmp_path):
        path = tmp_path / "j.tsv"
        path.write_text("t1\td1\ta1\tmaybe\n")
        with pytest.raises(ValueError, match="line 1"):
            load_judgments(path)


def synthesize_raw(counts):
    """Expand aggregate (topic, service) counts into per-assessor judgments
    over ten synthetic documents per service list."""
    judgment_rows = []
    runs = {}
    for (topic, service), (relevant, not_relevant) in sorted(counts.items()):
        docs = [f"{topic}.{service}.{i}" for i in range(10)]
        runs.setdefault(topic, {})[service] = docs
        total = relevant + not_relevant
        for position in range(total):
            assessor = f"{topic}.a{position // 10}"
            verdict = 1 if position < relevant else 0
            judgment_rows.append((topic, docs[position % 10], assessor, verdict))
    return judgments_from(judgment_rows), runs


class TestReports:
    def test_report_from_counts_matches_fixture(self):
        counts = load_counts(COUNTS_FIXTURE)
        report = report_from_counts(counts)
        assert report.services == ("AUTH", "BRAD", "SOLR", "STR")
        assert report.topics == ("83", "84", "88", "93", "96", "105", "110", "153", "166", "173")
        cell = report.cells[("83", "AUTH")]
        assert (cell.relevant, cell.not_relevant) == (98, 42)
        assert cell.precision * 100 == pytest.approx(70.00, abs=0.005)
        assert report.macro["STR"] * 100 == pytest.approx(67.57, abs=0.005)

    def test_evaluate_runs_reproduces_counts(self):
        counts = load_counts(COUNTS_FIXTURE)
        judgments, runs = synthesize_raw(counts)
        report = evaluate_runs(judgments, runs, n=10)
        for (topic, service), (relevant, not_relevant) in counts.items():
            cell = report.cells[(topic, service)]
            assert (cell.relevant, cell.not_relevant) == (relevant, not_relevant)
        assert report.macro["AUTH"] * 100 == pytest.approx(59.58, abs=0.005)
        assert report.macro["BRAD"] * 100 == pytest.approx(56.89, abs=0.005)
        assert report.macro["SOLR"] * 100 == pytest.approx(57.37, abs=0.005)
        assert report.macro["STR"] * 100 == pytest.approx(67.57, abs=0.005)
        assert report.agreement is not None
        assert report.overlap_pairs is not None

    def test_undefined_cells_stay_unaveraged(self):
        judgments = judgments_from([("t1", "t1.X.0", "a", 1)])
        runs = {"t1": {"X": ["t1.X.0"], "Y": ["t1.Y.0"]}, "t2": {"X": ["t2.X.0"]}}
        report = evaluate_runs(judgments, runs, n=10)
        assert report.cells[("t1", "Y")] is None
        assert report.cells[("t2", "X")] is None
        assert report.macro["X"] == 1.0
        assert report.macro["Y"] is None

    def test_format_contains_matrix_and_average(self):
        report = report_from_counts(load_counts(COUNTS_FIXTURE))
        text = format_report(report)
        assert "70.00" in text
        assert "59.58" in text and "67.57" in text
        assert text.splitlines()[-1].startswith("avg.")

    def test_load_runs(self, tmp_path):
        path = tmp_path / "runs.tsv"
        path.write_text("t1\tA\td1\nt1\tA\td2\nt1\tB\td9\n")
        runs = load_runs(path)
        assert runs == {"t1": {"A": ["d1", "d2"], "B": ["d9"]}}

    def test_counts_loader_rejects_bad_header(self, tmp_path):
        path = tmp_path / "c.tsv"
        path.write_text("a\tb\tc\td\n")
        with pytest.raises(ValueError):
            load_counts(path)

    def test_raw_mode_kappa_on_fully_covered_docs(self):
        rows = [
            ("t", "d1", "a1", 1),
            ("t", "d1", "a2", 1),
            ("t", "d2", "a1", 0),
            ("t", "d2", "a2", 0),
            ("t", "d3", "a1", 1),  # not judged by a2: excluded from kappa
        ]
        report = evaluate_runs(judgments_from(rows), {"t": {"X": ["d1", "d2", "d3"]}}, n=10)
        topic_kappa = report.kappa["t"]
        assert topic_kappa.raters == 2
        assert topic_kappa.documents == 2
        assert topic_kappa.coverage == pytest.approx(2 / 3, abs=1e-12)
        assert topic_kappa.kappa == pytest.approx(1.0, abs=1e-12)
