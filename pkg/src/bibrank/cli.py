"""Command line interface: index, search, recommend, eval, serve."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .corpus import CorpusFormatError, load_corpus
from .engine import (
    RERANK_MODES,
    SearchRequest,
    Snapshot,
    empty_model,
    execute_search,
    load_snapshot,
)
from .evalkit import load_judgments
from .index import build_index, load_index, save_index
from .report import (
    evaluate_runs,
    format_report,
    load_counts,
    load_runs,
    report_from_counts,
    write_json,
    write_plot_data,
)
from .termrec import build_association_model, load_model, recommend, save_model

INDEX_FILE = "index.json"
MODEL_FILE = "model.tsv"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bibrank",
        description="Scholarly search with query expansion, journal and author-centrality re-ranking, and an evaluation toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="build and persist index and association model")
    p_index.add_argument("corpus", help="record file (JSON Lines)")
    p_index.add_argument("out", help="output directory")
    p_index.add_argument("--min-df", type=int, default=2,
                         help="minimum document frequency for recommender terms")

    p_search = sub.add_parser("search", help="run a query and print a ranked table")
    p_search.add_argument("corpus", help="record file (JSON Lines)")
    p_search.add_argument("query", nargs="+", help="query terms")
    p_search.add_argument("--expand", action="store_true", help="add recommended descriptors")
    p_search.add_argument("--k-expand", type=int, default=4)
    p_search.add_argument("--rerank", choices=RERANK_MODES, default="none")
    p_search.add_argument("-k", type=int, default=10, help="result page size")
    p_search.add_argument("--require-abstract", action="store_true")
    p_search.add_argument("--index-dir", help="directory written by 'index' (skips rebuilding)")
    p_search.add_argument("--min-df", type=int, default=2)

    p_rec = sub.add_parser("recommend", help="print descriptors associated with a term")
    p_rec.add_argument("corpus", help="record file (JSON Lines)")
    p_rec.add_argument("term")
    p_rec.add_argument("-k", type=int, default=10)
    p_rec.add_argument("--index-dir", help="directory written by 'index'")
    p_rec.add_argument("--min-df", type=int, default=2)

    p_eval = sub.add_parser("eval", help="precision/agreement/overlap report")
    p_eval.add_argument("judgments", nargs="?", help="judgment file (topic, doc, assessor, verdict)")
    p_eval.add_argument("runs", nargs="?", help="runs file (topic, service, doc)")
    p_eval.add_argument("--counts", help="aggregate counts file (topic, service, relevant, not_relevant)")
    p_eval.add_argument("-n", type=int, default=10, help="top-n cutoff per service list")
    p_eval.add_argument("--json-out", help="write the report as JSON to this path")
    p_eval.add_argument("--plot-out", help="write per-topic precision/SE data to this path")

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("corpus", nargs="?", default=os.environ.get("BIBRANK_CORPUS"),
                         help="record file (or env BIBRANK_CORPUS)")
    p_serve.add_argument("--model", default=os.environ.get("BIBRANK_MODEL"),
                         help="persisted association model (or env BIBRANK_MODEL)")
    p_serve.add_argument("--host", default=os.environ.get("BIBRANK_HOST", "127.0.0.1"))
    p_serve.add_argument("--port", type=int, default=int(os.environ.get("BIBRANK_PORT", "8000")))
    p_serve.add_argument("--static-dir", default=os.environ.get("BIBRANK_STATIC"),
                         help="directory with the web frontend to serve at /")
    p_serve.add_argument("--min-df", type=int, default=2)
    return parser


def _snapshot_from_args(args) -> Snapshot:
    if getattr(args, "index_dir", None):
        corpus = load_corpus(args.corpus)
        index = load_index(Path(args.index_dir) / INDEX_FILE)
        model = load_model(Path(args.index_dir) / MODEL_FILE)
        return Snapshot(corpus=corpus, index=index, model=model)
    return load_snapshot(args.corpus, min_df=args.min_df)


def _cmd_index(args) -> int:
    corpus = load_corpus(args.corpus)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    index = build_index(corpus)
    save_index(index, out / INDEX_FILE)
    try:
        model = build_association_model(corpus, min_df=args.min_df)
    except ValueError:
        model = empty_model()
    save_model(model, out / MODEL_FILE)
    print(
        f"indexed {corpus.size} records, {len(index.postings)} terms, "
        f"{len(model.free_terms)} recommender terms -> {out}"
    )
    return 0


def _cmd_search(args) -> int:
    snapshot = _snapshot_from_args(args)
    request = SearchRequest(
        q=" ".join(args.query),
        expand=args.expand,
        k_expand=args.k_expand,
        rerank=args.rerank,
        k=args.k,
        require_abstract=args.require_abstract,
    )
    response = execute_search(snapshot, request)
    print(f"total hits: {response['total_hits']}  provenance: {response['provenance']}")
    if response["expansion_terms"]:
        print("expanded with: " + ", ".join(response["expansion_terms"]))
    for entry in response["entries"]:
        year = entry["year"] if entry["year"] is not None else "-"
        journal = entry["journal"] or "-"
        authors = "; ".join(entry["authors"]) or "-"
        print(
            f"{entry['rank']:>3}. [{entry['score']:.4f}] {entry['id']}  "
            f"{entry['title']} ({year})  {journal}  {authors}"
        )
    return 0


def _cmd_recommend(args) -> int:
    if args.index_dir:
        model = load_model(Path(args.index_dir) / MODEL_FILE)
    else:
        corpus = load_corpus(args.corpus)
        try:
            model = build_association_model(corpus, min_df=args.min_df)
        except ValueError:
            model = empty_model()
    for term, score in recommend(model, args.term, args.k):
        print(f"{term}\t{score:.6f}")
    return 0


def _cmd_eval(args) -> int:
    if args.counts:
        report = report_from_counts(load_counts(args.counts))
    elif args.judgments and args.runs:
        judgments = load_judgments(args.judgments)
        runs = load_runs(args.runs)
        report = evaluate_runs(judgments, runs, n=args.n)
    else:
        raise ValueError("eval needs either --counts FILE or a judgments file and a runs file")
    print(format_report(report))
    if args.json_out:
        write_json(report, args.json_out)
    if args.plot_out:
        write_plot_data(report, args.plot_out)
    return 0


def _cmd_serve(args) -> int:
    if not args.corpus:
        raise ValueError("serve needs a corpus path (argument or BIBRANK_CORPUS)")
    import uvicorn

    from .service import create_app

    snapshot = load_snapshot(args.corpus, model_path=args.model, min_df=args.min_df)
    app = create_app(snapshot, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "index": _cmd_index,
    "search": _cmd_search,
    "recommend": _cmd_recommend,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CorpusFormatError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
