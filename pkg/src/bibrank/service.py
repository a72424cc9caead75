"""HTTP service: search, term recommendation, and health endpoints.

Requests run against an immutable snapshot held on the application state;
swapping the snapshot reference is atomic, so concurrent readers never see
a partial reload.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query as QueryParam
from fastapi.middleware.cors import CORSMiddleware

from .engine import RERANK_MODES, SearchRequest, Snapshot, execute_search
from .termrec import recommend


def create_app(snapshot: Snapshot, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="bibrank")
    app.state.snapshot = snapshot
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "documents": app.state.snapshot.index.n_docs}

    @app.get("/search")
    def search_endpoint(
        q: str = QueryParam(""),
        expand: bool = False,
        k_expand: int = QueryParam(4, ge=0),
        rerank: str = "none",
        k: int = QueryParam(10, ge=1),
        require_abstract: bool = False,
    ) -> dict:
        if rerank not in RERANK_MODES:
            raise HTTPException(
                status_code=400,
                detail=f"rerank must be one of {', '.join(RERANK_MODES)}",
            )
        request = SearchRequest(
            q=q,
            expand=expand,
            k_expand=k_expand,
            rerank=rerank,
            k=k,
            require_abstract=require_abstract,
        )
        try:
            return execute_search(app.state.snapshot, request)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None

    @app.get("/recommend")
    def recommend_endpoint(
        term: str = QueryParam(...),
        k: int = QueryParam(10, ge=1),
    ) -> dict:
        results = recommend(app.state.snapshot.model, term, k)
        return {
            "term": term,
            "recommendations": [
                {"term": descriptor, "score": score} for descriptor, score in results
            ],
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        directory = Path(static_dir)
        if not directory.is_dir():
            raise ValueError(f"static directory not found: {static_dir}")
        app.mount("/", StaticFiles(directory=directory, html=True), name="static")

    return app
