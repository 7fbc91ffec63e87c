"""HTTP service over the query engine.

POST /analyze runs the pipeline without touching the graph; POST /search
adds execution; GET /schema and GET /health describe the deployment.
Pipeline failures return 422 with every stage that completed, so clients
can still render partial analyses.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .engine import QueryEngine
from .errors import PipelineError
from .models import (
    AnalyzeResponse,
    HealthResponse,
    QueryRequest,
    SearchRequest,
    SearchResponse,
    analysis_from_error,
)


def create_app(engine: QueryEngine, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="bibquery", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def pipeline_failure(query: str, err: PipelineError) -> JSONResponse:
        payload = analysis_from_error(query, err)
        return JSONResponse(status_code=422, content=payload.model_dump())

    @app.post("/analyze", response_model=AnalyzeResponse, responses={422: {"model": AnalyzeResponse}})
    def analyze(request: QueryRequest):
        try:
            return engine.analyze(request.query)
        except PipelineError as err:
            return pipeline_failure(request.query, err)

    @app.post("/search", response_model=SearchResponse, responses={422: {"model": AnalyzeResponse}})
    def search(request: SearchRequest):
        try:
            return engine.search(request.query, limit=request.limit)
        except PipelineError as err:
            return pipeline_failure(request.query, err)

    @app.get("/schema")
    def schema() -> dict:
        return engine.schema.to_dict()

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(
            status="ok",
            entities=engine.graph.entity_count,
            edges=engine.graph.edge_count,
            fingerprint=engine.graph.fingerprint(),
        )

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")
    return app


__all__ = ["create_app"]
