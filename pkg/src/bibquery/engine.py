"""Query engine facade: one object owning the graph, the recognition
dictionary derived from it, and the schema, exposing the operations the
service and CLI need."""
from __future__ import annotations

import time
from pathlib import Path

from .benchmark import BenchReport, run_benchmark
from .emitter import emit
from .graphstore import PropertyGraph, ResultSet, execute, load_dataset
from .lexicon import Dictionary, build_dictionary
from .models import (
    AnalyzeResponse,
    SearchResponse,
    analysis_from_compile,
    result_rows,
)
from .querygraph import CompileResult, DEFAULT_SCHEMA, Schema, compile_query, load_schema


class QueryEngine:
    """Dictionary, schema, and graph bound together; read-only after
    construction, safe to share across requests."""

    def __init__(self, graph: PropertyGraph, schema: Schema = DEFAULT_SCHEMA):
        self.graph = graph
        self.schema = schema
        self.dictionary: Dictionary = build_dictionary(graph.dictionary_records())

    @classmethod
    def from_data_dir(
        cls, directory: str | Path, schema_path: str | Path | None = None
    ) -> "QueryEngine":
        schema = DEFAULT_SCHEMA if schema_path is None else load_schema(schema_path)
        return cls(load_dataset(directory), schema=schema)

    def compile(self, query: str) -> CompileResult:
        return compile_query(query, self.dictionary, self.schema)

    def analyze(self, query: str) -> AnalyzeResponse:
        result = self.compile(query)
        return analysis_from_compile(result, emit(result.graph_query))

    def execute(self, query: str, limit: int | None = None) -> ResultSet:
        return execute(self.compile(query).graph_query, self.graph, limit=limit)

    def search(self, query: str, limit: int | None = None) -> SearchResponse:
        start = time.perf_counter()
        result = self.compile(query)
        analysis = analysis_from_compile(result, emit(result.graph_query))
        results = execute(result.graph_query, self.graph, limit=limit)
        total_ms = (time.perf_counter() - start) * 1000
        return SearchResponse(
            analysis=analysis,
            rows=result_rows(results),
            match_count=results.match_count,
            total_ms=total_ms,
        )

    def bench(self, runs: int = 1) -> BenchReport:
        return run_benchmark(self.dictionary, self.graph, self.schema, runs=runs)


__all__ = ["QueryEngine"]
