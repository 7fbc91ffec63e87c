"""Benchmark query set and timing harness.

Forty queries in four groups of ten by named-entity count (2 through 5).
Timings separate interpretation (compile + emit) from execution; group
means skip queries whose interpretation failed.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from statistics import mean

from .emitter import emit
from .errors import PipelineError
from .graphstore import PropertyGraph, execute
from .lexicon import Dictionary
from .querygraph import DEFAULT_SCHEMA, Schema, compile_query

BENCHMARK_QUERIES: tuple[str, ...] = (
    "Papers by Gerard Salton",
    "Michael Lawrence's papers",
    "Papers that were written by Sangjun Lee",
    "Papers about ontology",
    "Authors of Automatic text structuring experiments",
    "Papers that were cited by Energy-Aware and Time-Critical Geo-Routing in Wireless Sensor Networks",
    "Terms of Opacity generalised to transition systems",
    "Organization of Johann Eder",
    "Sources that published The Effect of Faults on Network Expansions",
    "Papers that were published in Theoretical Computer Science",
    "Papers about classification and DNA",
    "Papers that were written by John R. Mick and published in ACM SIGMICRO Newsletter",
    "Papers cites papers that were written by Braham Barkat",
    "Papers about modulation which were published in Neural Networks",
    "Authors of University713 who wrote A control word model for detecting conflicts between microoperations",
    "Sources that published Zesheng Chen's papers",
    "Authors whose papers were published in AI Communications",
    "Authors who wrote papers that were about simulation",
    "Terms of Junghyun Nam's papers",
    "Organizations of authors of A New Quadtree Decomposition Reconstruction Methods",
    "Papers about survey, semantic, and retrieval",
    "Authors of papers that were cited by papers that were published in Decision Support Systems",
    "Papers that cite papers that were written by Rainer Engelke and published in Microsystem Technologies",
    "Nina Yevtushenko's papers that were cited by papers that were written by Sergey Buffalov",
    "Sources that published papers about genome and mining",
    "Terms of Rafae Bhatti's papers that were published in Communications of the ACM",
    "Sources that published Tomasz Jurdzinski's papers which are about automata",
    "Terms of papers that were written by authors at University123",
    "Organizations of authors whose papers were published in Journal of Multivariate Analysis",
    "Authors who are affiliated with University007 and wrote papers about clustering",
    "Papers about classification, which were cited by Asoke K. Nandi 's papers that had been presented in Pattern Recognition",
    "Authors of papers that were cited by papers that were written by Changqiu Jin and published in Journal of Computational Physics",
    "Terms of papers that were cited by papers about kernel and regression",
    "Sources that published papers cited papers about middleware and embedded",
    "Organizations of authors whose papers were cited by papers that were published in Journal of Robotic Systems",
    "Organizations of authors who wrote papers on similarity and bayesian",
    "Papers about bayesian and electron which were written by authors at University170",
    "Sources of papers, which were about eigenvalue and written by authors at University40",
    "Authors at University899, who wrote papers that were about classifier, which were published in Applied Intelligence",
    "Terms of papers that were published in Cybernetics and Systems Analysis and written by authors at University362",
)

# The interface demo query; the synthetic dataset seeds it to return
# exactly three papers.
DEMO_QUERY = BENCHMARK_QUERIES[30]


@dataclass(frozen=True)
class QueryTiming:
    query: str
    entity_count: int
    interpret_ms: float
    execute_ms: float
    row_count: int
    error: str | None = None

    @property
    def total_ms(self) -> float:
        return self.interpret_ms + self.execute_ms

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class BenchReport:
    runs: int
    timings: tuple[QueryTiming, ...]

    @property
    def group_means(self) -> dict[int, float]:
        groups: dict[int, list[float]] = {}
        for timing in self.timings:
            if timing.ok:
                groups.setdefault(timing.entity_count, []).append(timing.total_ms)
        return {count: mean(values) for count, values in sorted(groups.items())}

    @property
    def failures(self) -> list[QueryTiming]:
        return [t for t in self.timings if not t.ok]


def time_query(
    query: str,
    dictionary: Dictionary,
    graph: PropertyGraph,
    schema: Schema = DEFAULT_SCHEMA,
) -> QueryTiming:
    start = time.perf_counter()
    try:
        compiled = compile_query(query, dictionary, schema)
        emit(compiled.graph_query)
    except PipelineError as err:
        elapsed = (time.perf_counter() - start) * 1000
        mentions = err.artifacts.get("mentions") or []
        return QueryTiming(
            query=query,
            entity_count=len(mentions),
            interpret_ms=elapsed,
            execute_ms=0.0,
            row_count=0,
            error=str(err),
        )
    interpret_ms = (time.perf_counter() - start) * 1000
    start = time.perf_counter()
    rows = execute(compiled.graph_query, graph)
    execute_ms = (time.perf_counter() - start) * 1000
    return QueryTiming(
        query=query,
        entity_count=len(compiled.mentions),
        interpret_ms=interpret_ms,
        execute_ms=execute_ms,
        row_count=len(rows),
    )


def run_benchmark(
    dictionary: Dictionary,
    graph: PropertyGraph,
    schema: Schema = DEFAULT_SCHEMA,
    runs: int = 1,
    queries: tuple[str, ...] = BENCHMARK_QUERIES,
) -> BenchReport:
    """Time each query `runs` times and keep per-query averages."""
    if runs < 1:
        raise ValueError("runs must be at least 1")
    averaged: list[QueryTiming] = []
    for query in queries:
        samples = [time_query(query, dictionary, graph, schema) for _ in range(runs)]
        first = samples[0]
        averaged.append(QueryTiming(
            query=query,
            entity_count=first.entity_count,
            interpret_ms=mean(s.interpret_ms for s in samples),
            execute_ms=mean(s.execute_ms for s in samples),
            row_count=first.row_count,
            error=first.error,
        ))
    return BenchReport(runs=runs, timings=tuple(averaged))


__all__ = [
    "BENCHMARK_QUERIES",
    "BenchReport",
    "DEMO_QUERY",
    "QueryTiming",
    "run_benchmark",
    "time_query",
]
