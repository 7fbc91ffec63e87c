"""Wire-format models for the HTTP service and CLI rendering.

Everything the pipeline produces is converted into these models so the
service, the CLI tables, and the browser client all read one shape.
"""
from __future__ import annotations

from pydantic import BaseModel, Field

from .benchmark import BenchReport
from .emitter import EmittedQuery
from .errors import PipelineError
from .graphstore import ResultSet
from .lexicon import Mention, Token
from .querygraph import CompileResult, GraphQuery, Part
from .cnlparser import ParseResult


class QueryRequest(BaseModel):
    query: str


class SearchRequest(BaseModel):
    query: str
    limit: int | None = Field(default=None, ge=1)


class MentionModel(BaseModel):
    start: int
    end: int
    surface: str
    etype: str
    is_class: bool
    canonical: str | None
    distance: int


class TokenModel(BaseModel):
    index: int
    text: str
    is_entity: bool


class DependencyRowModel(BaseModel):
    order: int
    subject: str
    object: str
    code: str
    name: str


class DependencyTableModel(BaseModel):
    part: str
    rows: list[DependencyRowModel]


class NodeModel(BaseModel):
    named_entity: str
    instance: str
    etype: str
    part: str
    answer: bool
    constraint: str | None


class RelationModel(BaseModel):
    source: str
    label: str
    target: str


class PipelineErrorModel(BaseModel):
    stage: str
    message: str
    token: str | None


class AnalyzeResponse(BaseModel):
    query: str
    mentions: list[MentionModel]
    tokens: list[TokenModel]
    pivot: str | None
    tables: list[DependencyTableModel]
    nodes: list[NodeModel]
    relations: list[RelationModel]
    emitted: str | None
    answer_instance: str | None
    timings_ms: dict[str, float]
    error: PipelineErrorModel | None = None


class ResultRowModel(BaseModel):
    id: int
    name: str
    etype: str
    year: int | None


class SearchResponse(BaseModel):
    analysis: AnalyzeResponse
    rows: list[ResultRowModel]
    match_count: int
    total_ms: float


class HealthResponse(BaseModel):
    status: str
    entities: int
    edges: int
    fingerprint: str


class BenchRowModel(BaseModel):
    query: str
    entity_count: int
    interpret_ms: float
    execute_ms: float
    total_ms: float
    row_count: int
    error: str | None


class BenchReportModel(BaseModel):
    runs: int
    rows: list[BenchRowModel]
    group_means: dict[int, float]


def mention_model(mention: Mention) -> MentionModel:
    return MentionModel(
        start=mention.start,
        end=mention.end,
        surface=mention.surface,
        etype=mention.entry.etype.value,
        is_class=mention.entry.is_class,
        canonical=mention.entry.canonical,
        distance=mention.distance,
    )


def token_model(token: Token) -> TokenModel:
    return TokenModel(index=token.index, text=token.text, is_entity=token.mention is not None)


def dependency_table(part: Part, result: ParseResult) -> DependencyTableModel:
    return DependencyTableModel(
        part=part.value,
        rows=[
            DependencyRowModel(order=order, subject=subject, object=obj, code=code, name=name)
            for order, subject, obj, code, name in result.table()
        ],
    )


def node_models(query: GraphQuery) -> list[NodeModel]:
    return [
        NodeModel(
            named_entity=node.named_entity,
            instance=node.instance,
            etype=node.etype.value,
            part=node.part.value,
            answer=node.answer,
            constraint=node.constraint,
        )
        for node in query.nodes
    ]


def relation_models(query: GraphQuery) -> list[RelationModel]:
    return [
        RelationModel(source=rel.source.instance, label=rel.label, target=rel.target.instance)
        for rel in query.relations
    ]


def analysis_from_compile(result: CompileResult, emitted: EmittedQuery) -> AnalyzeResponse:
    return AnalyzeResponse(
        query=result.query,
        mentions=[mention_model(m) for m in result.mentions],
        tokens=[token_model(t) for t in result.tokens],
        pivot=result.pivot.text if result.pivot is not None else None,
        tables=[dependency_table(part, parse) for part, parse in result.parses],
        nodes=node_models(result.graph_query),
        relations=relation_models(result.graph_query),
        emitted=emitted.text,
        answer_instance=result.graph_query.answer_node.instance,
        timings_ms=result.timings_ms,
    )


def analysis_from_error(query: str, err: PipelineError) -> AnalyzeResponse:
    """Everything the pipeline finished before failing, plus the error."""
    artifacts = err.artifacts
    pivot = artifacts.get("pivot")
    return AnalyzeResponse(
        query=query,
        mentions=[mention_model(m) for m in artifacts.get("mentions", [])],
        tokens=[token_model(t) for t in artifacts.get("tokens", [])],
        pivot=pivot.text if pivot is not None else None,
        tables=[dependency_table(part, parse) for part, parse in artifacts.get("parses", [])],
        nodes=[],
        relations=[],
        emitted=None,
        answer_instance=None,
        timings_ms={},
        error=PipelineErrorModel(stage=err.stage, message=str(err), token=err.token),
    )


def result_rows(results: ResultSet) -> list[ResultRowModel]:
    return [
        ResultRowModel(
            id=row.answer.ident,
            name=row.answer.name,
            etype=row.answer.etype.value,
            year=row.answer.year,
        )
        for row in results.rows
    ]


def bench_report_model(report: BenchReport) -> BenchReportModel:
    return BenchReportModel(
        runs=report.runs,
        rows=[
            BenchRowModel(
                query=t.query,
                entity_count=t.entity_count,
                interpret_ms=t.interpret_ms,
                execute_ms=t.execute_ms,
                total_ms=t.total_ms,
                row_count=t.row_count,
                error=t.error,
            )
            for t in report.timings
        ],
        group_means=report.group_means,
    )


__all__ = [
    "AnalyzeResponse",
    "BenchReportModel",
    "BenchRowModel",
    "DependencyRowModel",
    "DependencyTableModel",
    "HealthResponse",
    "MentionModel",
    "NodeModel",
    "PipelineErrorModel",
    "QueryRequest",
    "RelationModel",
    "ResultRowModel",
    "SearchRequest",
    "SearchResponse",
    "TokenModel",
    "analysis_from_compile",
    "analysis_from_error",
    "bench_report_model",
    "dependency_table",
    "mention_model",
    "node_models",
    "relation_models",
    "result_rows",
    "token_model",
]
