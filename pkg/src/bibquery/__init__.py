"""Natural-language bibliographic search over a property graph.

The pipeline recognizes entity mentions with a graph-derived dictionary,
parses the controlled query language into dependency relations, selects
entity pairs, builds a validated graph query, emits it as Cypher, and
executes it against an in-memory property graph.
"""
from .benchmark import BENCHMARK_QUERIES, DEMO_QUERY, BenchReport, run_benchmark
from .cnlparser import DependencyRelation, ParseResult, parse, split_citation
from .emitter import EmittedQuery, emit
from .engine import QueryEngine
from .errors import (
    IngestError,
    InterpretationFailure,
    PipelineError,
    UnparsableQuery,
    UnsupportedQuery,
)
from .graphstore import (
    GraphEdge,
    GraphEntity,
    PropertyGraph,
    ResultRow,
    ResultSet,
    execute,
    load_dataset,
    oracle,
    read_cypher,
    save_dataset,
)
from .lexicon import (
    Dictionary,
    EntityType,
    Mention,
    Token,
    build_dictionary,
    recognize,
    tokenize,
)
from .querygraph import (
    DEFAULT_SCHEMA,
    CompileResult,
    GraphNode,
    GraphQuery,
    GraphRelation,
    Part,
    Schema,
    SchemaEdge,
    compile_query,
    load_schema,
)
from .synthetic import build_graph, generate_synthetic

__all__ = [
    "BENCHMARK_QUERIES",
    "DEFAULT_SCHEMA",
    "DEMO_QUERY",
    "BenchReport",
    "CompileResult",
    "DependencyRelation",
    "Dictionary",
    "EmittedQuery",
    "EntityType",
    "GraphEdge",
    "GraphEntity",
    "GraphNode",
    "GraphQuery",
    "GraphRelation",
    "IngestError",
    "InterpretationFailure",
    "Mention",
    "ParseResult",
    "Part",
    "PipelineError",
    "PropertyGraph",
    "QueryEngine",
    "ResultRow",
    "ResultSet",
    "Schema",
    "SchemaEdge",
    "Token",
    "UnparsableQuery",
    "UnsupportedQuery",
    "build_dictionary",
    "build_graph",
    "compile_query",
    "emit",
    "execute",
    "generate_synthetic",
    "load_dataset",
    "load_schema",
    "oracle",
    "parse",
    "read_cypher",
    "recognize",
    "run_benchmark",
    "save_dataset",
    "split_citation",
    "tokenize",
]
