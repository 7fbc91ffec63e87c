"""Graph-query construction: from dependency relations to a typed,
schema-conformant query graph with one answer node.

The stages, in order: select entity pairs from the dependency relations,
pick the answer entity, turn mentions into typed nodes, repair
connectedness against the schema, orient every pair along a schema edge,
and, for citation queries, bridge the two parts with a citation edge.
"""
from __future__ import annotations

import json
import re
import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .cnlparser import ParseResult, QueryParts, parse, split_citation
from .errors import InterpretationFailure, PipelineError, UnparsableQuery, UnsupportedQuery
from .lexicon import Dictionary, EntityType, Mention, Token, recognize, tokenize

# ---------------------------------------------------------------------------
# Schema
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SchemaEdge:
    label: str
    source: EntityType
    target: EntityType


@dataclass
class Schema:
    """Directed edge types over the entity types.

    At most one edge type may exist per unordered type pair, which is what
    makes direction repair unambiguous.
    """

    edges: tuple[SchemaEdge, ...]
    _pair_index: dict[frozenset, SchemaEdge] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._pair_index = {}
        for edge in self.edges:
            key = frozenset((edge.source, edge.target))
            if key in self._pair_index:
                raise ValueError(
                    f"schema has two edge types for {edge.source.value}-{edge.target.value}"
                )
            self._pair_index[key] = edge

    @property
    def node_types(self) -> list[EntityType]:
        seen: dict[EntityType, None] = {}
        for edge in self.edges:
            seen.setdefault(edge.source)
            seen.setdefault(edge.target)
        return list(seen)

    @property
    def labels(self) -> set[str]:
        return {edge.label for edge in self.edges}

    def edge_for_label(self, label: str) -> SchemaEdge | None:
        return next((e for e in self.edges if e.label == label), None)

    def edge_between(self, a: EntityType, b: EntityType) -> tuple[SchemaEdge, bool] | None:
        """The edge type joining two entity types, plus whether (a, b) runs
        against its declared direction."""
        edge = self._pair_index.get(frozenset((a, b)))
        if edge is None:
            return None
        flipped = not (edge.source == a and edge.target == b)
        return edge, flipped

    def citation_edge(self) -> SchemaEdge | None:
        return next((e for e in self.edges if e.source == e.target), None)

    def shortest_path(self, a: EntityType, b: EntityType) -> list[EntityType] | None:
        """Breadth-first shortest type path; ties resolve by edge
        declaration order, so the result is unique."""
        if a == b:
            return [a]
        parents: dict[EntityType, EntityType] = {a: a}
        queue: deque[EntityType] = deque([a])
        while queue:
            current = queue.popleft()
            for neighbor in self._neighbors(current):
                if neighbor in parents:
                    continue
                parents[neighbor] = current
                if neighbor == b:
                    path = [b]
                    while path[-1] != a:
                        path.append(parents[path[-1]])
                    return list(reversed(path))
                queue.append(neighbor)
        return None

    def _neighbors(self, t: EntityType) -> Iterable[EntityType]:
        for edge in self.edges:
            if edge.source == t and edge.target != t:
                yield edge.target
            elif edge.target == t and edge.source != t:
                yield edge.source

    def to_dict(self) -> dict:
        return {
            "node_types": [t.value for t in self.node_types],
            "edges": [
                {"label": e.label, "source": e.source.value, "target": e.target.value}
                for e in self.edges
            ],
        }


DEFAULT_SCHEMA = Schema(edges=(
    SchemaEdge("WRITES", EntityType.AUTHOR, EntityType.PAPER),
    SchemaEdge("CITES", EntityType.PAPER, EntityType.PAPER),
    SchemaEdge("PUBLISHES", EntityType.SOURCE, EntityType.PAPER),
    SchemaEdge("HAS_TERM", EntityType.PAPER, EntityType.TERM),
    SchemaEdge("AFFILIATED_WITH", EntityType.AUTHOR, EntityType.ORGANIZATION),
))


def schema_from_dict(data: dict) -> Schema:
    edges = tuple(
        SchemaEdge(e["label"], EntityType(e["source"]), EntityType(e["target"]))
        for e in data["edges"]
    )
    if not edges:
        raise ValueError("schema declares no edges")
    return Schema(edges=edges)


def load_schema(path: str | Path) -> Schema:
    with open(path, encoding="utf-8") as handle:
        return schema_from_dict(json.load(handle))


# ---------------------------------------------------------------------------
# Query graph
# ---------------------------------------------------------------------------


class Part(str, Enum):
    MAIN = "main"
    CITED = "cited"
    CITING = "citing"

    @property
    def prefix(self) -> str:
        return "" if self is Part.MAIN else f"{self.value}_"


@dataclass(eq=False)
class GraphNode:
    etype: EntityType
    part: Part
    is_class: bool
    named_entity: str
    answer: bool = False
    constraint: str | None = None
    mention: Mention | None = None
    instance: str = ""


@dataclass(eq=False)
class GraphRelation:
    source: GraphNode
    label: str
    target: GraphNode


_INSTANCE_RE = re.compile(
    r"^(?:cited_|citing_)?(?:Class_)?(?:Paper|Author|Term|Source|Organization)_\d+$"
)


@dataclass
class GraphQuery:
    nodes: list[GraphNode]
    relations: list[GraphRelation]

    @property
    def answer_node(self) -> GraphNode:
        return next(n for n in self.nodes if n.answer)

    @property
    def constraint_nodes(self) -> list[GraphNode]:
        return [n for n in self.nodes if n.constraint is not None]

    def validate(self, schema: Schema) -> None:
        if sum(1 for n in self.nodes if n.answer) != 1:
            raise ValueError("graph query must have exactly one answer node")
        names = [n.instance for n in self.nodes]
        if len(set(names)) != len(names):
            raise ValueError("instance names are not unique")
        for node in self.nodes:
            if not _INSTANCE_RE.match(node.instance):
                raise ValueError(f"bad instance name {node.instance!r}")
            if not node.instance.startswith(node.part.prefix):
                raise ValueError(f"instance {node.instance!r} does not match part {node.part}")
            if node.part is Part.MAIN and node.instance.startswith(("cited_", "citing_")):
                raise ValueError(f"instance {node.instance!r} carries a part prefix")
            if node.is_class == (node.constraint is not None):
                raise ValueError(f"constraint flag inconsistent on {node.instance!r}")
        node_set = set(map(id, self.nodes))
        for rel in self.relations:
            if id(rel.source) not in node_set or id(rel.target) not in node_set:
                raise ValueError("relation references a foreign node")
            hit = schema.edge_between(rel.source.etype, rel.target.etype)
            if hit is None or hit[0].label != rel.label or hit[1]:
                raise ValueError(
                    f"relation {rel.source.etype.value}-{rel.label}->{rel.target.etype.value}"
                    " does not match the schema"
                )
        if len(self.nodes) > 1:
            adjacency: dict[int, list[int]] = {id(n): [] for n in self.nodes}
            for rel in self.relations:
                adjacency[id(rel.source)].append(id(rel.target))
                adjacency[id(rel.target)].append(id(rel.source))
            seen = {id(self.nodes[0])}
            queue = deque(seen)
            while queue:
                for neighbor in adjacency[queue.popleft()]:
                    if neighbor not in seen:
                        seen.add(neighbor)
                        queue.append(neighbor)
            if len(seen) != len(self.nodes):
                raise ValueError("graph query is not connected")


# ---------------------------------------------------------------------------
# Construction stages
# ---------------------------------------------------------------------------


def select_graph_relations(result: ParseResult) -> list[tuple[Mention, Mention]]:
    """Entity pairs that become graph edges.

    A relation whose two tokens both carry mentions is taken directly
    (conj is discarded); an nmod/dobj hanging off a relative-clause verb
    is chained through acl:relcl back to the clause head.
    """
    acl_heads: dict[int, int] = {}
    for rel in result.relations:
        if rel.code == "acl:relcl" and rel.subject is not None:
            if result.token_at(rel.subject).mention is not None:
                acl_heads[rel.object] = rel.subject
    pairs: list[tuple[Mention, Mention]] = []
    seen: set[tuple[int, int]] = set()

    def add(a: Mention, b: Mention) -> None:
        key = (a.start, b.start)
        if key not in seen:
            seen.add(key)
            pairs.append((a, b))

    for rel in result.relations:
        if rel.code == "conj" or rel.subject is None:
            continue
        subj = result.token_at(rel.subject)
        obj = result.token_at(rel.object)
        if subj.mention is not None and obj.mention is not None:
            add(subj.mention, obj.mention)
        elif (
            rel.code in ("nmod", "dobj")
            and subj.mention is None
            and obj.mention is not None
            and rel.subject in acl_heads
        ):
            head = result.token_at(acl_heads[rel.subject])
            assert head.mention is not None
            add(head.mention, obj.mention)
    return pairs


def identify_answer(result: ParseResult) -> Mention:
    """The root entity is what the query asks for."""
    tok = result.token_at(result.root_index)
    if tok.mention is None:
        raise InterpretationFailure(
            f"root token {tok.text!r} is not a recognized entity",
            stage="answer", token=tok.text,
        )
    return tok.mention


def _node_from_mention(mention: Mention, part: Part, answer: bool) -> GraphNode:
    entry = mention.entry
    return GraphNode(
        etype=entry.etype,
        part=part,
        is_class=entry.is_class,
        named_entity=mention.surface,
        answer=answer,
        constraint=None if entry.is_class else entry.canonical,
        mention=mention,
    )


def assign_instance_names(nodes: Sequence[GraphNode]) -> None:
    """Name nodes "<part><Class_?><Type>_<n>" with one global sequence.

    Only Paper-typed class nodes carry the Class_ marker; other types use
    the bare type name.
    """
    for seq, node in enumerate(nodes, start=1):
        marker = "Class_" if node.is_class and node.etype is EntityType.PAPER else ""
        node.instance = f"{node.part.prefix}{marker}{node.etype.value}_{seq}"


def build_nodes(
    mentions_by_part: Sequence[tuple[Part, Sequence[Mention]]],
    answer: Mention,
) -> list[GraphNode]:
    """One node per mention, in query order, named and flagged."""
    nodes: list[GraphNode] = []
    for part, mentions in mentions_by_part:
        for mention in mentions:
            nodes.append(_node_from_mention(mention, part, answer=mention == answer))
    assign_instance_names(nodes)
    return nodes


def ensure_connected(
    pairs: Sequence[tuple[GraphNode, GraphNode]],
    schema: Schema,
    part: Part = Part.MAIN,
) -> tuple[list[tuple[GraphNode, list[GraphNode]]], list[tuple[GraphNode, GraphNode]]]:
    """Replace non-adjacent pairs with hops along the shortest schema path.

    Returns the created nodes (keyed by the pair node they follow) and the
    expanded pair list.  Adjacent pairs pass through untouched, so the
    operation is idempotent.
    """
    insertions: list[tuple[GraphNode, list[GraphNode]]] = []
    expanded: list[tuple[GraphNode, GraphNode]] = []
    for a, b in pairs:
        if schema.edge_between(a.etype, b.etype) is not None:
            expanded.append((a, b))
            continue
        path = schema.shortest_path(a.etype, b.etype)
        if path is None:
            raise UnsupportedQuery(
                f"no schema path connects {a.etype.value} and {b.etype.value}",
                stage="connect",
            )
        created = [
            GraphNode(etype=t, part=part, is_class=True, named_entity=t.value)
            for t in path[1:-1]
        ]
        insertions.append((a, created))
        chain = [a, *created, b]
        expanded.extend(zip(chain, chain[1:]))
    return insertions, expanded


def orient(
    pairs: Sequence[tuple[GraphNode, GraphNode]], schema: Schema
) -> list[GraphRelation]:
    """Turn each adjacent pair into a relation running the schema's way."""
    relations: list[GraphRelation] = []
    for a, b in pairs:
        hit = schema.edge_between(a.etype, b.etype)
        if hit is None:
            raise UnsupportedQuery(
                f"no schema edge between {a.etype.value} and {b.etype.value}",
                stage="orient",
            )
        edge, flipped = hit
        source, target = (b, a) if flipped else (a, b)
        relations.append(GraphRelation(source, edge.label, target))
    return relations


@dataclass
class PartGraph:
    """One query part's share of the graph while it is being assembled."""

    part: Part
    nodes: list[GraphNode]
    relations: list[GraphRelation]
    head: GraphNode
    first_token_index: int

    def paper_anchor(self) -> GraphNode | None:
        return next((n for n in self.nodes if n.etype is EntityType.PAPER), None)


def integrate_citation(cited: PartGraph, citing: PartGraph, schema: Schema) -> GraphQuery:
    """Bridge the two parts with the citation edge, creating a Paper node
    for any part that lacks one.

    Created nodes keep chain order: appended on the left part, prepended
    on the right, so the final numbering walks the citation chain.
    """
    cites_edge = schema.citation_edge()
    if cites_edge is None:
        raise UnsupportedQuery("schema has no citation edge type", stage="integrate")
    left, right = sorted((cited, citing), key=lambda f: f.first_token_index)
    added: dict[Part, list[GraphRelation]] = {}
    papers: dict[Part, GraphNode] = {}
    for frag in (cited, citing):
        paper = frag.paper_anchor()
        if paper is None:
            paper = GraphNode(
                etype=EntityType.PAPER, part=frag.part, is_class=True, named_entity="Paper",
            )
            insertions, pairs = ensure_connected([(frag.head, paper)], schema, frag.part)
            created = [node for _, nodes in insertions for node in nodes] + [paper]
            if frag is left:
                frag.nodes.extend(created)
            else:
                frag.nodes[:0] = reversed(created)
            added[frag.part] = orient(pairs, schema)
        else:
            added[frag.part] = []
        papers[frag.part] = paper
    bridge = GraphRelation(papers[citing.part], cites_edge.label, papers[cited.part])
    relations = (
        left.relations + added[left.part] + [bridge] + added[right.part] + right.relations
    )
    return GraphQuery(nodes=left.nodes + right.nodes, relations=relations)


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------


@dataclass
class CompileResult:
    query: str
    mentions: list[Mention]
    tokens: list[Token]
    pivot: Token | None
    parses: list[tuple[Part, ParseResult]]
    pairs: list[tuple[Part, list[tuple[Mention, Mention]]]]
    graph_query: GraphQuery
    timings_ms: dict[str, float]


def compile_query(query: str, dictionary: Dictionary, schema: Schema = DEFAULT_SCHEMA) -> CompileResult:
    """Run the whole front half of the pipeline on a query string.

    On failure the raised PipelineError carries the artifacts of every
    stage that completed, so callers can still show partial analyses.
    """
    compiler = _Compiler(query, dictionary, schema)
    try:
        return compiler.run()
    except PipelineError as err:
        err.artifacts = compiler.artifacts
        raise


class _Compiler:
    def __init__(self, query: str, dictionary: Dictionary, schema: Schema):
        self.query = query
        self.dictionary = dictionary
        self.schema = schema
        self.artifacts: dict = {}
        self.timings: dict[str, float] = {}

    def _timed(self, name: str, fn, *args):
        start = time.perf_counter()
        out = fn(*args)
        self.timings[name] = self.timings.get(name, 0.0) + (time.perf_counter() - start) * 1000
        return out

    def run(self) -> CompileResult:
        total_start = time.perf_counter()
        if not self.query.strip():
            raise UnparsableQuery("query is empty", stage="validate")
        mentions = self._timed("recognize", recognize, self.query, self.dictionary)
        self.artifacts["mentions"] = mentions
        tokens = self._timed("tokenize", tokenize, self.query, mentions)
        self.artifacts["tokens"] = tokens

        parts = self._timed("split", split_citation, tokens)
        self.artifacts["pivot"] = parts.pivot
        if parts.is_citation:
            assert parts.citing is not None
            entries = sorted(
                [(Part.CITED, parts.cited), (Part.CITING, parts.citing)],
                key=lambda e: e[1][0].index,
            )
        else:
            entries = [(Part.MAIN, parts.cited)]

        parses: list[tuple[Part, ParseResult]] = []
        self.artifacts["parses"] = parses
        for part, part_tokens in entries:
            parses.append((part, self._timed("parse", parse, part_tokens)))

        # The part holding the query's first token names the answer.
        answer = self._timed("answer", identify_answer, parses[0][1])
        self.artifacts["answer"] = answer

        pairs: list[tuple[Part, list[tuple[Mention, Mention]]]] = []
        self.artifacts["pairs"] = pairs
        for part, result in parses:
            pairs.append((part, self._timed("select", select_graph_relations, result)))

        graph_query = self._timed("graph", self._build_graph, parses, pairs, answer)
        self.artifacts["graph_query"] = graph_query
        self.timings["total"] = (time.perf_counter() - total_start) * 1000
        return CompileResult(
            query=self.query,
            mentions=mentions,
            tokens=tokens,
            pivot=parts.pivot,
            parses=parses,
            pairs=pairs,
            graph_query=graph_query,
            timings_ms=dict(self.timings),
        )

    def _build_graph(
        self,
        parses: list[tuple[Part, ParseResult]],
        pairs: list[tuple[Part, list[tuple[Mention, Mention]]]],
        answer: Mention,
    ) -> GraphQuery:
        mentions_by_part = [
            (part, [t.mention for t in result.tokens if t.mention is not None])
            for part, result in parses
        ]
        nodes = build_nodes(mentions_by_part, answer)
        by_mention: dict[int, GraphNode] = {
            node.mention.start: node for node in nodes if node.mention is not None
        }

        fragments: list[PartGraph] = []
        for (part, result), (_, mention_pairs) in zip(parses, pairs):
            frag_nodes = [
                by_mention[t.mention.start] for t in result.tokens if t.mention is not None
            ]
            node_pairs = [(by_mention[a.start], by_mention[b.start]) for a, b in mention_pairs]
            insertions, expanded = ensure_connected(node_pairs, self.schema, part)
            for anchor, created in insertions:
                at = frag_nodes.index(anchor) + 1
                frag_nodes[at:at] = created
            relations = orient(expanded, self.schema)
            head = by_mention[result.token_at(result.root_index).mention.start]
            fragments.append(PartGraph(
                part=part,
                nodes=frag_nodes,
                relations=relations,
                head=head,
                first_token_index=result.tokens[0].index,
            ))

        if len(fragments) == 1:
            graph_query = GraphQuery(nodes=fragments[0].nodes, relations=fragments[0].relations)
        else:
            by_part = {frag.part: frag for frag in fragments}
            graph_query = integrate_citation(by_part[Part.CITED], by_part[Part.CITING], self.schema)
        assign_instance_names(graph_query.nodes)
        graph_query.validate(self.schema)
        return graph_query


__all__ = [
    "CompileResult",
    "DEFAULT_SCHEMA",
    "GraphNode",
    "GraphQuery",
    "GraphRelation",
    "Part",
    "PartGraph",
    "Schema",
    "SchemaEdge",
    "assign_instance_names",
    "build_nodes",
    "compile_query",
    "ensure_connected",
    "identify_answer",
    "integrate_citation",
    "load_schema",
    "orient",
    "schema_from_dict",
    "select_graph_relations",
]
