"""In-memory property graph: storage, ingest, and query execution.

Execution semantics: node bindings are homomorphic (two query nodes may
bind the same entity) but every query relation must match a distinct
graph edge; name constraints compare exactly and case-sensitively.  Two
independent implementations exist so each can check the other: `execute`
plans around constrained nodes and walks adjacency indexes, `oracle`
binds nodes in declaration order with nothing but linear scans.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import IngestError
from .lexicon import EntityType
from .querygraph import GraphNode, GraphQuery, GraphRelation, Part, Schema

ORACLE_ENTITY_LIMIT = 2000


@dataclass(frozen=True)
class GraphEntity:
    ident: int
    etype: EntityType
    name: str
    year: int | None = None
    source_id: int | None = None


@dataclass(frozen=True)
class GraphEdge:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class ResultRow:
    answer: GraphEntity
    bindings: tuple[tuple[str, GraphEntity], ...]

    @property
    def name(self) -> str:
        return self.answer.name


@dataclass(frozen=True)
class ResultSet:
    answer_instance: str
    rows: tuple[ResultRow, ...]
    match_count: int

    @property
    def names(self) -> list[str]:
        return [row.name for row in self.rows]

    @property
    def answer_ids(self) -> set[int]:
        return {row.answer.ident for row in self.rows}

    def __len__(self) -> int:
        return len(self.rows)


class PropertyGraph:
    """Entities and labeled directed edges, with the lookup indexes the
    executor leans on.  Duplicate edges collapse on insert."""

    def __init__(self) -> None:
        self.entities: dict[int, GraphEntity] = {}
        self.edges: list[GraphEdge] = []
        self._edge_keys: dict[tuple[str, int, int], int] = {}
        self._by_type: dict[EntityType, list[int]] = {t: [] for t in EntityType}
        self._by_name: dict[tuple[EntityType, str], list[int]] = {}
        self._out: dict[tuple[str, int], list[tuple[int, int]]] = {}
        self._in: dict[tuple[str, int], list[tuple[int, int]]] = {}
        self._next_id = 1

    # -- construction -------------------------------------------------

    def add_entity(
        self,
        etype: EntityType,
        name: str,
        ident: int | None = None,
        year: int | None = None,
        source_id: int | None = None,
    ) -> GraphEntity:
        if ident is None:
            ident = self._next_id
        if ident in self.entities:
            raise ValueError(f"duplicate entity id {ident}")
        self._next_id = max(self._next_id, ident + 1)
        entity = GraphEntity(ident=ident, etype=etype, name=name, year=year, source_id=source_id)
        self.entities[ident] = entity
        self._by_type[etype].append(ident)
        self._by_name.setdefault((etype, name), []).append(ident)
        return entity

    def add_edge(self, label: str, source: int, target: int) -> GraphEdge:
        if source not in self.entities or target not in self.entities:
            raise ValueError(f"edge {label} references a missing entity")
        key = (label, source, target)
        if key in self._edge_keys:
            return self.edges[self._edge_keys[key]]
        edge = GraphEdge(label=label, source=source, target=target)
        edge_id = len(self.edges)
        self._edge_keys[key] = edge_id
        self.edges.append(edge)
        self._out.setdefault((label, source), []).append((edge_id, target))
        self._in.setdefault((label, target), []).append((edge_id, source))
        return edge

    # -- lookups -------------------------------------------------------

    @property
    def entity_count(self) -> int:
        return len(self.entities)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def by_type(self, etype: EntityType) -> list[int]:
        return self._by_type[etype]

    def by_name(self, etype: EntityType, name: str) -> list[int]:
        return self._by_name.get((etype, name), [])

    def edge_id(self, label: str, source: int, target: int) -> int | None:
        return self._edge_keys.get((label, source, target))

    def outgoing(self, label: str, source: int) -> list[tuple[int, int]]:
        return self._out.get((label, source), [])

    def incoming(self, label: str, target: int) -> list[tuple[int, int]]:
        return self._in.get((label, target), [])

    def dictionary_records(self) -> list[tuple[str, EntityType]]:
        """Every entity name, for seeding the recognition dictionary."""
        return [(e.name, e.etype) for _, e in sorted(self.entities.items())]

    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        for ident in sorted(self.entities):
            entity = self.entities[ident]
            digest.update(f"E\t{ident}\t{entity.etype.value}\t{entity.name}\n".encode())
        for key in sorted(self._edge_keys):
            digest.update(f"R\t{key[0]}\t{key[1]}\t{key[2]}\n".encode())
        return digest.hexdigest()


# ---------------------------------------------------------------------------
# Ingest: per-type node files plus an edge file, TSV or JSON lines
# ---------------------------------------------------------------------------

NODE_FILES: dict[str, EntityType] = {
    "papers": EntityType.PAPER,
    "authors": EntityType.AUTHOR,
    "terms": EntityType.TERM,
    "sources": EntityType.SOURCE,
    "organizations": EntityType.ORGANIZATION,
}
EDGE_FILE_STEM = "edges"

_NODE_COLUMNS = ("id", "name", "year", "source_id")
_EDGE_COLUMNS = ("source_id", "target_id", "label")


class _Problems:
    def __init__(self) -> None:
        self.items: list[str] = []

    def add(self, where: str, message: str) -> None:
        self.items.append(f"{where}: {message}")


def _parse_int(value: str, what: str, where: str, problems: _Problems) -> int | None:
    try:
        return int(value)
    except (TypeError, ValueError):
        problems.add(where, f"{what} {value!r} is not an integer")
        return None


def _iter_tsv(path: Path):
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if line:
                yield f"{path.name}:{lineno}", line.split("\t")


def _iter_jsonl(path: Path, problems: _Problems):
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            where = f"{path.name}:{lineno}"
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                problems.add(where, err.msg)
                continue
            if isinstance(record, dict):
                yield where, record
            else:
                problems.add(where, "record is not an object")


def _node_records(path: Path, problems: _Problems):
    """Yield (where, {column: value}) for one node file, either format."""
    if path.suffix == ".jsonl":
        yield from _iter_jsonl(path, problems)
        return
    rows = _iter_tsv(path)
    try:
        where, header = next(rows)
    except StopIteration:
        problems.add(path.name, "file is empty, expected a header line")
        return
    unknown = [c for c in header if c not in _NODE_COLUMNS]
    if unknown or "id" not in header or "name" not in header:
        problems.add(where, f"bad header {header!r}, expected columns from {_NODE_COLUMNS}")
        return
    for where, row in rows:
        if len(row) != len(header):
            problems.add(where, f"expected {len(header)} fields, got {len(row)}")
            continue
        yield where, dict(zip(header, row))


def _edge_records(path: Path, problems: _Problems):
    if path.suffix == ".jsonl":
        yield from _iter_jsonl(path, problems)
        return
    rows = _iter_tsv(path)
    try:
        where, header = next(rows)
    except StopIteration:
        problems.add(path.name, "file is empty, expected a header line")
        return
    if tuple(header) != _EDGE_COLUMNS:
        problems.add(where, f"bad header {header!r}, expected {_EDGE_COLUMNS}")
        return
    for where, row in rows:
        if len(row) != len(header):
            problems.add(where, f"expected {len(header)} fields, got {len(row)}")
            continue
        yield where, dict(zip(header, row))


def _find(directory: Path, stem: str) -> Path | None:
    for suffix in (".tsv", ".jsonl"):
        candidate = directory / f"{stem}{suffix}"
        if candidate.is_file():
            return candidate
    return None


def load_dataset(directory: str | Path) -> PropertyGraph:
    """Load a graph from a dataset directory.

    Expects one node file per entity type (papers, authors, terms,
    sources, organizations) and an edge file, as TSV with a header line
    or as JSON lines with the same field names.  Collects every problem
    before failing so a bad export is diagnosed in one pass.
    """
    directory = Path(directory)
    problems = _Problems()
    graph = PropertyGraph()
    found_any = False
    for stem, etype in NODE_FILES.items():
        path = _find(directory, stem)
        if path is None:
            continue
        found_any = True
        for where, record in _node_records(path, problems):
            ident = _parse_int(record.get("id", ""), "entity id", where, problems)
            if ident is None:
                continue
            name = str(record.get("name", ""))
            if not name.strip():
                problems.add(where, f"entity {ident} has an empty name")
                continue
            if ident in graph.entities:
                problems.add(where, f"duplicate entity id {ident}")
                continue
            year: int | None = None
            source_id: int | None = None
            if record.get("year") not in (None, ""):
                year = _parse_int(str(record["year"]), "year", where, problems)
            if record.get("source_id") not in (None, ""):
                source_id = _parse_int(str(record["source_id"]), "source id", where, problems)
            graph.add_entity(etype, name, ident=ident, year=year, source_id=source_id)
    if not found_any:
        raise IngestError([f"no node files found in {directory}"])
    edge_path = _find(directory, EDGE_FILE_STEM)
    if edge_path is not None:
        for where, record in _edge_records(edge_path, problems):
            source = _parse_int(record.get("source_id", ""), "source id", where, problems)
            target = _parse_int(record.get("target_id", ""), "target id", where, problems)
            label = str(record.get("label", ""))
            if source is None or target is None:
                continue
            if not label.strip():
                problems.add(where, "edge label is empty")
                continue
            missing = [i for i in (source, target) if i not in graph.entities]
            if missing:
                problems.add(where, f"edge references missing entity {missing[0]}")
                continue
            graph.add_edge(label, source, target)
    if problems.items:
        raise IngestError(problems.items)
    return graph


def save_dataset(graph: PropertyGraph, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    by_type: dict[EntityType, list[GraphEntity]] = {t: [] for t in EntityType}
    for ident in sorted(graph.entities):
        entity = graph.entities[ident]
        by_type[entity.etype].append(entity)
    for stem, etype in NODE_FILES.items():
        with open(directory / f"{stem}.tsv", "w", encoding="utf-8") as handle:
            if etype is EntityType.PAPER:
                handle.write("id\tname\tyear\tsource_id\n")
                for e in by_type[etype]:
                    year = "" if e.year is None else str(e.year)
                    source = "" if e.source_id is None else str(e.source_id)
                    handle.write(f"{e.ident}\t{e.name}\t{year}\t{source}\n")
            else:
                handle.write("id\tname\n")
                for e in by_type[etype]:
                    handle.write(f"{e.ident}\t{e.name}\n")
    with open(directory / f"{EDGE_FILE_STEM}.tsv", "w", encoding="utf-8") as handle:
        handle.write("\t".join(_EDGE_COLUMNS) + "\n")
        for edge in graph.edges:
            handle.write(f"{edge.source}\t{edge.target}\t{edge.label}\n")


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------


def _node_admits(node: GraphNode, entity: GraphEntity) -> bool:
    if entity.etype != node.etype:
        return False
    return node.constraint is None or entity.name == node.constraint


def _candidates(graph: PropertyGraph, node: GraphNode) -> list[int]:
    if node.constraint is not None:
        return graph.by_name(node.etype, node.constraint)
    return graph.by_type(node.etype)


def _plan(query: GraphQuery, graph: PropertyGraph) -> list[GraphRelation]:
    """Order relations so each step extends already-bound nodes, seeding
    from the most selective endpoint."""

    def selectivity(rel: GraphRelation) -> int:
        return min(len(_candidates(graph, rel.source)), len(_candidates(graph, rel.target)))

    remaining = list(query.relations)
    ordered: list[GraphRelation] = []
    bound: set[str] = set()
    while remaining:
        touching = [r for r in remaining if r.source.instance in bound or r.target.instance in bound]
        pool = touching or remaining
        best = min(pool, key=lambda r: (selectivity(r), query.relations.index(r)))
        remaining.remove(best)
        ordered.append(best)
        bound.update((best.source.instance, best.target.instance))
    return ordered


def execute(query: GraphQuery, graph: PropertyGraph, limit: int | None = None) -> ResultSet:
    """Find every entity the answer node can bind to.

    Rows are distinct answers sorted by entity id; `limit` truncates the
    sorted rows, so a limited result is always a prefix of the full one
    and match_count still reports the untruncated total.
    """
    plan = _plan(query, graph)
    bindings: dict[str, int] = {}
    used_edges: set[int] = set()
    answer = query.answer_node
    found: dict[int, tuple[tuple[str, GraphEntity], ...]] = {}

    def record() -> None:
        ident = bindings[answer.instance]
        if ident not in found:
            found[ident] = tuple(
                (name, graph.entities[ent]) for name, ent in sorted(bindings.items())
            )

    def bind_node(node: GraphNode, step_fn) -> None:
        for ident in _candidates(graph, node):
            bindings[node.instance] = ident
            step_fn()
            del bindings[node.instance]

    def step(i: int) -> None:
        if i == len(plan):
            for node in query.nodes:
                if node.instance not in bindings:
                    bind_node(node, lambda: step(i))
                    return
            record()
            return
        rel = plan[i]
        s_bound = rel.source.instance in bindings
        t_bound = rel.target.instance in bindings
        if s_bound and t_bound:
            edge_id = graph.edge_id(
                rel.label, bindings[rel.source.instance], bindings[rel.target.instance]
            )
            if edge_id is not None and edge_id not in used_edges:
                used_edges.add(edge_id)
                step(i + 1)
                used_edges.remove(edge_id)
        elif s_bound:
            for edge_id, target in graph.outgoing(rel.label, bindings[rel.source.instance]):
                if edge_id in used_edges or not _node_admits(rel.target, graph.entities[target]):
                    continue
                bindings[rel.target.instance] = target
                used_edges.add(edge_id)
                step(i + 1)
                used_edges.remove(edge_id)
                del bindings[rel.target.instance]
        elif t_bound:
            for edge_id, source in graph.incoming(rel.label, bindings[rel.target.instance]):
                if edge_id in used_edges or not _node_admits(rel.source, graph.entities[source]):
                    continue
                bindings[rel.source.instance] = source
                used_edges.add(edge_id)
                step(i + 1)
                used_edges.remove(edge_id)
                del bindings[rel.source.instance]
        else:
            bind_node(rel.source, lambda: step(i))

    step(0)
    rows = tuple(
        ResultRow(answer=graph.entities[ident], bindings=found[ident])
        for ident in sorted(found)
    )
    match_count = len(rows)
    if limit is not None:
        rows = rows[:limit]
    return ResultSet(answer_instance=answer.instance, rows=rows, match_count=match_count)


def oracle(query: GraphQuery, graph: PropertyGraph) -> ResultSet:
    """Reference executor: bind nodes in declaration order by scanning all
    entities, checking each relation as soon as both of its endpoints are
    bound.  No planning, no adjacency indexes.  Refuses graphs large
    enough to make that blow up."""
    if graph.entity_count > ORACLE_ENTITY_LIMIT:
        raise ValueError(f"oracle refuses graphs over {ORACLE_ENTITY_LIMIT} entities")
    answer = query.answer_node
    entities = list(graph.entities.values())
    edge_set = {(e.label, e.source, e.target) for e in graph.edges}
    position = {node.instance: i for i, node in enumerate(query.nodes)}
    checkable: list[list[GraphRelation]] = [[] for _ in query.nodes]
    for rel in query.relations:
        at = max(position[rel.source.instance], position[rel.target.instance])
        checkable[at].append(rel)
    found: dict[int, tuple[tuple[str, GraphEntity], ...]] = {}

    def assign(i: int, bindings: dict[str, int]) -> None:
        if i == len(query.nodes):
            keys = [
                (rel.label, bindings[rel.source.instance], bindings[rel.target.instance])
                for rel in query.relations
            ]
            if len(set(keys)) == len(keys):
                ident = bindings[answer.instance]
                if ident not in found:
                    found[ident] = tuple(
                        (name, graph.entities[ent]) for name, ent in sorted(bindings.items())
                    )
            return
        node = query.nodes[i]
        for entity in entities:
            if not _node_admits(node, entity):
                continue
            bindings[node.instance] = entity.ident
            if all(
                (rel.label, bindings[rel.source.instance], bindings[rel.target.instance]) in edge_set
                for rel in checkable[i]
            ):
                assign(i + 1, bindings)
            del bindings[node.instance]

    assign(0, {})
    rows = tuple(
        ResultRow(answer=graph.entities[ident], bindings=found[ident])
        for ident in sorted(found)
    )
    return ResultSet(answer_instance=answer.instance, rows=rows, match_count=len(rows))


# ---------------------------------------------------------------------------
# Dialect reader
# ---------------------------------------------------------------------------

_STATEMENT_RE = re.compile(
    r"^MATCH\s+(?P<patterns>.+?)(?:\s+WHERE\s+(?P<where>.+?))?\s+RETURN\s+(?P<answer>\w+)$"
)
_PATTERN_RE = re.compile(
    r"^\((?P<var1>\w+)(?::(?P<type1>\w+))?\)"
    r"(?:-\[:(?P<label>\w+)\]->\((?P<var2>\w+)(?::(?P<type2>\w+))?\))?$"
)
_CONSTRAINT_RE = re.compile(r'^(?P<var>\w+)\.name = "(?P<value>(?:[^"\\]|\\.)*)"$')


def _unescape(value: str) -> str:
    return re.sub(r"\\(.)", r"\1", value)


def _part_of(instance: str) -> Part:
    if instance.startswith("cited_"):
        return Part.CITED
    if instance.startswith("citing_"):
        return Part.CITING
    return Part.MAIN


def read_cypher(text: str, schema: Schema) -> GraphQuery:
    """Parse a statement in the emitted subset back into a graph query.

    Variables must be typed exactly at first mention; relation labels and
    directions must match the schema.
    """
    statement = _STATEMENT_RE.match(text.strip())
    if statement is None:
        raise ValueError("statement is not MATCH ... [WHERE ...] RETURN ...")

    nodes: dict[str, GraphNode] = {}
    order: list[str] = []
    relations: list[tuple[str, str, str]] = []

    def touch(var: str, type_name: str | None) -> None:
        if var not in nodes:
            if type_name is None:
                raise ValueError(f"variable {var!r} used before it is typed")
            try:
                etype = EntityType(type_name)
            except ValueError:
                raise ValueError(f"unknown node type {type_name!r}") from None
            nodes[var] = GraphNode(
                etype=etype, part=_part_of(var), is_class=True,
                named_entity=etype.value, instance=var,
            )
            order.append(var)
        elif type_name is not None:
            raise ValueError(f"variable {var!r} typed twice")

    for chunk in statement.group("patterns").split(", "):
        pattern = _PATTERN_RE.match(chunk.strip())
        if pattern is None:
            raise ValueError(f"bad pattern {chunk!r}")
        touch(pattern.group("var1"), pattern.group("type1"))
        if pattern.group("label") is not None:
            touch(pattern.group("var2"), pattern.group("type2"))
            relations.append(
                (pattern.group("var1"), pattern.group("label"), pattern.group("var2"))
            )

    where = statement.group("where")
    if where:
        for chunk in where.split(" AND "):
            constraint = _CONSTRAINT_RE.match(chunk.strip())
            if constraint is None:
                raise ValueError(f"bad constraint {chunk!r}")
            var = constraint.group("var")
            if var not in nodes:
                raise ValueError(f"constraint on unknown variable {var!r}")
            node = nodes[var]
            node.constraint = _unescape(constraint.group("value"))
            node.is_class = False
            node.named_entity = node.constraint

    answer_var = statement.group("answer")
    if answer_var not in nodes:
        raise ValueError(f"RETURN names unknown variable {answer_var!r}")
    nodes[answer_var].answer = True

    query = GraphQuery(
        nodes=[nodes[var] for var in order],
        relations=[GraphRelation(nodes[s], label, nodes[t]) for s, label, t in relations],
    )
    query.validate(schema)
    return query


__all__ = [
    "EDGE_FILE_STEM",
    "GraphEdge",
    "GraphEntity",
    "NODE_FILES",
    "ORACLE_ENTITY_LIMIT",
    "PropertyGraph",
    "ResultRow",
    "ResultSet",
    "execute",
    "load_dataset",
    "oracle",
    "read_cypher",
    "save_dataset",
]
