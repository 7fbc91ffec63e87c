"""Render a graph query as a Cypher statement.

The emitted subset is one MATCH clause with a comma-separated pattern per
relation, a WHERE conjunction of exact name constraints, and a RETURN of
the answer variable.  Each variable is typed at its first appearance and
referenced bare afterwards.
"""
from __future__ import annotations

from dataclasses import dataclass

from .querygraph import GraphQuery

SUPPORTED_DIALECTS = ("cypher",)


@dataclass(frozen=True)
class EmittedQuery:
    text: str
    dialect: str = "cypher"


def _escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace('"', '\\"')


def emit(query: GraphQuery, dialect: str = "cypher") -> EmittedQuery:
    if dialect not in SUPPORTED_DIALECTS:
        raise ValueError(f"unsupported dialect {dialect!r}")
    typed: set[str] = set()

    def ref(instance: str, etype: str) -> str:
        if instance in typed:
            return f"({instance})"
        typed.add(instance)
        return f"({instance}:{etype})"

    patterns = [
        f"{ref(rel.source.instance, rel.source.etype.value)}"
        f"-[:{rel.label}]->"
        f"{ref(rel.target.instance, rel.target.etype.value)}"
        for rel in query.relations
    ]
    # A node outside every relation still needs its own pattern; that only
    # happens for single-node queries.
    patterns.extend(
        ref(node.instance, node.etype.value)
        for node in query.nodes
        if node.instance not in typed
    )
    clauses = ["MATCH " + ", ".join(patterns)]
    constraints = [
        f'{node.instance}.name = "{_escape(node.constraint)}"'
        for node in query.nodes
        if node.constraint is not None
    ]
    if constraints:
        clauses.append("WHERE " + " AND ".join(constraints))
    clauses.append(f"RETURN {query.answer_node.instance}")
    return EmittedQuery(text=" ".join(clauses))


__all__ = ["EmittedQuery", "SUPPORTED_DIALECTS", "emit"]
