import random

import pytest

from bibquery.engine import QueryEngine
from bibquery.graphstore import PropertyGraph
from bibquery.lexicon import EntityType, build_dictionary
from bibquery.querygraph import DEFAULT_SCHEMA, GraphNode, GraphQuery, Part
from bibquery.synthetic import build_graph

# Hand-picked entities for the worked examples; not tied to any dataset.
EXAMPLE_RECORDS = [
    ("John", EntityType.AUTHOR),
    ("Mary", EntityType.AUTHOR),
    ("happy university", EntityType.ORGANIZATION),
    ("information retrieval", EntityType.TERM),
    ("data mining", EntityType.TERM),
]


@pytest.fixture(scope="session")
def example_dictionary():
    return build_dictionary(EXAMPLE_RECORDS)


@pytest.fixture(scope="session")
def seeded_graph():
    return build_graph()


@pytest.fixture(scope="session")
def engine(seeded_graph):
    return QueryEngine(seeded_graph)


def make_random_graph(rng: random.Random, max_entities: int = 200) -> PropertyGraph:
    """A small random graph covering every schema edge label."""
    graph = PropertyGraph()
    counts = {
        EntityType.PAPER: rng.randint(20, 60),
        EntityType.AUTHOR: rng.randint(10, 40),
        EntityType.TERM: rng.randint(5, 20),
        EntityType.SOURCE: rng.randint(2, 8),
        EntityType.ORGANIZATION: rng.randint(2, 8),
    }
    ids: dict[EntityType, list[int]] = {}
    for etype, count in counts.items():
        ids[etype] = [
            graph.add_entity(etype, f"{etype.value} {i}").ident for i in range(count)
        ]
    assert graph.entity_count <= max_entities
    for edge in DEFAULT_SCHEMA.edges:
        sources, targets = ids[edge.source], ids[edge.target]
        for _ in range(rng.randint(len(sources), 3 * len(sources))):
            a, b = rng.choice(sources), rng.choice(targets)
            if a != b:
                graph.add_edge(edge.label, a, b)
    return graph


def make_random_query(rng: random.Random, graph: PropertyGraph) -> GraphQuery:
    """A random schema-conformant query tree rooted at the answer node."""
    from bibquery.querygraph import GraphRelation

    etypes = list(EntityType)
    nodes = [_random_node(rng, graph, rng.choice(etypes), answer=True)]
    relations = []
    for _ in range(rng.randint(0, 3)):
        anchor = rng.choice(nodes)
        edge = rng.choice([
            e for e in DEFAULT_SCHEMA.edges if anchor.etype in (e.source, e.target)
        ])
        other_type = edge.target if anchor.etype is edge.source else edge.source
        other = _random_node(rng, graph, other_type)
        nodes.append(other)
        if anchor.etype is edge.source and (anchor.etype is not other.etype or rng.random() < 0.5):
            source, target = anchor, other
        else:
            source, target = other, anchor
        relations.append(GraphRelation(source=source, label=edge.label, target=target))
    for i, node in enumerate(nodes, start=1):
        node.instance = f"{node.etype.value}_{i}"
    query = GraphQuery(nodes=nodes, relations=relations)
    query.validate(DEFAULT_SCHEMA)
    return query


def _random_node(rng, graph, etype, answer=False):
    if not answer and rng.random() < 0.5:
        pool = graph.by_type(etype)
        if pool and rng.random() < 0.8:
            name = graph.entities[rng.choice(pool)].name
        else:
            name = "no such entity"
        return GraphNode(
            etype=etype, part=Part.MAIN, is_class=False,
            named_entity=name, answer=False, constraint=name,
        )
    return GraphNode(
        etype=etype, part=Part.MAIN, is_class=True,
        named_entity=etype.value.lower() + "s", answer=answer,
    )
