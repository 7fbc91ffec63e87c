"""End-to-end contract suite: one test per shipped guarantee.

The expected graph queries below were derived by hand from the
interpretation rules, not from the implementation: a node signature is
(type, part, answer, constraint) and a relation is a labeled pair of the
node signatures it connects.
"""
import random
import time
from collections import Counter

from bibquery.benchmark import BENCHMARK_QUERIES, DEMO_QUERY, run_benchmark
from bibquery.cnlparser import parse
from bibquery.emitter import emit
from bibquery.graphstore import execute, oracle, read_cypher
from bibquery.lexicon import EntityType, build_dictionary, recognize, tokenize
from bibquery.querygraph import compile_query

from conftest import EXAMPLE_RECORDS, make_random_graph, make_random_query

A, P, T, S, O = "Author", "Paper", "Term", "Source", "Organization"
W, C, PB, H, AF = "WRITES", "CITES", "PUBLISHES", "HAS_TERM", "AFFILIATED_WITH"
M, CD, CG = "main", "cited", "citing"


def q(nodes, relations):
    return {"nodes": nodes, "relations": relations}


# One entry per benchmark query: node signatures plus (source-index,
# label, target-index) relations into the node list.
GOLD = {
    1: q([(P, M, True, None), (A, M, False, "Gerard Salton")],
         [(1, W, 0)]),
    2: q([(A, M, False, "Michael Lawrence"), (P, M, True, None)],
         [(0, W, 1)]),
    3: q([(P, M, True, None), (A, M, False, "Sangjun Lee")],
         [(1, W, 0)]),
    4: q([(P, M, True, None), (T, M, False, "ontology")],
         [(0, H, 1)]),
    5: q([(A, M, True, None), (P, M, False, "Automatic text structuring experiments")],
         [(0, W, 1)]),
    6: q([(P, CD, True, None),
          (P, CG, False, "Energy-Aware and Time-Critical Geo-Routing in Wireless Sensor Networks")],
         [(1, C, 0)]),
    7: q([(T, M, True, None), (P, M, False, "Opacity generalised to transition systems")],
         [(1, H, 0)]),
    8: q([(O, M, True, None), (A, M, False, "Johann Eder")],
         [(1, AF, 0)]),
    9: q([(S, M, True, None), (P, M, False, "The Effect of Faults on Network Expansions")],
         [(0, PB, 1)]),
    10: q([(P, M, True, None), (S, M, False, "Theoretical Computer Science")],
          [(1, PB, 0)]),
    11: q([(P, M, True, None), (T, M, False, "classification"), (T, M, False, "DNA")],
          [(0, H, 1), (0, H, 2)]),
    12: q([(P, M, True, None), (A, M, False, "John R. Mick"),
           (S, M, False, "ACM SIGMICRO Newsletter")],
          [(1, W, 0), (2, PB, 0)]),
    13: q([(P, CG, True, None), (P, CD, False, None), (A, CD, False, "Braham Barkat")],
          [(0, C, 1), (2, W, 1)]),
    14: q([(P, M, True, None), (T, M, False, "modulation"), (S, M, False, "Neural Networks")],
          [(0, H, 1), (2, PB, 0)]),
    15: q([(A, M, True, None), (O, M, False, "University713"),
           (P, M, False, "A control word model for detecting conflicts between microoperations")],
          [(0, AF, 1), (0, W, 2)]),
    16: q([(S, M, True, None), (A, M, False, "Zesheng Chen"), (P, M, False, None)],
          [(0, PB, 2), (1, W, 2)]),
    17: q([(A, M, True, None), (P, M, False, None), (S, M, False, "AI Communications")],
          [(0, W, 1), (2, PB, 1)]),
    18: q([(A, M, True, None), (P, M, False, None), (T, M, False, "simulation")],
          [(0, W, 1), (1, H, 2)]),
    19: q([(T, M, True, None), (A, M, False, "Junghyun Nam"), (P, M, False, None)],
          [(2, H, 0), (1, W, 2)]),
    20: q([(O, M, True, None), (A, M, False, None),
           (P, M, False, "A New Quadtree Decomposition Reconstruction Methods")],
          [(1, AF, 0), (1, W, 2)]),
    21: q([(P, M, True, None), (T, M, False, "survey"), (T, M, False, "semantic"),
           (T, M, False, "retrieval")],
          [(0, H, 1), (0, H, 2), (0, H, 3)]),
    22: q([(A, CD, True, None), (P, CD, False, None), (P, CG, False, None),
           (S, CG, False, "Decision Support Systems")],
          [(0, W, 1), (2, C, 1), (3, PB, 2)]),
    23: q([(P, CG, True, None), (P, CD, False, None), (A, CD, False, "Rainer Engelke"),
           (S, CD, False, "Microsystem Technologies")],
          [(0, C, 1), (2, W, 1), (3, PB, 1)]),
    24: q([(A, CD, False, "Nina Yevtushenko"), (P, CD, True, None), (P, CG, False, None),
           (A, CG, False, "Sergey Buffalov")],
          [(0, W, 1), (2, C, 1), (3, W, 2)]),
    25: q([(S, M, True, None), (P, M, False, None), (T, M, False, "genome"),
           (T, M, False, "mining")],
          [(0, PB, 1), (1, H, 2), (1, H, 3)]),
    26: q([(T, M, True, None), (A, M, False, "Rafae Bhatti"), (P, M, False, None),
           (S, M, False, "Communications of the ACM")],
          [(2, H, 0), (1, W, 2), (3, PB, 2)]),
    27: q([(S, M, True, None), (A, M, False, "Tomasz Jurdzinski"), (P, M, False, None),
           (T, M, False, "automata")],
          [(0, PB, 2), (1, W, 2), (2, H, 3)]),
    28: q([(T, M, True, None), (P, M, False, None), (A, M, False, None),
           (O, M, False, "University123")],
          [(1, H, 0), (2, W, 1), (2, AF, 3)]),
    29: q([(O, M, True, None), (A, M, False, None), (P, M, False, None),
           (S, M, False, "Journal of Multivariate Analysis")],
          [(1, AF, 0), (1, W, 2), (3, PB, 2)]),
    30: q([(A, M, True, None), (O, M, False, "University007"), (P, M, False, None),
           (T, M, False, "clustering")],
          [(0, AF, 1), (0, W, 2), (2, H, 3)]),
    31: q([(P, CD, True, None), (T, CD, False, "classification"),
           (A, CG, False, "Asoke K. Nandi"), (P, CG, False, None),
           (S, CG, False, "Pattern Recognition")],
          [(0, H, 1), (3, C, 0), (2, W, 3), (4, PB, 3)]),
    32: q([(A, CD, True, None), (P, CD, False, None), (P, CG, False, None),
           (A, CG, False, "Changqiu Jin"), (S, CG, False, "Journal of Computational Physics")],
          [(0, W, 1), (2, C, 1), (3, W, 2), (4, PB, 2)]),
    33: q([(T, CD, True, None), (P, CD, False, None), (P, CG, False, None),
           (T, CG, False, "kernel"), (T, CG, False, "regression")],
          [(1, H, 0), (2, C, 1), (2, H, 3), (2, H, 4)]),
    34: q([(S, CG, True, None), (P, CG, False, None), (P, CD, False, None),
           (T, CD, False, "middleware"), (T, CD, False, "embedded")],
          [(0, PB, 1), (1, C, 2), (2, H, 3), (2, H, 4)]),
    35: q([(O, CD, True, None), (A, CD, False, None), (P, CD, False, None),
           (P, CG, False, None), (S, CG, False, "Journal of Robotic Systems")],
          [(1, AF, 0), (1, W, 2), (3, C, 2), (4, PB, 3)]),
    36: q([(O, M, True, None), (A, M, False, None), (P, M, False, None),
           (T, M, False, "similarity"), (T, M, False, "bayesian")],
          [(1, AF, 0), (1, W, 2), (2, H, 3), (2, H, 4)]),
    37: q([(P, M, True, None), (T, M, False, "bayesian"), (T, M, False, "electron"),
           (A, M, False, None), (O, M, False, "University170")],
          [(0, H, 1), (0, H, 2), (3, W, 0), (3, AF, 4)]),
    38: q([(S, M, True, None), (P, M, False, None), (T, M, False, "eigenvalue"),
           (A, M, False, None), (O, M, False, "University40")],
          [(0, PB, 1), (1, H, 2), (3, W, 1), (3, AF, 4)]),
    39: q([(A, M, True, None), (O, M, False, "University899"), (P, M, False, None),
           (T, M, False, "classifier"), (S, M, False, "Applied Intelligence")],
          [(0, AF, 1), (0, W, 2), (2, H, 3), (4, PB, 2)]),
    40: q([(T, M, True, None), (P, M, False, None),
           (S, M, False, "Cybernetics and Systems Analysis"), (A, M, False, None),
           (O, M, False, "University362")],
          [(1, H, 0), (2, PB, 1), (3, W, 1), (3, AF, 4)]),
}


def node_signature(node):
    return (node.etype.value, node.part.value, node.answer, node.constraint)


def query_signature(graph_query):
    nodes = Counter(node_signature(n) for n in graph_query.nodes)
    relations = {
        (node_signature(r.source), r.label, node_signature(r.target))
        for r in graph_query.relations
    }
    return nodes, relations


def gold_signature(entry):
    nodes = Counter(entry["nodes"])
    relations = {
        (entry["nodes"][src], label, entry["nodes"][tgt])
        for src, label, tgt in entry["relations"]
    }
    return nodes, relations


def test_gold_interpretation(engine):
    assert len(GOLD) == 40
    started = time.perf_counter()
    misses = []
    for number, query in enumerate(BENCHMARK_QUERIES, start=1):
        compiled = engine.compile(query)
        if query_signature(compiled.graph_query) != gold_signature(GOLD[number]):
            misses.append(number)
    elapsed = time.perf_counter() - started
    print(f"gold interpretation: {40 - len(misses)}/40 queries match"
          f" (misses: {misses or 'none'}) in {elapsed:.2f}s")
    assert elapsed < 5.0
    assert len(misses) <= 1
    assert not misses, f"queries {misses} diverge from the expected interpretation"


def test_worked_examples():
    dictionary = build_dictionary(EXAMPLE_RECORDS)

    query = "papers about information retrieval and data mining"
    assert [t.text for t in tokenize(query, [])] == [
        "papers", "about", "information", "retrieval", "and", "data", "mining",
    ]
    tokens = tokenize(query, recognize(query, dictionary))
    assert [t.text for t in tokens] == [
        "papers", "about", "information retrieval", "and", "data mining",
    ]

    def triples(result):
        return [(result.subject_text(r), result.token_at(r.object).text, r.code)
                for r in result.relations]

    assert triples(parse(tokens)) == [
        ("", "papers", "root"),
        ("information retrieval", "about", "case"),
        ("papers", "information retrieval", "nmod"),
        ("information retrieval", "and", "cc"),
        ("papers", "data mining", "nmod"),
        ("information retrieval", "data mining", "conj"),
    ]

    passive = "papers that were written by John"
    assert triples(parse(tokenize(passive, recognize(passive, dictionary)))) == [
        ("", "papers", "root"),
        ("written", "papers", "nsubjpass"),
        ("papers", "that", "ref"),
        ("written", "were", "auxpass"),
        ("papers", "written", "acl:relcl"),
        ("John", "by", "case"),
        ("written", "John", "nmod"),
    ]

    naming = compile_query(
        "papers that were cited by papers that were written by John", dictionary,
    ).graph_query
    assert [(n.named_entity, n.instance, n.answer, n.constraint is not None)
            for n in naming.nodes] == [
        ("papers", "cited_Class_Paper_1", True, False),
        ("papers", "citing_Class_Paper_2", False, False),
        ("John", "citing_Author_3", False, True),
    ]

    expansion = compile_query("papers by happy university", dictionary).graph_query
    assert [n.etype.value for n in expansion.nodes] == [P, A, O]
    assert expansion.nodes[1].is_class and expansion.nodes[1].mention is None
    assert [(r.source.etype.value, r.label, r.target.etype.value)
            for r in expansion.relations] == [(A, W, P), (A, AF, O)]

    integration = compile_query("authors cited by John", dictionary).graph_query
    assert [n.instance for n in integration.nodes] == [
        "cited_Author_1", "cited_Class_Paper_2", "citing_Class_Paper_3", "citing_Author_4",
    ]
    assert [(r.source.instance, r.label, r.target.instance)
            for r in integration.relations] == [
        ("cited_Author_1", W, "cited_Class_Paper_2"),
        ("citing_Class_Paper_3", C, "cited_Class_Paper_2"),
        ("citing_Author_4", W, "citing_Class_Paper_3"),
    ]

    translation = compile_query("authors that were cited by John", dictionary).graph_query
    assert len(translation.nodes) == 4
    assert len(translation.relations) == 3
    assert translation.answer_node.instance == "cited_Author_1"
    constraint, = translation.constraint_nodes
    assert constraint.instance == "citing_Author_4"
    assert constraint.constraint == "John"
    print("worked examples: tokenization, dependency tables, node table,"
          " expansion, integration, and translation all reproduced")


def test_entity_recognition_contract():
    dictionary = build_dictionary([("Information Systems", EntityType.SOURCE)])
    mentions = recognize("papers in Information System", dictionary)
    hit = next(m for m in mentions if not m.entry.is_class)
    assert hit.surface == "Information System"
    assert hit.distance == 1
    assert hit.entry.canonical == "Information Systems"

    rng = random.Random(13)
    letters = "abcdefghijklmnopqrstuvwxyz"
    for trial in range(100):
        words = [
            "".join(rng.choice(letters) for _ in range(rng.randint(3, 9)))
            for _ in range(rng.randint(1, 3))
        ]
        name = " ".join(words)
        planted = build_dictionary([(name, EntityType.TERM)])
        found = recognize(f"papers about {name}", planted)
        exact = [m for m in found if m.entry.canonical == name]
        assert exact, f"planted key {name!r} not found"
        assert exact[0].distance == 0
        assert all(m.distance <= 1 for m in found)
    print("entity recognition: single-edit match confirmed,"
          " 100/100 planted keys found at distance 0, all matches within one edit")


def test_executor_against_oracle(engine, seeded_graph):
    started = time.perf_counter()
    for number, query in enumerate(BENCHMARK_QUERIES, start=1):
        graph_query = engine.compile(query).graph_query
        fast = execute(graph_query, seeded_graph)
        slow = oracle(graph_query, seeded_graph)
        assert fast.answer_ids == slow.answer_ids, f"divergence on query {number}"

    rng = random.Random(99)
    graph = make_random_graph(rng)
    for trial in range(100):
        graph_query = make_random_query(rng, graph)
        fast = execute(graph_query, graph)
        slow = oracle(graph_query, graph)
        assert fast.answer_ids == slow.answer_ids, f"divergence on random query {trial}"
    elapsed = time.perf_counter() - started
    print(f"executor vs oracle: 40 benchmark queries and 100 random queries agree"
          f" in {elapsed:.1f}s")
    assert elapsed < 60.0


def test_end_to_end_answers(engine):
    empty = []
    for number, query in enumerate(BENCHMARK_QUERIES, start=1):
        if engine.search(query).match_count == 0:
            empty.append(number)
    assert not empty, f"queries {empty} returned no rows"
    demo = engine.search(DEMO_QUERY)
    assert demo.match_count == 3
    assert [row.name for row in demo.rows] == [
        "Margin Classifiers Revisited",
        "Boosting for Noisy Labels",
        "Feature Selection Benchmarks",
    ]
    print("end to end: all 40 queries answered, demo query returns exactly 3 rows")


def test_benchmark_timing(engine):
    report = run_benchmark(engine.dictionary, engine.graph, runs=3)
    assert report.failures == []
    assert set(report.group_means) == {2, 3, 4, 5}
    slow = [t.query for t in report.timings if t.total_ms >= 250.0]
    means = ", ".join(
        f"{count} entities: {mean:.1f} ms" for count, mean in sorted(report.group_means.items())
    )
    print(f"timing: group means ({means}); worst"
          f" {max(t.total_ms for t in report.timings):.1f} ms")
    assert not slow, f"queries over 250 ms: {slow}"


def test_round_trip_emission(engine, seeded_graph):
    for number, query in enumerate(BENCHMARK_QUERIES, start=1):
        graph_query = engine.compile(query).graph_query
        emitted = emit(graph_query)
        replayed = read_cypher(emitted.text, engine.schema)
        direct = execute(graph_query, seeded_graph)
        again = execute(replayed, seeded_graph)
        assert direct.answer_ids == again.answer_ids, f"round trip changed query {number}"
    print("round trip: emitted text re-reads and executes identically for all 40 queries")
