"""Deterministic synthetic bibliographic dataset.

The seeded core wires every benchmark query to at least one answer; the
rest of the graph is random filler.  Filler authorship and citations
stay inside the filler population so the seeded answer counts cannot
drift; filler papers may reuse seeded terms, sources, and organizations,
which only ever adds rows to unconstrained results.
"""
from __future__ import annotations

import random
from pathlib import Path

from .graphstore import PropertyGraph, save_dataset
from .lexicon import EntityType

DEFAULT_SEED = 42
DEFAULT_SIZES = {
    "papers": 630,
    "authors": 596,
    "terms": 291,
    "sources": 13,
    "organizations": 10,
}

# Authors named in the benchmark queries.
QUERY_AUTHORS = (
    "Gerard Salton",
    "Michael Lawrence",
    "Sangjun Lee",
    "Johann Eder",
    "John R. Mick",
    "Braham Barkat",
    "Zesheng Chen",
    "Junghyun Nam",
    "Rainer Engelke",
    "Nina Yevtushenko",
    "Sergey Buffalov",
    "Rafae Bhatti",
    "Tomasz Jurdzinski",
    "Asoke K. Nandi",
    "Changqiu Jin",
)

# Invented authors that hold the non-named ends of query patterns
# (an "authors of ..." query still needs a concrete author to return).
SUPPORT_AUTHORS = (
    "Priya Raghavan",
    "Daniel Mortensen",
    "Marta Kowalczyk",
    "Leonard Castillo",
    "Henrik Dalgaard",
    "Beatrice Lanza",
    "Farid Osmani",
    "Eleanor Whitfield",
    "Gustavo Pereira",
    "Ingrid Johansson",
    "Viktor Baranov",
    "Amira Khalil",
    "Takeshi Morita",
    "Olaf Brandt",
)

QUERY_TERMS = (
    "ontology",
    "classification",
    "DNA",
    "modulation",
    "simulation",
    "survey",
    "semantic",
    "retrieval",
    "genome",
    "mining",
    "automata",
    "clustering",
    "kernel",
    "regression",
    "middleware",
    "embedded",
    "similarity",
    "bayesian",
    "electron",
    "eigenvalue",
    "classifier",
    "information retrieval",
    "data mining",
)

QUERY_SOURCES = (
    "Theoretical Computer Science",
    "ACM SIGMICRO Newsletter",
    "Neural Networks",
    "AI Communications",
    "Decision Support Systems",
    "Microsystem Technologies",
    "Communications of the ACM",
    "Journal of Multivariate Analysis",
    "Pattern Recognition",
    "Journal of Computational Physics",
    "Journal of Robotic Systems",
    "Applied Intelligence",
    "Cybernetics and Systems Analysis",
)

SEED_ORGANIZATIONS = (
    "University007",
    "University40",
    "University123",
    "University170",
    "University362",
    "University713",
    "University899",
    "Statistical Methods Institute",
    "Robotics Research Center",
    "Applied Inference Laboratory",
)

# (title, authors, publishing source, terms); one row per seeded paper.
SEED_PAPERS: tuple[tuple[str, tuple[str, ...], str | None, tuple[str, ...]], ...] = (
    ("Automatic text structuring experiments", ("Gerard Salton",), None, ()),
    ("Energy-Aware and Time-Critical Geo-Routing in Wireless Sensor Networks", (), None, ()),
    ("Opacity generalised to transition systems", (), None, ("simulation",)),
    ("The Effect of Faults on Network Expansions", (), "Theoretical Computer Science", ()),
    (
        "A control word model for detecting conflicts between microoperations",
        ("John R. Mick",),
        "ACM SIGMICRO Newsletter",
        (),
    ),
    ("A New Quadtree Decomposition Reconstruction Methods", ("Leonard Castillo",), None, ()),
    ("Adaptive Retrieval Experiments", ("Michael Lawrence",), None, ()),
    ("Stream Index Maintenance", ("Sangjun Lee",), None, ()),
    ("Ontology Alignment Survey", (), None, ("ontology",)),
    ("Gene Classification with DNA Markers", (), None, ("classification", "DNA")),
    ("Adaptive Modulation Networks", (), "Neural Networks", ("modulation",)),
    ("Worm Propagation Modeling", ("Zesheng Chen",), "Theoretical Computer Science", ()),
    ("Answer Set Reasoning", ("Priya Raghavan",), "AI Communications", ()),
    ("Discrete Event Simulation Methods", ("Daniel Mortensen",), None, ("simulation",)),
    ("Password Key Exchange Protocols", ("Junghyun Nam",), None, ("middleware",)),
    ("Survey of Semantic Retrieval", (), None, ("survey", "semantic", "retrieval")),
    ("Citation Network Dynamics", ("Marta Kowalczyk",), None, ()),
    ("Decision Model Integration", (), "Decision Support Systems", ()),
    (
        "Microsystem Fabrication Advances",
        ("Rainer Engelke",),
        "Microsystem Technologies",
        (),
    ),
    ("Sensor Array Processing", (), None, ()),
    ("Finite State Machine Testing", ("Nina Yevtushenko",), None, ()),
    ("Compositional Testing Theory", ("Sergey Buffalov",), None, ()),
    ("Genome Mining Pipelines", (), "Decision Support Systems", ("genome", "mining")),
    (
        "Access Control Frameworks",
        ("Rafae Bhatti",),
        "Communications of the ACM",
        ("middleware",),
    ),
    (
        "Automata on Infinite Words",
        ("Tomasz Jurdzinski",),
        "Theoretical Computer Science",
        ("automata",),
    ),
    ("Distributed Storage Coding", ("Henrik Dalgaard",), None, ("mining",)),
    (
        "Multivariate Dependence Measures",
        ("Beatrice Lanza",),
        "Journal of Multivariate Analysis",
        (),
    ),
    ("Density Clustering at Scale", ("Farid Osmani",), None, ("clustering",)),
    ("Margin Classifiers Revisited", (), None, ("classification",)),
    ("Boosting for Noisy Labels", (), None, ("classification",)),
    ("Feature Selection Benchmarks", (), None, ("classification",)),
    # Asoke K. Nandi writes exactly this one paper and it cites exactly
    # the three classification papers above, pinning that query's answer
    # count at three no matter what the filler does.
    ("Blind Source Separation Advances", ("Asoke K. Nandi",), "Pattern Recognition", ()),
    ("Turbulent Flux Computation", ("Changqiu Jin",), "Journal of Computational Physics", ()),
    ("Spectral Grid Methods", ("Eleanor Whitfield",), None, ()),
    ("Kernel Regression Estimators", (), None, ("kernel", "regression")),
    ("Nonparametric Error Bounds", (), None, ("eigenvalue",)),
    ("Middleware for Embedded Control", (), None, ("middleware", "embedded")),
    ("Realtime Scheduling Survey", (), "Applied Intelligence", ()),
    ("Robot Arm Calibration", (), "Journal of Robotic Systems", ()),
    ("Manipulator Dynamics Models", ("Gustavo Pereira",), None, ()),
    ("Bayesian Similarity Matching", ("Ingrid Johansson",), None, ("similarity", "bayesian")),
    ("Electron Density Estimation", ("Viktor Baranov",), None, ("bayesian", "electron")),
    (
        "Eigenvalue Solvers Compared",
        ("Amira Khalil",),
        "Journal of Computational Physics",
        ("eigenvalue",),
    ),
    (
        "Classifier Ensembles in Practice",
        ("Takeshi Morita",),
        "Applied Intelligence",
        ("classifier",),
    ),
    (
        "Fault Diagnosis Automation",
        ("Olaf Brandt",),
        "Cybernetics and Systems Analysis",
        ("clustering",),
    ),
    (
        "Knowledge Discovery in Text Corpora",
        ("Gerard Salton",),
        "Decision Support Systems",
        ("information retrieval", "data mining"),
    ),
    ("Time-Frequency Signal Estimation", ("Braham Barkat",), None, ()),
    ("Instantaneous Frequency Tracking", (), None, ()),
)

# (citing title, cited title)
SEED_CITATIONS = (
    ("Energy-Aware and Time-Critical Geo-Routing in Wireless Sensor Networks", "Stream Index Maintenance"),
    ("Instantaneous Frequency Tracking", "Time-Frequency Signal Estimation"),
    ("Decision Model Integration", "Citation Network Dynamics"),
    ("Sensor Array Processing", "Microsystem Fabrication Advances"),
    ("Compositional Testing Theory", "Finite State Machine Testing"),
    ("Blind Source Separation Advances", "Margin Classifiers Revisited"),
    ("Blind Source Separation Advances", "Boosting for Noisy Labels"),
    ("Blind Source Separation Advances", "Feature Selection Benchmarks"),
    ("Turbulent Flux Computation", "Spectral Grid Methods"),
    ("Kernel Regression Estimators", "Nonparametric Error Bounds"),
    ("Realtime Scheduling Survey", "Middleware for Embedded Control"),
    ("Robot Arm Calibration", "Manipulator Dynamics Models"),
)

SEED_AFFILIATIONS = (
    ("Johann Eder", "University713"),
    ("John R. Mick", "University713"),
    ("Leonard Castillo", "Statistical Methods Institute"),
    ("Henrik Dalgaard", "University123"),
    ("Beatrice Lanza", "Statistical Methods Institute"),
    ("Farid Osmani", "University007"),
    ("Gustavo Pereira", "Robotics Research Center"),
    ("Ingrid Johansson", "Applied Inference Laboratory"),
    ("Viktor Baranov", "University170"),
    ("Amira Khalil", "University40"),
    ("Takeshi Morita", "University899"),
    ("Olaf Brandt", "University362"),
)

_FIRST_NAMES = (
    "Nora", "Felix", "Ismail", "Greta", "Pavel", "Lucia", "Anders", "Mei",
    "Ravi", "Sofia", "Emil", "Tariq", "Hana", "Bruno", "Ilse", "Dmitri",
    "Carmen", "Yusuf", "Petra", "Marco", "Aisha", "Lars", "Noemi", "Kenji",
    "Vera", "Stefan", "Leila", "Oscar", "Ranya", "Tomas", "Agnes", "Milos",
    "Freja", "Arun", "Dana", "Gunnar", "Selma", "Victor", "Iris", "Matteo",
)
_LAST_NAMES = (
    "Ellison", "Varga", "Okafor", "Lindqvist", "Moreau", "Takagi", "Petran",
    "Koval", "Serrano", "Bakker", "Novik", "Farrell", "Iyer", "Sandoval",
    "Krogh", "Mbeki", "Olsen", "Duarte", "Hoffer", "Castellan", "Ramos",
    "Veld", "Antonsen", "Murase", "Gallo", "Peeters", "Sorokin", "Albrecht",
    "Navarro", "Kimura", "Fowler", "Brandes", "Oduya", "Marchetti", "Sten",
    "Harlan", "Vogel", "Quint", "Aalto", "Meier",
)

_TITLE_HEADS = (
    "Adaptive", "Parallel", "Sparse", "Robust", "Incremental", "Hybrid",
    "Scalable", "Distributed", "Approximate", "Hierarchical", "Stochastic",
    "Symbolic", "Probabilistic", "Compositional", "Streaming", "Modular",
    "Temporal", "Spatial", "Secure", "Declarative",
)
_TITLE_TOPICS = (
    "Caching", "Indexing", "Routing", "Hashing", "Scheduling", "Encoding",
    "Inference", "Sampling", "Verification", "Synthesis", "Partitioning",
    "Compression", "Alignment", "Ranking", "Segmentation", "Planning",
    "Estimation", "Allocation", "Annotation", "Matching",
)
_TITLE_FORMS = (
    "Algorithms", "Benchmarks", "Architectures", "at Scale", "in Practice",
    "Revisited", "for Sensor Grids", "with Weak Supervision", "under Noise",
    "over Streams", "Trade-offs", "Heuristics",
)

_TERM_HEADS = (
    "adaptive", "neural", "sparse", "robust", "parallel", "secure", "hybrid",
    "temporal", "spatial", "fuzzy", "modular", "scalable", "dynamic",
    "stochastic", "symbolic", "quantum", "visual", "wireless", "relational",
    "probabilistic",
)
_TERM_TOPICS = (
    "caching", "indexing", "routing", "hashing", "scheduling", "encoding",
    "inference", "sampling", "verification", "synthesis", "partitioning",
    "compression", "alignment", "ranking", "segmentation", "planning",
    "estimation", "allocation", "annotation", "matching",
)


def _fill(pool: list[str], taken: set[str], count: int, rng: random.Random) -> list[str]:
    rng.shuffle(pool)
    picked: list[str] = []
    for name in pool:
        if len(picked) == count:
            break
        if name not in taken:
            taken.add(name)
            picked.append(name)
    if len(picked) < count:
        raise ValueError(f"name pool exhausted ({len(picked)} < {count})")
    return picked


def build_graph(
    seed: int = DEFAULT_SEED,
    *,
    papers: int = DEFAULT_SIZES["papers"],
    authors: int = DEFAULT_SIZES["authors"],
    terms: int = DEFAULT_SIZES["terms"],
    sources: int = DEFAULT_SIZES["sources"],
    organizations: int = DEFAULT_SIZES["organizations"],
) -> PropertyGraph:
    """Build the synthetic graph in memory.

    Sizes are per-type totals; the seeded core is always present, so the
    filler count per type is max(0, requested - seeded).
    """
    rng = random.Random(seed)
    graph = PropertyGraph()
    ids: dict[tuple[EntityType, str], int] = {}

    def add(etype: EntityType, name: str, year: int | None = None) -> int:
        entity = graph.add_entity(etype, name, year=year)
        ids[(etype, name)] = entity.ident
        return entity.ident

    for title, _, _, _ in SEED_PAPERS:
        add(EntityType.PAPER, title, year=rng.randint(1972, 2015))
    taken = {title for title, _, _, _ in SEED_PAPERS}
    filler_titles = [
        f"{head} {topic} {form}"
        for head in _TITLE_HEADS for topic in _TITLE_TOPICS for form in _TITLE_FORMS
    ]
    filler_papers = [
        add(EntityType.PAPER, title, year=rng.randint(1972, 2015))
        for title in _fill(filler_titles, taken, max(0, papers - len(SEED_PAPERS)), rng)
    ]

    for name in QUERY_AUTHORS + SUPPORT_AUTHORS:
        add(EntityType.AUTHOR, name)
    taken = set(QUERY_AUTHORS + SUPPORT_AUTHORS)
    seeded_authors = len(taken)
    filler_names = [f"{first} {last}" for first in _FIRST_NAMES for last in _LAST_NAMES]
    filler_authors = [
        add(EntityType.AUTHOR, name)
        for name in _fill(filler_names, taken, max(0, authors - seeded_authors), rng)
    ]

    for name in QUERY_TERMS:
        add(EntityType.TERM, name)
    taken = set(QUERY_TERMS)
    filler_terms = [f"{head} {topic}" for head in _TERM_HEADS for topic in _TERM_TOPICS]
    all_terms = [ids[(EntityType.TERM, name)] for name in QUERY_TERMS] + [
        add(EntityType.TERM, name)
        for name in _fill(filler_terms, taken, max(0, terms - len(QUERY_TERMS)), rng)
    ]

    for name in QUERY_SOURCES:
        add(EntityType.SOURCE, name)
    all_sources = [ids[(EntityType.SOURCE, name)] for name in QUERY_SOURCES] + [
        add(EntityType.SOURCE, f"Annals of Synthetic Research {i + 1}")
        for i in range(max(0, sources - len(QUERY_SOURCES)))
    ]

    for name in SEED_ORGANIZATIONS:
        add(EntityType.ORGANIZATION, name)
    all_organizations = [ids[(EntityType.ORGANIZATION, name)] for name in SEED_ORGANIZATIONS] + [
        add(EntityType.ORGANIZATION, f"Synthetic Research Institute {i + 1}")
        for i in range(max(0, organizations - len(SEED_ORGANIZATIONS)))
    ]

    # Seeded wiring, exactly as scripted.
    for title, paper_authors, source, paper_terms in SEED_PAPERS:
        paper = ids[(EntityType.PAPER, title)]
        for author in paper_authors:
            graph.add_edge("WRITES", ids[(EntityType.AUTHOR, author)], paper)
        if source is not None:
            graph.add_edge("PUBLISHES", ids[(EntityType.SOURCE, source)], paper)
        for term in paper_terms:
            graph.add_edge("HAS_TERM", paper, ids[(EntityType.TERM, term)])
    for citing, cited in SEED_CITATIONS:
        graph.add_edge("CITES", ids[(EntityType.PAPER, citing)], ids[(EntityType.PAPER, cited)])
    for author, organization in SEED_AFFILIATIONS:
        graph.add_edge(
            "AFFILIATED_WITH",
            ids[(EntityType.AUTHOR, author)],
            ids[(EntityType.ORGANIZATION, organization)],
        )

    # Random filler wiring.  WRITES and CITES stay within the filler
    # population; terms, sources, and organizations may be shared.
    for paper in filler_papers:
        if filler_authors:
            for author in rng.sample(filler_authors, k=rng.randint(1, min(3, len(filler_authors)))):
                graph.add_edge("WRITES", author, paper)
        graph.add_edge("PUBLISHES", rng.choice(all_sources), paper)
        for term in rng.sample(all_terms, k=rng.randint(1, 3)):
            graph.add_edge("HAS_TERM", paper, term)
        for cited in rng.sample(filler_papers, k=min(rng.randint(0, 3), len(filler_papers))):
            if cited != paper:
                graph.add_edge("CITES", paper, cited)
    for author in filler_authors:
        if rng.random() < 0.7:
            graph.add_edge("AFFILIATED_WITH", author, rng.choice(all_organizations))
    return graph


def generate_synthetic(
    directory: str | Path,
    seed: int = DEFAULT_SEED,
    **sizes: int,
) -> Path:
    """Build the graph and write it as a dataset directory."""
    directory = Path(directory)
    graph = build_graph(seed, **{**DEFAULT_SIZES, **sizes})
    save_dataset(graph, directory)
    return directory


__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_SIZES",
    "QUERY_AUTHORS",
    "QUERY_SOURCES",
    "QUERY_TERMS",
    "SEED_AFFILIATIONS",
    "SEED_CITATIONS",
    "SEED_ORGANIZATIONS",
    "SEED_PAPERS",
    "SUPPORT_AUTHORS",
    "build_graph",
    "generate_synthetic",
]
