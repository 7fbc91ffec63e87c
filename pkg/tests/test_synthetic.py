import filecmp

from bibquery.graphstore import load_dataset
from bibquery.lexicon import EntityType
from bibquery.synthetic import (
    DEFAULT_SIZES,
    QUERY_AUTHORS,
    QUERY_SOURCES,
    QUERY_TERMS,
    SEED_PAPERS,
    build_graph,
    generate_synthetic,
)


class TestDeterminism:
    def test_same_seed_same_fingerprint(self):
        assert build_graph(seed=42).fingerprint() == build_graph(seed=42).fingerprint()

    def test_different_seed_different_fingerprint(self):
        assert build_graph(seed=42).fingerprint() != build_graph(seed=43).fingerprint()

    def test_generated_files_are_byte_identical(self, tmp_path):
        first = generate_synthetic(tmp_path / "a", seed=42)
        second = generate_synthetic(tmp_path / "b", seed=42)
        names = sorted(p.name for p in first.iterdir())
        assert names == sorted(p.name for p in second.iterdir())
        match, mismatch, errors = filecmp.cmpfiles(first, second, names, shallow=False)
        assert mismatch == [] and errors == []

    def test_generated_dataset_loads_back(self, tmp_path):
        out = generate_synthetic(tmp_path / "ds", seed=42)
        assert load_dataset(out).fingerprint() == build_graph(seed=42).fingerprint()


class TestPopulation:
    def test_default_sizes_are_totals(self, seeded_graph):
        by_type = {
            "papers": EntityType.PAPER,
            "authors": EntityType.AUTHOR,
            "terms": EntityType.TERM,
            "sources": EntityType.SOURCE,
            "organizations": EntityType.ORGANIZATION,
        }
        for key, etype in by_type.items():
            assert len(seeded_graph.by_type(etype)) == DEFAULT_SIZES[key]

    def test_zero_extras_keeps_only_the_scripted_core(self):
        graph = build_graph(papers=0, authors=0, terms=0, sources=0, organizations=0)
        assert len(graph.by_type(EntityType.PAPER)) == len(SEED_PAPERS)
        assert len(graph.by_type(EntityType.SOURCE)) == len(QUERY_SOURCES)
        # Every scripted entity keeps its name.
        names = {graph.entities[i].name for i in graph.by_type(EntityType.AUTHOR)}
        assert set(QUERY_AUTHORS) <= names

    def test_query_entities_present(self, seeded_graph):
        for etype, expected in [
            (EntityType.AUTHOR, QUERY_AUTHORS),
            (EntityType.SOURCE, QUERY_SOURCES),
            (EntityType.TERM, QUERY_TERMS),
        ]:
            names = {seeded_graph.entities[i].name for i in seeded_graph.by_type(etype)}
            missing = set(expected) - names
            assert not missing

    def test_titles_present(self, seeded_graph):
        names = {seeded_graph.entities[i].name for i in seeded_graph.by_type(EntityType.PAPER)}
        for title, *_ in SEED_PAPERS:
            assert title in names

    def test_papers_carry_year_and_source(self, seeded_graph):
        papers = [seeded_graph.entities[i] for i in seeded_graph.by_type(EntityType.PAPER)]
        assert all(p.year is not None for p in papers)
        assert all(p.source_id in seeded_graph.entities for p in papers if p.source_id)
