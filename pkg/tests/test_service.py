import pytest
from fastapi.testclient import TestClient

from bibquery.app import create_app
from bibquery.benchmark import DEMO_QUERY


@pytest.fixture(scope="module")
def client(engine):
    return TestClient(create_app(engine))


class TestHealthAndSchema:
    def test_health_reports_graph_shape(self, client, engine):
        body = client.get("/health").json()
        assert body["status"] == "ok"
        assert body["entities"] == engine.graph.entity_count
        assert body["edges"] == engine.graph.edge_count
        assert body["fingerprint"] == engine.graph.fingerprint()

    def test_schema_lists_edges(self, client):
        body = client.get("/schema").json()
        labels = {edge["label"] for edge in body["edges"]}
        assert labels == {"WRITES", "CITES", "PUBLISHES", "HAS_TERM", "AFFILIATED_WITH"}
        assert set(body["node_types"]) == {"Paper", "Author", "Term", "Source", "Organization"}


class TestAnalyze:
    def test_demo_query_analysis(self, client):
        response = client.post("/analyze", json={"query": DEMO_QUERY})
        assert response.status_code == 200
        body = response.json()
        assert [m["surface"] for m in body["mentions"]] == [
            "Papers", "classification", "Asoke K. Nandi", "papers", "Pattern Recognition",
        ]
        assert body["pivot"] == "cited"
        assert [t["part"] for t in body["tables"]] == ["cited", "citing"]
        assert sum(1 for n in body["nodes"] if n["answer"]) == 1
        assert body["answer_instance"] == "cited_Class_Paper_1"
        assert any(r["label"] == "CITES" for r in body["relations"])
        assert body["emitted"].startswith("MATCH ")
        assert body["error"] is None

    def test_analysis_is_idempotent(self, client):
        first = client.post("/analyze", json={"query": DEMO_QUERY}).json()
        second = client.post("/analyze", json={"query": DEMO_QUERY}).json()
        first["timings_ms"] = second["timings_ms"] = None
        assert first == second

    def test_empty_query_is_a_422_with_stage(self, client):
        response = client.post("/analyze", json={"query": "   "})
        assert response.status_code == 422
        body = response.json()
        assert body["error"]["stage"] == "validate"
        assert body["nodes"] == []

    def test_failed_parse_keeps_partial_stages(self, client):
        response = client.post("/analyze", json={"query": "papers startled by papers"})
        assert response.status_code == 422
        body = response.json()
        assert body["error"]["stage"] == "parse"
        assert body["error"]["token"] == "startled"
        assert [m["surface"] for m in body["mentions"]] == ["papers", "papers"]
        assert [t["text"] for t in body["tokens"]] == ["papers", "startled", "by", "papers"]
        assert body["emitted"] is None

    def test_missing_field_is_a_request_error(self, client):
        assert client.post("/analyze", json={}).status_code == 422


class TestSearch:
    def test_demo_query_rows(self, client):
        response = client.post("/search", json={"query": DEMO_QUERY})
        assert response.status_code == 200
        body = response.json()
        assert [row["name"] for row in body["rows"]] == [
            "Margin Classifiers Revisited",
            "Boosting for Noisy Labels",
            "Feature Selection Benchmarks",
        ]
        assert body["match_count"] == 3
        assert body["analysis"]["answer_instance"] == "cited_Class_Paper_1"
        assert all(row["etype"] == "Paper" for row in body["rows"])

    def test_limit_truncates_but_match_count_does_not(self, client):
        body = client.post("/search", json={"query": DEMO_QUERY, "limit": 1}).json()
        assert len(body["rows"]) == 1
        assert body["match_count"] == 3

    def test_search_error_shape_matches_analyze(self, client):
        response = client.post("/search", json={"query": "papers startled by papers"})
        assert response.status_code == 422
        assert response.json()["error"]["stage"] == "parse"

    def test_rejects_non_positive_limit(self, client):
        assert client.post("/search", json={"query": "papers", "limit": 0}).status_code == 422
