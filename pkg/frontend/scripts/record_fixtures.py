"""Record live service payloads as UI test fixtures.

Run from the repository root with the Python package installed; rewrites
every JSON file under frontend/tests/fixtures.
"""
import json
from pathlib import Path

from fastapi.testclient import TestClient

from bibquery import QueryEngine, build_graph
from bibquery.app import create_app
from bibquery.benchmark import DEMO_QUERY

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

CASES = [
    ("demo_analyze.json", "/analyze", {"query": DEMO_QUERY}),
    ("demo_search.json", "/search", {"query": DEMO_QUERY}),
    ("terms_analyze.json", "/analyze",
     {"query": "papers about information retrieval and data mining"}),
    ("parse_error.json", "/analyze", {"query": "papers startled by papers"}),
]


def main() -> None:
    client = TestClient(create_app(QueryEngine(build_graph())))
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, path, body in CASES:
        response = client.post(path, json=body)
        if response.status_code not in (200, 422):
            raise SystemExit(f"{name}: unexpected status {response.status_code}")
        (FIXTURES / name).write_text(json.dumps(response.json(), indent=2) + "\n")
        print(f"{name}: {response.status_code}")


if __name__ == "__main__":
    main()
