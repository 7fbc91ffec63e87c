"""Command-line interface: dataset generation and ingest checks, one-off
query analysis and search, the HTTP server, the benchmark, and a prompt
loop.  Every option can come from a BIBQUERY_-prefixed environment
variable."""
from __future__ import annotations

import sys
from pathlib import Path

import click

from .engine import QueryEngine
from .errors import IngestError, PipelineError
from .models import (
    AnalyzeResponse,
    SearchResponse,
    analysis_from_error,
    bench_report_model,
)
from .synthetic import DEFAULT_SEED, DEFAULT_SIZES, generate_synthetic


def _fail(message: str) -> None:
    click.echo(message, err=True)
    sys.exit(1)


def _engine(data_dir: str, schema_path: str | None) -> QueryEngine:
    try:
        return QueryEngine.from_data_dir(data_dir, schema_path)
    except IngestError as err:
        _fail(f"cannot load dataset from {data_dir}: {err}")
    except (OSError, ValueError) as err:
        _fail(f"cannot load dataset from {data_dir}: {err}")
    raise AssertionError("unreachable")


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(header), *(len(row[i]) for row in rows)) if rows else len(header)
        for i, header in enumerate(headers)
    ]
    def line(cells: list[str]) -> str:
        return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()
    divider = "  ".join("-" * width for width in widths)
    return "\n".join([line(headers), divider, *(line(row) for row in rows)])


def _print_analysis(analysis: AnalyzeResponse) -> None:
    click.echo(f"query: {analysis.query}")
    entities = ", ".join(
        f"{m.surface} [{m.etype}{'' if m.distance == 0 else f', ~{m.distance}'}]"
        for m in analysis.mentions
    )
    click.echo(f"entities: {entities or '(none)'}")
    click.echo("tokens: " + " ".join(f"({t.text})" for t in analysis.tokens))
    if analysis.pivot:
        click.echo(f"citation pivot: {analysis.pivot}")
    for table in analysis.tables:
        click.echo(f"\ndependency relations ({table.part}):")
        click.echo(_table(
            ["Order", "Subject", "Object", "Relation Code", "Relation Name"],
            [[str(r.order), r.subject, r.object, r.code, r.name] for r in table.rows],
        ))
    if analysis.nodes:
        click.echo("\ngraph nodes:")
        click.echo(_table(
            ["Named Entity", "Instance", "Answer Node", "Constraint Node"],
            [
                [n.named_entity, n.instance, "Yes" if n.answer else "No",
                 "No" if n.constraint is None else f"Yes ({n.constraint})"]
                for n in analysis.nodes
            ],
        ))
    if analysis.relations:
        click.echo("\ngraph relations:")
        for rel in analysis.relations:
            click.echo(f"  ({rel.source}) -[:{rel.label}]-> ({rel.target})")
    if analysis.emitted:
        click.echo(f"\nemitted query:\n  {analysis.emitted}")
    if analysis.error:
        token = f" (token {analysis.error.token!r})" if analysis.error.token else ""
        click.echo(f"\nerror at stage {analysis.error.stage}{token}: {analysis.error.message}")


def _print_results(response: SearchResponse) -> None:
    click.echo(
        f"\n{response.match_count} match(es) in {response.total_ms:.1f} ms"
        f" (answer {response.analysis.answer_instance}):"
    )
    if response.rows:
        click.echo(_table(
            ["Id", "Name", "Type", "Year"],
            [
                [str(r.id), r.name, r.etype, "" if r.year is None else str(r.year)]
                for r in response.rows
            ],
        ))


@click.group()
def cli() -> None:
    """Natural-language queries over a bibliographic property graph."""


@cli.command()
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Output directory.")
@click.option("--seed", default=DEFAULT_SEED, show_default=True, type=int)
@click.option("--papers", default=DEFAULT_SIZES["papers"], show_default=True, type=int)
@click.option("--authors", default=DEFAULT_SIZES["authors"], show_default=True, type=int)
@click.option("--terms", default=DEFAULT_SIZES["terms"], show_default=True, type=int)
@click.option("--sources", default=DEFAULT_SIZES["sources"], show_default=True, type=int)
@click.option("--organizations", default=DEFAULT_SIZES["organizations"], show_default=True, type=int)
def generate(out_dir: str, seed: int, papers: int, authors: int, terms: int,
             sources: int, organizations: int) -> None:
    """Write a deterministic synthetic dataset."""
    path = generate_synthetic(
        out_dir, seed=seed, papers=papers, authors=authors, terms=terms,
        sources=sources, organizations=organizations,
    )
    click.echo(f"dataset written to {path}")


@cli.command()
@click.option("--data", "data_dir", required=True, type=click.Path(),
              envvar="BIBQUERY_DATA", help="Dataset directory.")
@click.option("--schema", "schema_path", default=None, type=click.Path(exists=True),
              envvar="BIBQUERY_SCHEMA")
def ingest(data_dir: str, schema_path: str | None) -> None:
    """Validate a dataset directory and print its summary."""
    engine = _engine(data_dir, schema_path)
    click.echo(f"entities: {engine.graph.entity_count}")
    click.echo(f"edges: {engine.graph.edge_count}")
    click.echo(f"fingerprint: {engine.graph.fingerprint()}")


@cli.command()
@click.argument("query")
@click.option("--data", "data_dir", required=True, type=click.Path(), envvar="BIBQUERY_DATA")
@click.option("--schema", "schema_path", default=None, type=click.Path(exists=True),
              envvar="BIBQUERY_SCHEMA")
def analyze(query: str, data_dir: str, schema_path: str | None) -> None:
    """Analyze a query without executing it."""
    engine = _engine(data_dir, schema_path)
    try:
        _print_analysis(engine.analyze(query))
    except PipelineError as err:
        _print_analysis(analysis_from_error(query, err))
        sys.exit(1)


@cli.command()
@click.argument("query")
@click.option("--data", "data_dir", required=True, type=click.Path(), envvar="BIBQUERY_DATA")
@click.option("--schema", "schema_path", default=None, type=click.Path(exists=True),
              envvar="BIBQUERY_SCHEMA")
@click.option("--limit", default=None, type=int, envvar="BIBQUERY_LIMIT")
def search(query: str, data_dir: str, schema_path: str | None, limit: int | None) -> None:
    """Analyze a query and fetch its answers."""
    engine = _engine(data_dir, schema_path)
    try:
        response = engine.search(query, limit=limit)
    except PipelineError as err:
        _print_analysis(analysis_from_error(query, err))
        sys.exit(1)
    _print_analysis(response.analysis)
    _print_results(response)


@cli.command()
@click.option("--data", "data_dir", required=True, type=click.Path(), envvar="BIBQUERY_DATA")
@click.option("--schema", "schema_path", default=None, type=click.Path(exists=True),
              envvar="BIBQUERY_SCHEMA")
@click.option("--host", default="127.0.0.1", show_default=True, envvar="BIBQUERY_HOST")
@click.option("--port", default=8000, show_default=True, type=int, envvar="BIBQUERY_PORT")
@click.option("--ui", "ui_dir", default=None, type=click.Path(), help="Built web UI to serve at /.")
def serve(data_dir: str, schema_path: str | None, host: str, port: int,
          ui_dir: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .app import create_app

    engine = _engine(data_dir, schema_path)
    app = create_app(engine, static_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


@cli.command()
@click.option("--data", "data_dir", required=True, type=click.Path(), envvar="BIBQUERY_DATA")
@click.option("--schema", "schema_path", default=None, type=click.Path(exists=True),
              envvar="BIBQUERY_SCHEMA")
@click.option("--runs", default=1, show_default=True, type=int, envvar="BIBQUERY_RUNS")
def bench(data_dir: str, schema_path: str | None, runs: int) -> None:
    """Time the benchmark queries against the dataset."""
    engine = _engine(data_dir, schema_path)
    report = bench_report_model(engine.bench(runs=runs))
    click.echo(_table(
        ["Entities", "Interpret ms", "Execute ms", "Total ms", "Rows", "Query"],
        [
            [
                str(row.entity_count),
                f"{row.interpret_ms:.1f}",
                f"{row.execute_ms:.1f}",
                f"{row.total_ms:.1f}",
                str(row.row_count) if row.error is None else f"error: {row.error}",
                row.query if len(row.query) <= 60 else row.query[:57] + "...",
            ]
            for row in report.rows
        ],
    ))
    click.echo(f"\nruns per query: {report.runs}")
    click.echo("group means (by named-entity count, failures excluded):")
    for count, mean_ms in report.group_means.items():
        click.echo(f"  {count} entities: {mean_ms:.1f} ms")


@cli.command()
@click.option("--data", "data_dir", required=True, type=click.Path(), envvar="BIBQUERY_DATA")
@click.option("--schema", "schema_path", default=None, type=click.Path(exists=True),
              envvar="BIBQUERY_SCHEMA")
def repl(data_dir: str, schema_path: str | None) -> None:
    """Read queries line by line and print analysis plus results."""
    engine = _engine(data_dir, schema_path)
    click.echo("enter a query (empty line or Ctrl-D to exit)")
    while True:
        try:
            line = click.prompt("query", prompt_suffix="> ", default="", show_default=False)
        except (EOFError, click.Abort):
            break
        line = line.strip()
        if not line:
            break
        try:
            response = engine.search(line)
        except PipelineError as err:
            _print_analysis(analysis_from_error(line, err))
            continue
        _print_analysis(response.analysis)
        _print_results(response)


def main() -> None:
    cli(auto_envvar_prefix="BIBQUERY")


if __name__ == "__main__":
    main()
