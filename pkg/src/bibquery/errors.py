"""Error types raised by the query pipeline and the data loader."""
from __future__ import annotations


class PipelineError(Exception):
    """Base class for failures while turning a query string into a graph query.

    Attributes:
        stage: short identifier of the pipeline stage that failed.
        token: surface text of the offending token, when one exists.
        artifacts: stage outputs produced before the failure, keyed by stage
            name, so callers can still render partial analyses.
    """

    def __init__(self, message: str, *, stage: str = "", token: str | None = None):
        super().__init__(message)
        self.stage = stage
        self.token = token
        self.artifacts: dict = {}


class UnsupportedQuery(PipelineError):
    """The query is understood but outside the supported language."""


class UnparsableQuery(PipelineError):
    """The token sequence does not fit the query grammar."""


class InterpretationFailure(PipelineError):
    """Parsing succeeded but no answer entity could be derived."""


class IngestError(Exception):
    """Dataset files were malformed; carries one entry per bad record."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        shown = "\n".join(problems[:20])
        extra = "" if len(problems) <= 20 else f"\n... and {len(problems) - 20} more"
        super().__init__(f"{len(problems)} dataset problem(s):\n{shown}{extra}")
