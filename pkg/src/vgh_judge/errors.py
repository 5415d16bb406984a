from __future__ import annotations


class VghJudgeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(VghJudgeError):
    """Input could not be parsed or failed structural validation (CLI exit 2)."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.detail = message


class OntologyError(ValidationError):
    pass


class VghFormatError(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class UnknownConceptError(VghJudgeError, KeyError):
    def __str__(self) -> str:
        return f"unknown concept id: {self.args[0]!r}"


class UnknownMetricError(ConfigError):
    pass


class PosMismatchError(VghJudgeError):
    """Two concepts of different parts of speech were compared."""


class ResolutionError(VghJudgeError):
    """A VGH node could not be mapped to an ontology concept."""

    def __init__(self, term: str, reason: str, message: str):
        self.term = term
        self.reason = reason
        super().__init__(message)


class EvaluationError(VghJudgeError):
    """Scoring failed (CLI exit 3)."""


class UnbalancedVghError(VghJudgeError, ValueError):
    """A query that needs a height-balanced VGH received an unbalanced one."""
