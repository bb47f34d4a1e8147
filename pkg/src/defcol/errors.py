"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DefcolError(Exception):
    """Base class for all library errors."""


class ParseError(DefcolError, ValueError):
    """Malformed input document; carries the offending line number."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DataError(DefcolError, ValueError):
    """Syntactically valid input whose content is inconsistent."""


class ContractError(DefcolError, ValueError):
    """A caller violated a precondition (bad coloring length, unknown vertex...)."""


class BudgetExceeded(DefcolError, RuntimeError):
    """The search exhausted its node budget before reaching an answer."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search budget of {budget} nodes exceeded")


class CertificateError(DefcolError, AssertionError):
    """An engine produced a coloring that failed verification (internal bug)."""


class ExtractionError(DefcolError):
    """A backward witness mapping could not recover a solution."""


class ClassMismatch(DefcolError):
    """The input graph is not in the class an engine requires.

    ``witness`` holds vertex ids certifying the failure.
    """

    graph_class = "graph"

    def __init__(self, message: str, witness=()):
        self.witness = tuple(witness)
        super().__init__(message)


class NotCograph(ClassMismatch):
    graph_class = "cograph"


class NotTriviallyPerfect(ClassMismatch):
    graph_class = "trivially-perfect"


class NotChordal(ClassMismatch):
    graph_class = "chordal"
