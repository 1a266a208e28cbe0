"""Exception types raised by the pipeline."""

from __future__ import annotations


class QuotientError(Exception):
    """Base class for all pipeline errors."""


class IngestError(QuotientError):
    """A corpus document could not be read or is not a usable OpenAPI 3 spec."""


class DuplicateEndpointError(IngestError):
    """The same (path, method) pair appeared twice within one corpus."""


class PatternError(QuotientError):
    """A pattern file failed validation."""


class ScopeError(QuotientError):
    """A scope or ordering referenced a corpus label that is not loaded."""


class TsvError(QuotientError):
    """An activation TSV file does not conform to the schema."""
