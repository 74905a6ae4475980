"""Exceptions raised by knotbook."""
from __future__ import annotations

from collections.abc import Sequence
from typing import Any


class KnotbookError(Exception):
    """Base class for knotbook errors."""


class KnotbookParseError(KnotbookError, ValueError):
    """Malformed text input."""

    def __init__(self, message: str, position: int | None = None) -> None:
        """Initialize with an optional token index or line number."""
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


class KnotbookDomainError(KnotbookError, ValueError):
    """Well-formed input that violates a precondition."""


class InvalidDiagramError(KnotbookDomainError):
    """A Rampichini diagram failed validation."""

    def __init__(self, message: str, violations: Sequence[Any] = ()) -> None:
        """Initialize with the violations found."""
        if violations:
            message = f"{message}: " + "; ".join(str(v) for v in violations)
        super().__init__(message)
        self.violations = tuple(violations)


class MultiComponentError(KnotbookDomainError):
    """A knot was required but a link was given."""

    def __init__(self, message: str, components: int, betti: int | None = None) -> None:
        """Initialize with the component count and first Betti number."""
        super().__init__(message)
        self.components = components
        self.betti = betti


class SearchLimitError(KnotbookDomainError):
    """A search exceeded its configured size bound."""


class InconsistentResultError(KnotbookDomainError):
    """A computed result contradicts a known identity."""
