"""
Exception hierarchy shared by every layer.

The CLI maps these onto exit codes: ResourceError -> 3, UsageError -> 2,
everything else -> 1.
"""

from typing import Any, Optional


class QuantumTruthError(Exception):
    """Root of all library errors."""


class DomainError(QuantumTruthError, ValueError):
    """An operation received arguments outside its domain."""


class PoleError(DomainError):
    """A rational function was specialized at a zero of its denominator."""


class ConventionError(QuantumTruthError):
    """A candidate convention failed the identity meant to validate it."""


class InconsistencyError(QuantumTruthError):
    """An exact linear system that should be solvable has no solution."""


class CompletionError(QuantumTruthError):
    """Completion left an overlap unresolved beyond the degree cap."""

    def __init__(self, message: str, overlap: Optional[Any] = None):
        super().__init__(message)
        self.overlap = overlap


class ResourceError(QuantumTruthError):
    """A configured resource cap was exceeded."""


class FuelError(ResourceError):
    """Rewriting ran out of fuel or met a word longer than the degree cap."""


class UsageError(QuantumTruthError):
    """Bad command-line input."""
