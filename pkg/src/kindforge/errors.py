"""Diagnostics raised across the inference pipeline."""
from __future__ import annotations

from .syntax import NO_SPAN, Span


class KindforgeError(Exception):
    """Base class for all user-facing diagnostics."""

    def __init__(self, message: str, span: Span = NO_SPAN) -> None:
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span == NO_SPAN:
            return self.message
        return f"{self.span}: {self.message}"


# -- parsing -----------------------------------------------------------------


class ParseError(KindforgeError):
    def __init__(self, span: Span, expected: str, found: str) -> None:
        super().__init__(f"expected {expected}, found {found}", span)
        self.expected = expected
        self.found = found


class DuplicateName(KindforgeError):
    pass


class UnknownTypeName(KindforgeError):
    pass


class CyclicAbbreviation(KindforgeError):
    pass


# -- constraint generation ---------------------------------------------------


class UnboundTypeVariable(KindforgeError):
    pass


class UnboundVariable(KindforgeError):
    pass


class NotAFunction(KindforgeError):
    pass


class NotAForall(KindforgeError):
    pass


class NotARecord(KindforgeError):
    pass


class NotAVariant(KindforgeError):
    pass


class NotAChoice(KindforgeError):
    pass


class MissingLabel(KindforgeError):
    pass


class NotAValue(KindforgeError):
    pass


class NotASessionType(KindforgeError):
    pass


class TypeMismatch(KindforgeError):
    def __init__(self, expected: str, found: str, span: Span) -> None:
        super().__init__(f"type mismatch: expected {expected}, found {found}", span)
        self.expected = expected
        self.found = found


# -- solving -----------------------------------------------------------------


class UnresolvedVariable(KindforgeError):
    """A kind or multiplicity variable was projected without a solution."""


class SolveError(KindforgeError):
    """A constraint is violated; carries the resolved sides and provenance."""

    def __init__(self, constraint, lhs_resolved, rhs_resolved, origin) -> None:
        from .syntax import pretty_constraint, pretty_kind

        msg = (
            f"unsatisfiable constraint {pretty_constraint(constraint)}"
            f" (resolved {pretty_kind(lhs_resolved)} <: {pretty_kind(rhs_resolved)})"
            f" from {origin}"
        )
        super().__init__(msg, origin.span)
        self.constraint = constraint
        self.lhs_resolved = lhs_resolved
        self.rhs_resolved = rhs_resolved
        self.origin = origin


class IterationBoundExceeded(KindforgeError):
    """Internal guard: the fixpoint loop ran longer than the lattice allows."""


class TooLarge(KindforgeError):
    """Brute-force enumeration refused: too many variables."""


class InternalError(KindforgeError):
    """Invariant breach inside the pipeline; exit code 3 territory."""
