"""Exception hierarchy for the algebra engine.

Verification results are never raised; they come back as CheckReport
objects (see checks.py). Exceptions here mean the computation itself
could not proceed.
"""

from __future__ import annotations

from typing import Any


class SweedlerError(Exception):
    """Base class for every engine error."""


class FieldError(SweedlerError):
    """Bad modulus, mixed fields, or division by zero."""


class SingularMatrixError(SweedlerError):
    def __init__(self, stage: int, size: int) -> None:
        self.stage = stage
        self.size = size
        super().__init__(f"singular matrix: no pivot at elimination stage {stage} (size {size})")


class StructureError(SweedlerError):
    """A structure-constant table fails an axiom it was required to satisfy."""

    def __init__(self, message: str, where: tuple[Any, ...] = ()) -> None:
        self.where = where
        super().__init__(message if not where else f"{message} at {where}")


class BoundExceededError(SweedlerError):
    def __init__(self, degree: int, bound: int) -> None:
        self.degree = degree
        self.bound = bound
        super().__init__(
            f"bound exceeded: degree {degree} > certified bound {bound}; rebuild with a larger bound"
        )


class CompletionError(SweedlerError):
    """Completion stopped before reaching the bound (rule cap hit)."""

    def __init__(self, message: str, partial: Any = None, ambiguity: Any = None) -> None:
        self.partial = partial
        self.ambiguity = ambiguity
        super().__init__(message)


class InputError(SweedlerError):
    """Syntax or schema problem in user input, with a position when known."""

    def __init__(
        self,
        message: str,
        offset: int | None = None,
        text: str | None = None,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        self.message = message
        self.offset = offset
        self.text = text
        self.line = line
        self.column = column
        super().__init__(self.describe())

    def describe(self) -> str:
        if self.line is not None:
            return f"line {self.line}, column {self.column}: {self.message}"
        if self.offset is not None:
            return f"offset {self.offset}: {self.message}"
        return self.message
