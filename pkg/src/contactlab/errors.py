"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations

from typing import Any


class WorkbenchError(ValueError):
    """Base class for all rejections raised by contactlab."""


class DuplicateAtomError(WorkbenchError):
    def __init__(self, name: str):
        super().__init__(f"duplicate atom identifier {name!r}")
        self.name = name


class AlgebraMismatchError(WorkbenchError):
    """Raised when an operation receives elements of two different algebras."""


class AxiomViolation(WorkbenchError):
    """A structure failed an axiom that the operation requires.

    ``witness`` holds a JSON-friendly counterexample.
    """

    def __init__(self, axiom: str, witness: dict[str, Any] | None = None, message: str = ""):
        text = message or f"axiom {axiom} fails"
        if witness:
            text += f" (witness: {witness})"
        super().__init__(text)
        self.axiom = axiom
        self.witness = witness or {}


class CapExceededError(WorkbenchError):
    def __init__(self, what: str, requested: int, cap: int):
        super().__init__(f"{what}: requested size {requested} exceeds cap {cap}")
        self.what = what
        self.requested = requested
        self.cap = cap


class InputError(WorkbenchError):
    """Malformed user input; ``locus`` points at the offending field or line."""

    def __init__(self, message: str, locus: str = ""):
        super().__init__(f"{locus}: {message}" if locus else message)
        self.locus = locus
