"""
Project-wide exceptions.

Every app raises one of these; the management commands translate them into
exit codes.
"""
from typing import Sequence


class CyclotraceError(Exception):
    """
    Base class for all domain errors.
    """


class ContractViolation(CyclotraceError, ValueError):
    """
    A precondition of an operation does not hold (dimension mismatch,
    index out of range, refused input).
    """


class AxiomViolation(ContractViolation):
    """
    A multiplication or addition table fails an axiom.
    """

    def __init__(self, axiom: str, indices: Sequence[int], detail: str = "") -> None:
        self.axiom = axiom
        self.indices = tuple(indices)
        message = f"{axiom} fails at indices {self.indices}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class TruncationError(CyclotraceError):
    """
    Requested degree lies beyond the materialised truncation.
    """

    def __init__(self, requested: int, truncation: int) -> None:
        self.requested = requested
        self.truncation = truncation
        super().__init__(
            f"degree {requested} is beyond the truncation degree {truncation}"
        )


class CapacityError(CyclotraceError):
    """
    A size guard refused a computation.
    """

    def __init__(self, guard: str, requested: int, limit: int) -> None:
        self.guard = guard
        self.requested = requested
        self.limit = limit
        super().__init__(f"{guard}: requested {requested} exceeds limit {limit}")
