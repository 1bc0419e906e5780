"""Typed errors raised across the package."""


class SparseMultError(Exception):
    """Base class for every error the package raises on bad input or failed search."""


class DegenerateConfig(SparseMultError):
    pass


class DuplicatePoint(SparseMultError):
    pass


class VanishesOnAxis(SparseMultError):
    """The vanishing sum is identically zero along some coordinate axis."""

    def __init__(self, axis: int):
        super().__init__(f"vanishing sum is zero along axis {axis + 1}")
        self.axis = axis


class NotConvenient(SparseMultError):
    pass


class DimensionMismatch(SparseMultError):
    pass


class OriginNotRoot(SparseMultError):
    pass


class TruncationTooShort(SparseMultError):
    """The Hilbert-Samuel ladder did not stabilize inside the known truncation."""


class OnesNotInKernel(SparseMultError):
    pass


class NotRepaired(SparseMultError):
    pass


class DuplicateValue(SparseMultError):
    pass


class CodimNotOne(SparseMultError):
    pass


class NotFound(SparseMultError):
    pass


class ParseError(SparseMultError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class ValidationError(SparseMultError):
    """Input parsed but violates a named invariant."""

    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
        self.invariant = invariant
