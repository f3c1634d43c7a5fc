"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed edge-list or item-set input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(ValueError):
    """An algorithm or transform was called outside its contract."""


class BudgetExceeded(RuntimeError):
    outcome = "budget-exceeded"


class TimeBudgetExceeded(BudgetExceeded):
    outcome = "timeout"


class MemoryBudgetExceeded(BudgetExceeded):
    outcome = "memory-exceeded"
