"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An operation would exceed a configured enumeration or size budget."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same invariant disagree.

    Raised instead of silently emitting wrong data; always indicates a bug
    or a corrupted cache, never a property of the input curve.
    """


class ExperimentFailed(RuntimeError):
    """An experiment ran to completion but its pass criterion was not met."""
