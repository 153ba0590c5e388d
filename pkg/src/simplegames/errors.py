"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or iteration budget was exhausted before completion."""


class UndefinedRatioError(ValueError):
    """The losing/winning payoff ratio is undefined (a winning coalition has payoff 0)."""
