"""Exceptions raised across the package."""


class PrecisionError(ValueError):
    """An operation needs more digits than the context tracks."""


class BudgetExceededError(RuntimeError):
    """An exhaustive check would exceed the configured evaluation cap."""

    def __init__(self, needed, budget):
        super().__init__(f"exhaustive check needs {needed} evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


class NotACoveringError(ValueError):
    """The proposed sets do not cover the universe; ``witness`` is left uncovered."""

    def __init__(self, witness, message=None):
        super().__init__(message or f"not a covering: {witness} is uncovered")
        self.witness = witness


DEFAULT_BUDGET = 10**7


def check_budget(needed, budget=DEFAULT_BUDGET):
    if budget is not None and needed > budget:
        raise BudgetExceededError(needed, budget)
