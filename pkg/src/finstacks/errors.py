"""Shared exception types and the global cardinality budget."""

DEFAULT_BUDGET = 10 ** 6


class FinstacksError(Exception):
    pass


class InputError(FinstacksError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


class BudgetError(FinstacksError):
    """A level would exceed the configured cardinality budget (CLI exit code 3)."""

    def __init__(self, what, size, budget):
        super().__init__(f"{what}: {size} simplices exceeds budget {budget}")
        self.size = size
        self.budget = budget


class InvariantViolation(FinstacksError):
    """A theorem-backed invariant failed; indicates a library bug, never averaged away."""


def check_budget(what, size, budget=DEFAULT_BUDGET):
    if budget is not None and size > budget:
        raise BudgetError(what, size, budget)
    return size
