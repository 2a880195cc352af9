class InputError(ValueError):
    """Malformed or invalid user input (files, words, presentations)."""


class BudgetExhausted(Exception):
    """The wall-clock search budget ran out."""


class Unavailable(Exception):
    """A requested invariant is not defined for this input (reason in args)."""
