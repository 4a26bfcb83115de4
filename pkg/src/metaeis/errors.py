"""Exception types shared across the package."""


class InputError(ValueError):
    """A precondition on user input is violated."""


class FalsificationError(RuntimeError):
    """An internal invariant that should hold by theory failed."""
