"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or out-of-contract input.

    ``field`` and ``index`` locate the offending entry when known.
    """

    def __init__(self, message: str, field: str | None = None, index: int | None = None):
        self.field = field
        self.index = index
        where = ""
        if field is not None:
            where = f"{field}[{index}]: " if index is not None else f"{field}: "
        super().__init__(where + message)


class NotCorrelatedError(InputError):
    """Raised where a correlated family is required but a violating pair exists."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"family is not correlated; witness {witness.describe()}")


class InconsistencyError(RuntimeError):
    """Two independently computed sides of an identity or equivalence disagree.

    This signals a bug (or float round-off), never bad input.
    """
