"""Exception types shared across the toolkit."""

from __future__ import annotations


class InputError(ValueError):
    """A caller violated an operation's input contract."""


class ParseError(InputError):
    """Matrix text that does not match the file grammar.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NoNullVectorError(InputError):
    """A null vector was requested for linearly independent columns."""


class DependentSubsetError(RuntimeError):
    """An audit that requires every subset to be independent met a dependent one."""

    def __init__(self, subset):
        self.subset = tuple(subset)
        super().__init__(f"columns {list(self.subset)} are linearly dependent")


class BudgetExceededError(RuntimeError):
    """A subset scan would enumerate more candidates than the configured budget."""


class ReductionError(RuntimeError):
    """A reduction instance violated one of its internal consistency checks."""
