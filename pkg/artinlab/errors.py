"""
Exception types shared across artinlab.
"""


class ArtinLabError(Exception):
    """Base exception for artinlab errors."""
    pass


class InvalidArgumentError(ArtinLabError, ValueError):
    """An argument is outside the documented domain of an operation."""
    pass


class DomainError(ArtinLabError, ArithmeticError):
    """The arithmetic object is undefined for the inputs (e.g. p | g)."""
    pass


class ExhaustionError(ArtinLabError):
    """A search exhausted its bound while strict exhaustion was requested."""

    def __init__(self, count: int, search_bound: int):
        self.count = count
        self.search_bound = search_bound
        super().__init__(
            f"{count} search(es) exhausted the bound {search_bound} without a result"
        )
