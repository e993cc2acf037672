"""Exception hierarchy shared by every module."""


class StabError(ValueError):
    """Base class for input and precondition errors."""


class EmptySetError(StabError):
    def __init__(self, what: str = "set") -> None:
        super().__init__(f"empty set: {what} must be nonempty")


class CapacityError(StabError):
    """An element exceeded the configured IntSet capacity."""


class PreconditionError(StabError):
    """An operation was called outside its stated domain."""


class LiteralSyntaxError(StabError):
    """A set literal or rational string could not be parsed."""


class InconsistencyError(RuntimeError):
    """A checked mathematical claim failed on a concrete input.

    These are findings, not usage errors: the offending parameters are kept in
    ``details`` so a sweep can collect them instead of stopping.
    """

    def __init__(self, message: str, **details: object) -> None:
        super().__init__(message)
        self.details = details
